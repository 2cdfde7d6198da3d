#pragma once

#include <stdexcept>
#include <string>

namespace texdens {

enum class ErrorKind {
    DegenerateRoi,
    Range,
    ConstantSample,
    InfeasibleMoments,
    Pole,
    InvalidSpec,
    Parse,
    Ingestion,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors that mean "the statistics have no answer" rather than bad input.
    bool is_statistical() const noexcept
    {
        return kind_ == ErrorKind::ConstantSample || kind_ == ErrorKind::InfeasibleMoments;
    }

private:
    ErrorKind kind_;
};

} // namespace texdens
