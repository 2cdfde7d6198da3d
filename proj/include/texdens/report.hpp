#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "texdens/pipeline.hpp"

namespace texdens {

nlohmann::json config_to_json(const RunConfig& config);
nlohmann::json report_to_json(const RunReport& report, const RunConfig& config);

/// Pretty-printed JSON with a trailing newline. Output depends only on the
/// report contents, so identical runs give identical bytes.
void write_report_json(std::ostream& out, const RunReport& report, const RunConfig& config);

void write_rows_csv(std::ostream& out, const RunReport& report);
void write_scatter_csv(std::ostream& out, const RunReport& report);
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

/// The plottable parts of a saved report.
struct ReportSummary {
    Histogram histogram;
    std::vector<ScatterRow> scatter;
    std::vector<GroupFit> fits;
    double beta_threshold = kDefaultBetaThreshold;
};

/// Throws Error(Parse) for a document that is not a run report.
ReportSummary summary_from_json(const nlohmann::json& doc);

} // namespace texdens
