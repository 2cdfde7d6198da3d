#pragma once

// Straightforward single-threaded versions of the parallel kernels. They are
// kept for the test suite and the benchmark; results must match the parallel
// kernels bit for bit.

#include "texdens/edge_map.hpp"
#include "texdens/excess_graph.hpp"

namespace texdens::reference {

MagnitudeRaster compute_gradient(const GrayImage& image, const Roi& roi);

ExcessResult graph_excess(const EdgeMap& edge_map, const PointSet& points, const ExcessOptions& options = {});

} // namespace texdens::reference
