#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Least-squares slope of log(value) against log(n).  Points with
/// non-positive value or n are rejected; at least two points required.
double loglog_slope(std::span<const std::pair<std::int64_t, double>> series);

/// Absolute site indices of the global maxima (ties within a relative
/// tolerance of 1e-9 are all reported, in ascending site order).
std::vector<std::int64_t> peak_sites(const Distribution& d);

/// Total variation distance: half the L1 distance, taken over the union of
/// both supports.
double total_variation(const Distribution& a, const Distribution& b);

} // namespace qwalk
