#pragma once

namespace qwalk {

// CODATA 2018.
inline constexpr double kHBar = 1.054571817e-34;          // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27; // kg

} // namespace qwalk
