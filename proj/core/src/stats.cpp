#include "qwalk/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

double loglog_slope(std::span<const std::pair<std::int64_t, double>> series) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (const auto& [n, v] : series) {
        if (n <= 0 || v <= 0.0) {
            continue;
        }
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) {
        throw InvalidArgumentError("log-log fit needs at least two usable points");
    }
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom == 0.0) {
        throw InvalidArgumentError("log-log fit is degenerate (identical n)");
    }
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

std::vector<std::int64_t> peak_sites(const Distribution& d) {
    const double peak = *std::max_element(d.probabilities.begin(), d.probabilities.end());
    std::vector<std::int64_t> sites;
    const double cutoff = peak * (1.0 - 1e-9);
    for (std::size_t i = 0; i < d.probabilities.size(); ++i) {
        if (d.probabilities[i] >= cutoff && peak > 0.0) {
            sites.push_back(d.site_at(i));
        }
    }
    return sites;
}

double total_variation(const Distribution& a, const Distribution& b) {
    const std::int64_t lo = std::min(a.origin - a.half_width(), b.origin - b.half_width());
    const std::int64_t hi = std::max(a.origin + a.half_width(), b.origin + b.half_width());
    double l1 = 0.0;
    for (std::int64_t x = lo; x <= hi; ++x) {
        l1 += std::abs(a.at(x) - b.at(x));
    }
    return 0.5 * l1;
}

} // namespace qwalk
