#include "qwalk/cat_state.hpp"

#include <cmath>
#include <limits>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void require_normalized_pair(Complex a, Complex b) {
    const double n2 = std::norm(a) + std::norm(b);
    if (std::abs(n2 - 1.0) > 1e-12) {
        throw InvalidArgumentError("|a|^2 + |b|^2 must be 1 within 1e-12");
    }
}

} // namespace

std::vector<Complex> cat_expansion(Complex a, Complex b, std::int64_t n_atoms) {
    require_normalized_pair(a, b);
    if (n_atoms < 0) {
        throw InvalidArgumentError("atom count must be >= 0");
    }
    const double n = static_cast<double>(n_atoms);
    const double log_ga = std::log(std::abs(a));  // -inf for a = 0
    const double log_gb = std::log(std::abs(b));
    const double arg_a = std::arg(a);
    const double arg_b = std::arg(b);
    const double lgamma_n1 = std::lgamma(n + 1.0);

    std::vector<Complex> coeff(static_cast<std::size_t>(n_atoms) + 1);
    for (std::int64_t k = 0; k <= n_atoms; ++k) {
        const double kk = static_cast<double>(k);
        const double half_log_binom =
            0.5 * (lgamma_n1 - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0));
        // log |coeff|; -inf terms (a or b exactly 0) underflow to 0 below.
        double log_mag = half_log_binom;
        log_mag += (k == n_atoms) ? 0.0 : (n - kk) * log_ga;
        log_mag += (k == 0) ? 0.0 : kk * log_gb;
        if (log_mag == -std::numeric_limits<double>::infinity()) {
            coeff[static_cast<std::size_t>(k)] = Complex(0.0, 0.0);
            continue;
        }
        const double mag = std::exp(log_mag);
        const double phase = (n - kk) * arg_a + kk * arg_b;
        coeff[static_cast<std::size_t>(k)] =
            Complex(mag * std::cos(phase), mag * std::sin(phase));
    }
    return coeff;
}

CatState cat_state(Complex a, Complex b, std::int64_t n_atoms) {
    require_normalized_pair(a, b);
    if (n_atoms < 0) {
        throw InvalidArgumentError("atom count must be >= 0");
    }
    const double n = static_cast<double>(n_atoms);
    CatState cat;
    cat.n_atoms = n_atoms;
    cat.a = a;
    cat.b = b;
    cat.log_weight_0 = 2.0 * n * std::log(std::abs(a));
    cat.log_weight_1 = 2.0 * n * std::log(std::abs(b));

    // Renormalize in log space: the written form a^N |N,0> + b^N |0,N> has
    // norm below one for non-degenerate a, b.
    const double m = std::max(cat.log_weight_0, cat.log_weight_1);
    const double log_z =
        m + std::log(std::exp(cat.log_weight_0 - m) + std::exp(cat.log_weight_1 - m));
    const double mag0 = std::exp(0.5 * (cat.log_weight_0 - log_z));
    const double mag1 = std::exp(0.5 * (cat.log_weight_1 - log_z));
    const double phase0 = n * std::arg(a);
    const double phase1 = n * std::arg(b);
    cat.branch_0 = Complex(mag0 * std::cos(phase0), mag0 * std::sin(phase0));
    cat.branch_1 = Complex(mag1 * std::cos(phase1), mag1 * std::sin(phase1));
    return cat;
}

} // namespace qwalk
