#include "qwalk/walk_state.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

#if defined(__x86_64__) && defined(__GNUC__) && !defined(__clang__)
#define QWALK_KERNEL_CLONES __attribute__((target_clones("avx2,fma", "default")))
#else
#define QWALK_KERNEL_CLONES
#endif

// The evanescent band outside the walk's caustics decays exponentially, so
// long evolutions push amplitudes into the denormal range where every FP op
// pays a microcode assist (a >10x slowdown measured at n ~ 1e4).  Outputs
// below this threshold are flushed to exact zero; the induced error is
// below any tolerance in play.
constexpr double kFlushThreshold = 1e-300;

inline double flush_tiny(double v) {
    return (v < kFlushThreshold && v > -kFlushThreshold) ? 0.0 : v;
}

// Interior of the fused coin + shift pass, gather form over the output
// window (edges are handled by the caller):
//   out0(x) = c00 a0(x+1) + c01 a1(x+1)
//   out1(x) = c10 a0(x-1) + c11 a1(x-1)
// Raw doubles keep the loop free of the libm complex-multiply call.
QWALK_KERNEL_CLONES
void step_interior_complex(const double* __restrict in, double* __restrict out,
                           std::size_t o_base, std::size_t span, double c00r,
                           double c00i, double c01r, double c01i, double c10r,
                           double c10i, double c11r, double c11i) {
    for (std::size_t k = 0; k < span; ++k) {
        const std::size_t o = o_base + 4 * k;
        const double p0r = in[o + 4], p0i = in[o + 5], p1r = in[o + 6], p1i = in[o + 7];
        const double m0r = in[o - 4], m0i = in[o - 3], m1r = in[o - 2], m1i = in[o - 1];
        out[o] = flush_tiny(c00r * p0r - c00i * p0i + c01r * p1r - c01i * p1i);
        out[o + 1] = flush_tiny(c00r * p0i + c00i * p0r + c01r * p1i + c01i * p1r);
        out[o + 2] = flush_tiny(c10r * m0r - c10i * m0i + c11r * m1r - c11i * m1i);
        out[o + 3] = flush_tiny(c10r * m0i + c10i * m0r + c11r * m1i + c11i * m1r);
    }
}

// Coins with real entries (Hadamard, identity) skip half the arithmetic.
QWALK_KERNEL_CLONES
void step_interior_real(const double* __restrict in, double* __restrict out,
                        std::size_t o_base, std::size_t span, double c00, double c01,
                        double c10, double c11) {
    for (std::size_t k = 0; k < span; ++k) {
        const std::size_t o = o_base + 4 * k;
        out[o] = flush_tiny(c00 * in[o + 4] + c01 * in[o + 6]);
        out[o + 1] = flush_tiny(c00 * in[o + 5] + c01 * in[o + 7]);
        out[o + 2] = flush_tiny(c10 * in[o - 4] + c11 * in[o - 2]);
        out[o + 3] = flush_tiny(c10 * in[o - 3] + c11 * in[o - 1]);
    }
}

} // namespace

double Distribution::at(std::int64_t site) const {
    const std::int64_t lo = origin - half_width();
    if (site < lo || site > origin + half_width()) {
        return 0.0;
    }
    return probabilities[static_cast<std::size_t>(site - lo)];
}

WalkState::WalkState(std::int64_t origin, std::int64_t half_width, double step_length_m)
    : origin_(origin),
      half_width_(half_width),
      step_length_(step_length_m),
      support_min_(origin),
      support_max_(origin),
      amp_(2 * static_cast<std::size_t>(2 * half_width + 1)),
      scratch_(amp_.size()) {
    if (half_width < 0) {
        throw InvalidArgumentError("half_width must be >= 0");
    }
    if (!(step_length_m > 0.0)) {
        throw InvalidArgumentError("step length must be positive");
    }
}

WalkState WalkState::point(std::int64_t origin, std::int64_t half_width,
                           Complex c0, Complex c1, double step_length_m) {
    WalkState s(origin, half_width, step_length_m);
    s.amp_[s.index(origin, 0)] = c0;
    s.amp_[s.index(origin, 1)] = c1;
    s.normalize();
    return s;
}

WalkState WalkState::gaussian(std::int64_t origin, std::int64_t half_width,
                              double sigma_sites, std::int64_t envelope_radius,
                              Complex c0, Complex c1, double step_length_m) {
    if (!(sigma_sites > 0.0)) {
        throw InvalidArgumentError("envelope sigma must be positive");
    }
    std::int64_t radius = envelope_radius > 0
        ? envelope_radius
        : static_cast<std::int64_t>(std::ceil(7.0 * sigma_sites));
    radius = std::min(radius, half_width);
    WalkState s(origin, half_width, step_length_m);
    for (std::int64_t x = origin - radius; x <= origin + radius; ++x) {
        const double dx = static_cast<double>(x - origin);
        // |psi|^2 Gaussian with std sigma_sites.
        const double env = std::exp(-dx * dx / (4.0 * sigma_sites * sigma_sites));
        s.amp_[s.index(x, 0)] = env * c0;
        s.amp_[s.index(x, 1)] = env * c1;
    }
    s.support_min_ = origin - radius;
    s.support_max_ = origin + radius;
    s.normalize();
    return s;
}

Complex WalkState::amplitude(std::int64_t site, int coin) const {
    if (site < lattice_min() || site > lattice_max()) {
        return Complex(0.0, 0.0);
    }
    return amp_[index(site, coin)];
}

void WalkState::set_amplitude(std::int64_t site, int coin, Complex value) {
    if (site < lattice_min() || site > lattice_max()) {
        throw InvalidArgumentError("amplitude site outside the allocated lattice");
    }
    amp_[index(site, coin)] = value;
    expand_support(site);
}

void WalkState::expand_support(std::int64_t site) {
    support_min_ = std::min(support_min_, site);
    support_max_ = std::max(support_max_, site);
}

double WalkState::norm_squared() const {
    double total = 0.0;
    for (std::size_t i = index(support_min_, 0); i <= index(support_max_, 1); ++i) {
        total += std::norm(amp_[i]);
    }
    return total;
}

void WalkState::normalize() {
    const double n2 = norm_squared();
    if (n2 <= 0.0) {
        throw InvalidArgumentError("zero-norm state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = index(support_min_, 0); i <= index(support_max_, 1); ++i) {
        amp_[i] *= inv;
    }
}

void WalkState::apply_coin(const CoinOperator& coin) {
    const Complex c00 = coin.entry(0, 0), c01 = coin.entry(0, 1);
    const Complex c10 = coin.entry(1, 0), c11 = coin.entry(1, 1);
    std::size_t i = index(support_min_, 0);
    for (std::int64_t x = support_min_; x <= support_max_; ++x, i += 2) {
        const Complex a0 = amp_[i];
        const Complex a1 = amp_[i + 1];
        amp_[i] = c00 * a0 + c01 * a1;
        amp_[i + 1] = c10 * a0 + c11 * a1;
    }
#ifndef NDEBUG
    assert(std::abs(norm_squared() - 1.0) < 1e-10);
#endif
}

void WalkState::check_shift_headroom() const {
    if (support_min_ == lattice_min() &&
        amp_[index(support_min_, 0)] != Complex(0.0, 0.0)) {
        throw LatticeOverflowError(
            support_min_ - 1,
            "coin-0 amplitude at site " + std::to_string(support_min_) +
                " would shift off-lattice to " + std::to_string(support_min_ - 1) +
                "; allocate half_width >= steps");
    }
    if (support_max_ == lattice_max() &&
        amp_[index(support_max_, 1)] != Complex(0.0, 0.0)) {
        throw LatticeOverflowError(
            support_max_ + 1,
            "coin-1 amplitude at site " + std::to_string(support_max_) +
                " would shift off-lattice to " + std::to_string(support_max_ + 1) +
                "; allocate half_width >= steps");
    }
}

void WalkState::conditional_shift() {
    check_shift_headroom();
    const std::int64_t new_min = std::max(support_min_ - 1, lattice_min());
    const std::int64_t new_max = std::min(support_max_ + 1, lattice_max());
    std::fill(scratch_.begin() + index(new_min, 0),
              scratch_.begin() + index(new_max, 1) + 1, Complex(0.0, 0.0));
    for (std::int64_t x = support_min_; x <= support_max_; ++x) {
        const Complex a0 = amp_[index(x, 0)];
        const Complex a1 = amp_[index(x, 1)];
        if (x - 1 >= new_min) scratch_[index(x - 1, 0)] = a0;
        if (x + 1 <= new_max) scratch_[index(x + 1, 1)] = a1;
    }
    amp_.swap(scratch_);
    support_min_ = new_min;
    support_max_ = new_max;
#ifndef NDEBUG
    assert(std::abs(norm_squared() - 1.0) < 1e-10);
#endif
}

void WalkState::shift_with_flip() {
    check_shift_headroom();
    const std::int64_t new_min = std::max(support_min_ - 1, lattice_min());
    const std::int64_t new_max = std::min(support_max_ + 1, lattice_max());
    std::fill(scratch_.begin() + index(new_min, 0),
              scratch_.begin() + index(new_max, 1) + 1, Complex(0.0, 0.0));
    for (std::int64_t x = support_min_; x <= support_max_; ++x) {
        const Complex a0 = amp_[index(x, 0)];
        const Complex a1 = amp_[index(x, 1)];
        if (x - 1 >= new_min) scratch_[index(x - 1, 1)] = a0;
        if (x + 1 <= new_max) scratch_[index(x + 1, 0)] = a1;
    }
    amp_.swap(scratch_);
    support_min_ = new_min;
    support_max_ = new_max;
#ifndef NDEBUG
    assert(std::abs(norm_squared() - 1.0) < 1e-10);
#endif
}

void WalkState::bit_flip() {
    std::size_t i = index(support_min_, 0);
    for (std::int64_t x = support_min_; x <= support_max_; ++x, i += 2) {
        std::swap(amp_[i], amp_[i + 1]);
    }
}

void WalkState::step(const CoinOperator& coin) {
    const Complex c00 = coin.entry(0, 0), c01 = coin.entry(0, 1);
    const Complex c10 = coin.entry(1, 0), c11 = coin.entry(1, 1);
    // Overflow is decided on the post-coin amplitudes, exactly as in the
    // decomposed apply_coin + conditional_shift route.
    if (support_min_ == lattice_min()) {
        const Complex b0 = c00 * amp_[index(support_min_, 0)] +
                           c01 * amp_[index(support_min_, 1)];
        if (b0 != Complex(0.0, 0.0)) {
            throw LatticeOverflowError(
                support_min_ - 1,
                "coin-0 amplitude at site " + std::to_string(support_min_) +
                    " would shift off-lattice to " + std::to_string(support_min_ - 1) +
                    "; allocate half_width >= steps");
        }
    }
    if (support_max_ == lattice_max()) {
        const Complex b1 = c10 * amp_[index(support_max_, 0)] +
                           c11 * amp_[index(support_max_, 1)];
        if (b1 != Complex(0.0, 0.0)) {
            throw LatticeOverflowError(
                support_max_ + 1,
                "coin-1 amplitude at site " + std::to_string(support_max_) +
                    " would shift off-lattice to " + std::to_string(support_max_ + 1) +
                    "; allocate half_width >= steps");
        }
    }
    const std::int64_t new_min = std::max(support_min_ - 1, lattice_min());
    const std::int64_t new_max = std::min(support_max_ + 1, lattice_max());

    // Fused coin + shift in gather form over the output window:
    //   out0(x) = c00 a0(x+1) + c01 a1(x+1)
    //   out1(x) = c10 a0(x-1) + c11 a1(x-1)
    // Written on raw doubles: keeps the inner loop free of the libm
    // complex-multiply call so it streams and vectorizes.
    const double c00r = c00.real(), c00i = c00.imag();
    const double c01r = c01.real(), c01i = c01.imag();
    const double c10r = c10.real(), c10i = c10.imag();
    const double c11r = c11.real(), c11i = c11.imag();
    const double* __restrict in = reinterpret_cast<const double*>(amp_.data());
    double* __restrict out = reinterpret_cast<double*>(scratch_.data());

    const auto write_site = [&](std::int64_t x) {
        const std::size_t o = 2 * index(x, 0);
        if (x + 1 <= support_max_ && x + 1 >= support_min_) {
            const std::size_t s = 2 * index(x + 1, 0);
            const double a0r = in[s], a0i = in[s + 1];
            const double a1r = in[s + 2], a1i = in[s + 3];
            out[o] = c00r * a0r - c00i * a0i + c01r * a1r - c01i * a1i;
            out[o + 1] = c00r * a0i + c00i * a0r + c01r * a1i + c01i * a1r;
        } else {
            out[o] = 0.0;
            out[o + 1] = 0.0;
        }
        if (x - 1 >= support_min_ && x - 1 <= support_max_) {
            const std::size_t s = 2 * index(x - 1, 0);
            const double a0r = in[s], a0i = in[s + 1];
            const double a1r = in[s + 2], a1i = in[s + 3];
            out[o + 2] = c10r * a0r - c10i * a0i + c11r * a1r - c11i * a1i;
            out[o + 3] = c10r * a0i + c10i * a0r + c11r * a1i + c11i * a1r;
        } else {
            out[o + 2] = 0.0;
            out[o + 3] = 0.0;
        }
    };

    write_site(new_min);
    if (new_max != new_min) {
        write_site(new_max);
    }
    const std::size_t o_base = 2 * index(new_min + 1, 0);
    const std::size_t span =
        (new_max > new_min + 1) ? static_cast<std::size_t>(new_max - new_min - 1) : 0;
    if (c00i == 0.0 && c01i == 0.0 && c10i == 0.0 && c11i == 0.0) {
        step_interior_real(in, out, o_base, span, c00r, c01r, c10r, c11r);
    } else {
        step_interior_complex(in, out, o_base, span, c00r, c00i, c01r, c01i, c10r,
                              c10i, c11r, c11i);
    }

    amp_.swap(scratch_);
    support_min_ = new_min;
    support_max_ = new_max;
#ifndef NDEBUG
    assert(std::abs(norm_squared() - 1.0) < 1e-10);
#endif
}

void WalkState::physical_step(const CoinOperator& coin) {
    apply_coin(coin);
    shift_with_flip();
    bit_flip();
}

void WalkState::evolve(std::int64_t n, const CoinOperator& coin) {
    if (n < 0) {
        throw InvalidArgumentError("step count must be >= 0");
    }
    for (std::int64_t k = 0; k < n; ++k) {
        step(coin);
    }
    const double drift = std::abs(norm_squared() - 1.0);
    if (drift > 1e-9) {
        throw NumericError("norm drift " + std::to_string(drift) +
                           " after " + std::to_string(n) + " steps");
    }
}

Distribution WalkState::distribution() const {
    Distribution d;
    d.origin = origin_;
    d.probabilities.assign(static_cast<std::size_t>(2 * half_width_ + 1), 0.0);
    for (std::int64_t x = support_min_; x <= support_max_; ++x) {
        const std::size_t i = index(x, 0);
        d.probabilities[static_cast<std::size_t>(x - lattice_min())] =
            std::norm(amp_[i]) + std::norm(amp_[i + 1]);
    }
    return d;
}

double WalkState::amplitude_distance(const WalkState& other) const {
    const std::int64_t lo = std::min(support_min_, other.support_min_);
    const std::int64_t hi = std::max(support_max_, other.support_max_);
    double worst = 0.0;
    for (std::int64_t x = lo; x <= hi; ++x) {
        for (int c = 0; c < 2; ++c) {
            worst = std::max(worst, std::abs(amplitude(x, c) - other.amplitude(x, c)));
        }
    }
    return worst;
}

Moments moments(const Distribution& d) {
    // Accumulate relative to the origin; the variance is shift-invariant.
    double mean_rel = 0.0;
    double second_rel = 0.0;
    const double hw = static_cast<double>(d.half_width());
    for (std::size_t i = 0; i < d.probabilities.size(); ++i) {
        const double x = static_cast<double>(i) - hw;
        mean_rel += x * d.probabilities[i];
        second_rel += x * x * d.probabilities[i];
    }
    return Moments{static_cast<double>(d.origin) + mean_rel,
                   second_rel - mean_rel * mean_rel};
}

namespace {

// Exact binomial coefficients: C(64, 32) = 1.8e18 still fits in uint64.
std::vector<double> binomial_row_exact(std::int64_t n) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1;
    for (std::int64_t k = 0; k < n; ++k) {
        // C(n, k+1) = C(n, k) * (n - k) / (k + 1), exact at every step.
        const unsigned __int128 num =
            static_cast<unsigned __int128>(c[static_cast<std::size_t>(k)]) *
            static_cast<std::uint64_t>(n - k);
        c[static_cast<std::size_t>(k) + 1] =
            static_cast<std::uint64_t>(num / static_cast<std::uint64_t>(k + 1));
    }
    std::vector<double> p(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        // Division by 2^n is exact in binary floating point.
        p[k] = std::ldexp(static_cast<double>(c[k]), static_cast<int>(-n));
    }
    return p;
}

std::vector<double> binomial_row_recurrence(std::int64_t n) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    long double v = std::pow(0.5L, static_cast<long double>(n));
    for (std::int64_t k = 0; k <= n; ++k) {
        p[static_cast<std::size_t>(k)] = static_cast<double>(v);
        if (k < n) {
            v = v * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
        }
    }
    return p;
}

} // namespace

Distribution classical_walk(std::int64_t n, std::int64_t origin) {
    if (n < 0) {
        throw InvalidArgumentError("step count must be >= 0");
    }
    const std::vector<double> row =
        n <= 64 ? binomial_row_exact(n) : binomial_row_recurrence(n);
    Distribution d;
    d.origin = origin;
    d.probabilities.assign(static_cast<std::size_t>(2 * n + 1), 0.0);
    for (std::int64_t k = 0; k <= n; ++k) {
        // Site origin - n + 2k after k right moves.
        d.probabilities[static_cast<std::size_t>(2 * k)] = row[static_cast<std::size_t>(k)];
    }
    return d;
}

std::vector<std::pair<std::int64_t, double>> variance_scan(
    WalkState state, const CoinOperator& coin, std::span<const std::int64_t> n_list) {
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(n_list.size());
    std::int64_t current = 0;
    for (const std::int64_t n : n_list) {
        if (n < current) {
            throw InvalidArgumentError("variance_scan step counts must be nondecreasing");
        }
        for (; current < n; ++current) {
            state.step(coin);
        }
        out.emplace_back(n, moments(state.distribution()).variance);
    }
    return out;
}

} // namespace qwalk
