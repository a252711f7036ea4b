#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Exact position probabilities on a bounded lattice.  Entry i belongs to
/// absolute site origin - half_width + i; the array always spans the full
/// allocated window (zero entries included).
struct Distribution {
    std::int64_t origin = 0;
    std::vector<double> probabilities;

    std::int64_t half_width() const {
        return (static_cast<std::int64_t>(probabilities.size()) - 1) / 2;
    }
    std::int64_t site_at(std::size_t i) const {
        return origin - half_width() + static_cast<std::int64_t>(i);
    }
    /// Probability at an absolute site (0 outside the window).
    double at(std::int64_t site) const;
};

/// Pure state of the walker on a bounded lattice: complex amplitudes over
/// (position, coin) pairs, coin-major within site.  The lattice spans
/// origin +- half_width and is sized up front; operations never grow it.
///
/// The step length is metadata only: lattice positions are integers and the
/// physical position of site x is x * step_length.
class WalkState {
public:
    WalkState(std::int64_t origin, std::int64_t half_width, double step_length_m = 1.0);

    /// Point start: all amplitude on `origin` with coin state (c0, c1).
    static WalkState point(std::int64_t origin, std::int64_t half_width,
                           Complex c0, Complex c1, double step_length_m = 1.0);

    /// Discrete Gaussian envelope of the given position std deviation (in
    /// lattice units), truncated to exactly zero outside
    /// origin +- envelope_radius, then normalized.  envelope_radius <= 0
    /// selects ceil(7 sigma).  The coin factorizes: same (c0, c1) at every
    /// occupied site.
    static WalkState gaussian(std::int64_t origin, std::int64_t half_width,
                              double sigma_sites, std::int64_t envelope_radius,
                              Complex c0, Complex c1, double step_length_m = 1.0);

    std::int64_t origin() const { return origin_; }
    std::int64_t half_width() const { return half_width_; }
    double step_length() const { return step_length_; }
    std::int64_t lattice_min() const { return origin_ - half_width_; }
    std::int64_t lattice_max() const { return origin_ + half_width_; }

    /// Occupied window: amplitudes outside [support_min, support_max] are
    /// exactly zero.
    std::int64_t support_min() const { return support_min_; }
    std::int64_t support_max() const { return support_max_; }

    Complex amplitude(std::int64_t site, int coin) const;
    void set_amplitude(std::int64_t site, int coin, Complex value);

    double norm_squared() const;
    /// Rescale to unit norm; rejects zero-norm states.
    void normalize();

    /// Coin matrix applied at every site; positions untouched.
    void apply_coin(const CoinOperator& coin);
    /// Coin-0 amplitude moves one site left, coin-1 one site right; labels
    /// unchanged.  Throws LatticeOverflowError naming the offending site.
    void conditional_shift();
    /// As conditional_shift, but the Raman kick also exchanges the coin
    /// labels: (0, x) -> (1, x-1) and (1, x) -> (0, x+1).
    void shift_with_flip();
    /// Coin labels 0 <-> 1 swapped at every site (involution).
    void bit_flip();

    /// One abstract walk step: conditional_shift(apply_coin(state)).
    /// Implemented as a fused pass over the occupied window.
    void step(const CoinOperator& coin);
    /// One physically ordered step: coin pulse, shift-with-flip, then the
    /// compensatory bit flip.  Equals step() at amplitude level.
    void physical_step(const CoinOperator& coin);

    /// n steps; verifies the accumulated norm drift stays below 1e-9.
    void evolve(std::int64_t n, const CoinOperator& coin);

    /// Per-site probability with the coin traced out.
    Distribution distribution() const;

    /// Largest |amplitude| difference against another state on the same
    /// lattice.
    double amplitude_distance(const WalkState& other) const;

private:
    std::size_t index(std::int64_t site, int coin) const {
        return 2 * static_cast<std::size_t>(site - lattice_min()) +
               static_cast<std::size_t>(coin);
    }
    void expand_support(std::int64_t site);
    void check_shift_headroom() const;

    std::int64_t origin_;
    std::int64_t half_width_;
    double step_length_;
    std::int64_t support_min_;
    std::int64_t support_max_;
    std::vector<Complex> amp_;
    std::vector<Complex> scratch_;
};

/// Moments of a distribution in lattice units (absolute site index).
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments moments(const Distribution& d);

/// Exact n-step unbiased classical walk started at `origin`: binomial
/// probabilities with the parity of n.  Binomials are evaluated as exact
/// integers for n <= 64 and by a stable multiplicative recurrence above.
Distribution classical_walk(std::int64_t n, std::int64_t origin = 0);

/// Variance at each requested step count, from a single evolution pass.
/// n_list must be nondecreasing.
std::vector<std::pair<std::int64_t, double>> variance_scan(
    WalkState state, const CoinOperator& coin, std::span<const std::int64_t> n_list);

} // namespace qwalk
