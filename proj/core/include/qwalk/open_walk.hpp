#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Per-step noise parameters of the open walk.
///
/// coin_dephasing_prob      with this probability the coin coherences at
///                          every site are projected away after the shift.
/// position_measure_prob    with this probability the position is fully
///                          projected (off-diagonal position blocks damped).
/// coin_angle_error         systematic over/under-rotation of the coin
///                          pulse, radians (coherent error, not a channel).
/// survival_fraction        per-step atom retention; bookkeeping only, the
///                          state shape is unaffected.
struct NoiseModel {
    double coin_dephasing_prob = 0.0;
    double position_measure_prob = 0.0;
    double coin_angle_error = 0.0;
    double survival_fraction = 1.0;

    void validate() const;
    bool is_noiseless() const {
        return coin_dephasing_prob == 0.0 && position_measure_prob == 0.0 &&
               coin_angle_error == 0.0;
    }
};

/// A quantum channel whose Kraus operators are all diagonal in the
/// (position, coin) basis: K_0 = sqrt(1-p) 1 plus sqrt(p) times one
/// projector per group (coin value or lattice site).  Completeness
/// sum_k K^dag K = 1 is verified numerically at construction.
///
/// Because every Kraus operator is diagonal, the channel acts entrywise:
/// rho_ij -> rho_ij * sum_k k_i k_j.  The mask is derived from the explicit
/// Kraus vectors once and cached.
class DiagonalKrausChannel {
public:
    /// Dephasing of the coin: groups = coin value at each basis index.
    static DiagonalKrausChannel coin_dephasing(double p, std::int64_t n_sites);
    /// Full position measurement channel: groups = lattice site.
    static DiagonalKrausChannel position_measurement(double p, std::int64_t n_sites);

    const std::vector<Eigen::VectorXd>& kraus_diagonals() const { return kraus_; }
    const Eigen::MatrixXd& mask() const { return mask_; }
    void apply(Eigen::MatrixXcd& rho) const;

private:
    DiagonalKrausChannel(double p, std::vector<int> group_of_index);

    std::vector<Eigen::VectorXd> kraus_;
    Eigen::MatrixXd mask_;
};

/// Mixed state over the coin (x) position space, same lattice conventions
/// as WalkState; basis index = 2 * (site - lattice_min) + coin.
class DensityState {
public:
    DensityState(std::int64_t origin, std::int64_t half_width);

    /// Rank-1 projector |psi><psi| of a pure state.
    static DensityState from_pure(const WalkState& state);

    std::int64_t origin() const { return origin_; }
    std::int64_t half_width() const { return half_width_; }
    std::int64_t lattice_min() const { return origin_ - half_width_; }
    std::int64_t lattice_max() const { return origin_ + half_width_; }
    Eigen::Index dim() const { return rho_.rows(); }

    const Eigen::MatrixXcd& matrix() const { return rho_; }
    Eigen::MatrixXcd& matrix() { return rho_; }

    double trace_real() const { return rho_.trace().real(); }
    double hermiticity_defect() const;
    double purity() const { return (rho_ * rho_).trace().real(); }

    void apply_coin_unitary(const Eigen::Matrix2cd& coin);
    /// Permutation conjugation of the conditional shift.  Throws
    /// LatticeOverflowError when boundary populations would leave the
    /// lattice.
    void conditional_shift();

    /// Position probabilities (diagonal, coin traced out).
    Distribution distribution() const;

private:
    std::size_t index(std::int64_t site, int coin) const {
        return 2 * static_cast<std::size_t>(site - lattice_min()) +
               static_cast<std::size_t>(coin);
    }

    std::int64_t origin_;
    std::int64_t half_width_;
    Eigen::MatrixXcd rho_;
    Eigen::MatrixXcd scratch_;
};

/// One noisy step: perturbed coin unitary, conditional shift, coin
/// dephasing channel, position channel.  Trace preservation is enforced to
/// 1e-10.  The channels must carry the model's probabilities and this
/// state's lattice size (run_open builds them once per run).
void noisy_step(DensityState& rho, const CoinOperator& coin, const NoiseModel& noise,
                const DiagonalKrausChannel& coin_channel,
                const DiagonalKrausChannel& position_channel);

/// Convenience form that builds the two channels on the fly.
void noisy_step(DensityState& rho, const CoinOperator& coin, const NoiseModel& noise);

struct OpenRunResult {
    Distribution distribution;
    /// survival_fraction^n: expected retained fraction of trials.
    double survival_multiplier = 1.0;
};

/// n noisy steps from |psi><psi|; returns the traced-out position
/// distribution and the survival multiplier.
OpenRunResult run_open(const WalkState& initial, std::int64_t n,
                       const CoinOperator& coin, const NoiseModel& noise);

/// Monte Carlo unravelling of the same channel model: per step the coin and
/// shift are applied, then with probability coin_dephasing_prob the coin is
/// measured and with probability position_measure_prob the position is
/// measured (outcomes sampled).  Averages the per-trajectory position
/// distributions.  Deterministic in (seed, trial index).
Distribution trajectory_run(const WalkState& initial, std::int64_t n,
                            const CoinOperator& coin, const NoiseModel& noise,
                            std::int64_t trials, std::uint64_t seed);

} // namespace qwalk
