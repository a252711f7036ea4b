#include "qwalk/open_walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

void NoiseModel::validate() const {
    if (!(coin_dephasing_prob >= 0.0 && coin_dephasing_prob <= 1.0)) {
        throw InvalidArgumentError("coin_dephasing_prob must be in [0, 1]");
    }
    if (!(position_measure_prob >= 0.0 && position_measure_prob <= 1.0)) {
        throw InvalidArgumentError("position_measure_prob must be in [0, 1]");
    }
    if (!(survival_fraction > 0.0 && survival_fraction <= 1.0)) {
        throw InvalidArgumentError("survival_fraction must be in (0, 1]");
    }
    if (!std::isfinite(coin_angle_error)) {
        throw InvalidArgumentError("coin_angle_error must be finite");
    }
}

DiagonalKrausChannel::DiagonalKrausChannel(double p, std::vector<int> group_of_index) {
    const auto d = static_cast<Eigen::Index>(group_of_index.size());
    const int n_groups =
        1 + *std::max_element(group_of_index.begin(), group_of_index.end());

    kraus_.emplace_back(Eigen::VectorXd::Constant(d, std::sqrt(1.0 - p)));
    for (int g = 0; g < n_groups; ++g) {
        Eigen::VectorXd k = Eigen::VectorXd::Zero(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            if (group_of_index[static_cast<std::size_t>(i)] == g) {
                k(i) = std::sqrt(p);
            }
        }
        kraus_.push_back(std::move(k));
    }

    // Completeness witness: sum_k K^dag K = 1 (all K diagonal and real).
    Eigen::VectorXd total = Eigen::VectorXd::Zero(d);
    for (const auto& k : kraus_) {
        total += k.cwiseProduct(k);
    }
    if ((total.array() - 1.0).abs().maxCoeff() > 1e-12) {
        throw NumericError("Kraus completeness defect above 1e-12");
    }

    // Entrywise action derived from the Kraus vectors.
    mask_ = Eigen::MatrixXd::Zero(d, d);
    for (const auto& k : kraus_) {
        mask_.noalias() += k * k.transpose();
    }
}

DiagonalKrausChannel DiagonalKrausChannel::coin_dephasing(double p, std::int64_t n_sites) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgumentError("channel probability must be in [0, 1]");
    }
    std::vector<int> groups(2 * static_cast<std::size_t>(n_sites));
    for (std::size_t i = 0; i < groups.size(); ++i) {
        groups[i] = static_cast<int>(i % 2);
    }
    return DiagonalKrausChannel(p, std::move(groups));
}

DiagonalKrausChannel DiagonalKrausChannel::position_measurement(double p,
                                                                std::int64_t n_sites) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgumentError("channel probability must be in [0, 1]");
    }
    std::vector<int> groups(2 * static_cast<std::size_t>(n_sites));
    for (std::size_t i = 0; i < groups.size(); ++i) {
        groups[i] = static_cast<int>(i / 2);
    }
    return DiagonalKrausChannel(p, std::move(groups));
}

void DiagonalKrausChannel::apply(Eigen::MatrixXcd& rho) const {
    rho.array() *= mask_.array();
}

DensityState::DensityState(std::int64_t origin, std::int64_t half_width)
    : origin_(origin), half_width_(half_width) {
    if (half_width < 0) {
        throw InvalidArgumentError("half_width must be >= 0");
    }
    const auto d = static_cast<Eigen::Index>(2 * (2 * half_width + 1));
    rho_ = Eigen::MatrixXcd::Zero(d, d);
    scratch_ = Eigen::MatrixXcd::Zero(d, d);
}

DensityState DensityState::from_pure(const WalkState& state) {
    DensityState rho(state.origin(), state.half_width());
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(rho.dim());
    for (std::int64_t x = state.support_min(); x <= state.support_max(); ++x) {
        for (int c = 0; c < 2; ++c) {
            psi(static_cast<Eigen::Index>(rho.index(x, c))) = state.amplitude(x, c);
        }
    }
    rho.rho_.noalias() = psi * psi.adjoint();
    return rho;
}

double DensityState::hermiticity_defect() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

void DensityState::apply_coin_unitary(const Eigen::Matrix2cd& coin) {
    // Coin acts on the fast index: conjugate every 2x2 block by the coin.
    const Eigen::Index n_sites = rho_.rows() / 2;
    for (Eigen::Index bx = 0; bx < n_sites; ++bx) {
        for (Eigen::Index by = 0; by < n_sites; ++by) {
            rho_.block<2, 2>(2 * bx, 2 * by) =
                coin * rho_.block<2, 2>(2 * bx, 2 * by) * coin.adjoint();
        }
    }
}

void DensityState::conditional_shift() {
    const auto d = rho_.rows();
    const std::int64_t n_sites = 2 * half_width_ + 1;

    // Boundary populations that would leave the lattice must vanish.  The
    // state is positive semidefinite, so zero population implies zero
    // coherences in that row/column.
    const auto left0 = static_cast<Eigen::Index>(index(lattice_min(), 0));
    const auto right1 = static_cast<Eigen::Index>(index(lattice_max(), 1));
    if (std::abs(rho_(left0, left0)) > 1e-14) {
        throw LatticeOverflowError(
            lattice_min() - 1,
            "coin-0 population at site " + std::to_string(lattice_min()) +
                " would shift off-lattice");
    }
    if (std::abs(rho_(right1, right1)) > 1e-14) {
        throw LatticeOverflowError(
            lattice_max() + 1,
            "coin-1 population at site " + std::to_string(lattice_max()) +
                " would shift off-lattice");
    }

    // source[i] = basis index that moves into i under the shift; -1 = none.
    std::vector<Eigen::Index> source(static_cast<std::size_t>(d), -1);
    for (std::int64_t s = 0; s < n_sites; ++s) {
        const Eigen::Index i0 = 2 * s;     // (site s, coin 0) <- (site s+1, coin 0)
        const Eigen::Index i1 = 2 * s + 1; // (site s, coin 1) <- (site s-1, coin 1)
        if (s + 1 < n_sites) source[static_cast<std::size_t>(i0)] = 2 * (s + 1);
        if (s - 1 >= 0) source[static_cast<std::size_t>(i1)] = 2 * (s - 1) + 1;
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const Eigen::Index si = source[static_cast<std::size_t>(i)];
            const Eigen::Index sj = source[static_cast<std::size_t>(j)];
            scratch_(i, j) = (si >= 0 && sj >= 0) ? rho_(si, sj) : Complex(0.0, 0.0);
        }
    }
    rho_.swap(scratch_);
}

Distribution DensityState::distribution() const {
    Distribution dist;
    dist.origin = origin_;
    dist.probabilities.assign(static_cast<std::size_t>(2 * half_width_ + 1), 0.0);
    for (std::size_t s = 0; s < dist.probabilities.size(); ++s) {
        const auto i = static_cast<Eigen::Index>(2 * s);
        dist.probabilities[s] = rho_(i, i).real() + rho_(i + 1, i + 1).real();
    }
    return dist;
}

void noisy_step(DensityState& rho, const CoinOperator& coin, const NoiseModel& noise,
                const DiagonalKrausChannel& coin_channel,
                const DiagonalKrausChannel& position_channel) {
    noise.validate();
    const CoinOperator effective = over_rotate(coin, noise.coin_angle_error);
    rho.apply_coin_unitary(effective.matrix());
    rho.conditional_shift();
    coin_channel.apply(rho.matrix());
    position_channel.apply(rho.matrix());
    const double drift = std::abs(rho.trace_real() - 1.0);
    if (drift > 1e-10) {
        throw NumericError("density trace drift " + std::to_string(drift));
    }
}

void noisy_step(DensityState& rho, const CoinOperator& coin, const NoiseModel& noise) {
    const std::int64_t n_sites = 2 * rho.half_width() + 1;
    const auto coin_channel =
        DiagonalKrausChannel::coin_dephasing(noise.coin_dephasing_prob, n_sites);
    const auto position_channel =
        DiagonalKrausChannel::position_measurement(noise.position_measure_prob, n_sites);
    noisy_step(rho, coin, noise, coin_channel, position_channel);
}

OpenRunResult run_open(const WalkState& initial, std::int64_t n,
                       const CoinOperator& coin, const NoiseModel& noise) {
    noise.validate();
    DensityState rho = DensityState::from_pure(initial);
    const std::int64_t n_sites = 2 * rho.half_width() + 1;
    const auto coin_channel =
        DiagonalKrausChannel::coin_dephasing(noise.coin_dephasing_prob, n_sites);
    const auto position_channel =
        DiagonalKrausChannel::position_measurement(noise.position_measure_prob, n_sites);
    for (std::int64_t k = 0; k < n; ++k) {
        noisy_step(rho, coin, noise, coin_channel, position_channel);
    }
    if (rho.hermiticity_defect() > 1e-12) {
        throw NumericError("density matrix lost Hermiticity");
    }
    return OpenRunResult{rho.distribution(), std::pow(noise.survival_fraction,
                                                      static_cast<double>(n))};
}

namespace {

// Projective coin measurement on a pure state; outcome picked with `u`.
void measure_coin(WalkState& state, double u) {
    double p0 = 0.0;
    for (std::int64_t x = state.support_min(); x <= state.support_max(); ++x) {
        p0 += std::norm(state.amplitude(x, 0));
    }
    const int outcome = (u < p0) ? 0 : 1;
    for (std::int64_t x = state.support_min(); x <= state.support_max(); ++x) {
        state.set_amplitude(x, 1 - outcome, Complex(0.0, 0.0));
    }
    state.normalize();
}

void measure_position(WalkState& state, double u) {
    double cumulative = 0.0;
    std::int64_t chosen = state.support_min();
    bool found = false;
    std::int64_t last_occupied = state.support_min();
    for (std::int64_t x = state.support_min(); x <= state.support_max(); ++x) {
        const double p = std::norm(state.amplitude(x, 0)) + std::norm(state.amplitude(x, 1));
        if (p > 0.0) {
            last_occupied = x;
        }
        cumulative += p;
        if (!found && u < cumulative) {
            chosen = x;
            found = true;
        }
    }
    // u can land past the rounded total; fall back to the last occupied bin.
    if (!found) {
        chosen = last_occupied;
    }
    for (std::int64_t x = state.support_min(); x <= state.support_max(); ++x) {
        if (x != chosen) {
            state.set_amplitude(x, 0, Complex(0.0, 0.0));
            state.set_amplitude(x, 1, Complex(0.0, 0.0));
        }
    }
    state.normalize();
}

} // namespace

Distribution trajectory_run(const WalkState& initial, std::int64_t n,
                            const CoinOperator& coin, const NoiseModel& noise,
                            std::int64_t trials, std::uint64_t seed) {
    noise.validate();
    if (trials < 1) {
        throw InvalidArgumentError("trials must be >= 1");
    }
    const CoinOperator effective = over_rotate(coin, noise.coin_angle_error);
    std::vector<double> accum(static_cast<std::size_t>(2 * initial.half_width() + 1), 0.0);

    for (std::int64_t t = 0; t < trials; ++t) {
        WalkState state = initial;
        CounterRng rng(seed, static_cast<std::uint64_t>(t), 0);
        for (std::int64_t k = 0; k < n; ++k) {
            state.step(effective);
            // Fixed draw budget of 4 per step keeps the stream positions
            // independent of which branches fire.
            const double u_coin = rng.next_unit();
            const double u_coin_outcome = rng.next_unit();
            const double u_pos = rng.next_unit();
            const double u_pos_outcome = rng.next_unit();
            if (u_coin < noise.coin_dephasing_prob) {
                measure_coin(state, u_coin_outcome);
            }
            if (u_pos < noise.position_measure_prob) {
                measure_position(state, u_pos_outcome);
            }
        }
        const Distribution d = state.distribution();
        for (std::size_t i = 0; i < accum.size(); ++i) {
            accum[i] += d.probabilities[i];
        }
    }

    Distribution out;
    out.origin = initial.origin();
    out.probabilities.resize(accum.size());
    const double inv = 1.0 / static_cast<double>(trials);
    for (std::size_t i = 0; i < accum.size(); ++i) {
        out.probabilities[i] = accum[i] * inv;
    }
    return out;
}

} // namespace qwalk
