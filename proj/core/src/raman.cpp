#include "qwalk/raman.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qwalk/constants.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

void RamanConfig::validate() const {
    // Zero coupling (a beam switched off) is admitted so degenerate
    // calibrations can report fidelity 0 instead of refusing to run.
    if (!(coupling_v1 >= 0.0) || !(coupling_v2 >= 0.0)) {
        throw InvalidArgumentError("Raman couplings V1, V2 must be >= 0");
    }
    if (!std::isfinite(detuning1) || !std::isfinite(detuning2)) {
        throw InvalidArgumentError("Raman detunings must be finite");
    }
}

ThreeLevelState ThreeLevelState::bare(int level) {
    if (level < 0 || level > 2) {
        throw InvalidArgumentError("bare level index must be 0 (=|0>), 1 (=|e>) or 2 (=|1>)");
    }
    ThreeLevelState s;
    s.amplitudes.setZero();
    s.amplitudes(level) = Complex(1.0, 0.0);
    return s;
}

Eigen::Matrix3cd raman_hamiltonian(const RamanConfig& config, RamanBranch branch) {
    const Complex i(0.0, 1.0);
    const double v1 = 0.5 * config.coupling_v1;
    const double v2 = 0.5 * config.coupling_v2;
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    if (branch == RamanBranch::A) {
        h(1, 1) = config.detuning1;
        h(2, 2) = config.detuning1 - config.detuning2;
        h(1, 0) = -v1 * std::exp(-i * config.phase1);
        h(0, 1) = -v1 * std::exp(i * config.phase1);
        h(1, 2) = -v2 * std::exp(i * config.phase2);
        h(2, 1) = -v2 * std::exp(-i * config.phase2);
    } else {
        h(1, 1) = config.detuning2;
        h(0, 0) = config.detuning2 - config.detuning1;
        h(1, 2) = -v2 * std::exp(-i * config.phase2);
        h(2, 1) = -v2 * std::exp(i * config.phase2);
        h(1, 0) = -v1 * std::exp(i * config.phase1);
        h(0, 1) = -v1 * std::exp(-i * config.phase1);
    }
    return h;
}

namespace {

void require_hermitian(const Eigen::Matrix3cd& h) {
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidArgumentError("Hamiltonian must be Hermitian");
    }
}

} // namespace

ThreeLevelState raman_evolve(const ThreeLevelState& state, const Eigen::Matrix3cd& h,
                             double t) {
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("3x3 eigendecomposition failed");
    }
    const Complex i(0.0, 1.0);
    Eigen::Vector3cd phases;
    for (int k = 0; k < 3; ++k) {
        phases(k) = std::exp(-i * (es.eigenvalues()(k) * t));
    }
    ThreeLevelState out;
    out.amplitudes = es.eigenvectors() *
                     (phases.asDiagonal() *
                      (es.eigenvectors().adjoint() * state.amplitudes));
    return out;
}

KickCalibration calibrate_kick(const RamanConfig& config, double t_max) {
    config.validate();
    if (!(t_max > 0.0)) {
        throw InvalidArgumentError("t_max must be > 0");
    }
    const Eigen::Matrix3cd h = raman_hamiltonian(config, RamanBranch::A);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("3x3 eigendecomposition failed");
    }
    const Eigen::Vector3d evals = es.eigenvalues();
    const Eigen::Matrix3cd v = es.eigenvectors();

    // <1| U(t) |0> = sum_k e^{-i w_k t} <1|v_k><v_k|0>; |e> population the
    // same way.  Amplitude weights are precomputed so each time sample is a
    // few flops.
    Eigen::Vector3cd w_transfer, w_excited;
    for (int k = 0; k < 3; ++k) {
        w_transfer(k) = v(2, k) * std::conj(v(0, k));
        w_excited(k) = v(1, k) * std::conj(v(0, k));
    }
    const Complex i(0.0, 1.0);
    const auto transfer_prob = [&](double t) {
        Complex amp(0.0, 0.0);
        for (int k = 0; k < 3; ++k) {
            amp += w_transfer(k) * std::exp(-i * (evals(k) * t));
        }
        return std::norm(amp);
    };
    const auto excited_prob = [&](double t) {
        Complex amp(0.0, 0.0);
        for (int k = 0; k < 3; ++k) {
            amp += w_excited(k) * std::exp(-i * (evals(k) * t));
        }
        return std::norm(amp);
    };

    // Grid fine enough for the fastest Bohr frequency, capped for safety.
    const double spread = evals.maxCoeff() - evals.minCoeff();
    long n_grid = 4096;
    if (spread > 0.0) {
        const double dt_target = (2.0 * M_PI / spread) / 64.0;
        n_grid = std::max<long>(4096, static_cast<long>(std::ceil(t_max / dt_target)));
        n_grid = std::min<long>(n_grid, 8'000'000);
    }

    KickCalibration result;
    long best_index = 1;
    double best = -1.0;
    for (long j = 1; j <= n_grid; ++j) {
        const double t = t_max * static_cast<double>(j) / static_cast<double>(n_grid);
        const double p = transfer_prob(t);
        if (p > best) {
            best = p;
            best_index = j;
        }
        result.max_e_population = std::max(result.max_e_population, excited_prob(t));
    }

    // Golden-section refinement inside the bracketing grid cells.
    double lo = t_max * static_cast<double>(std::max<long>(best_index - 1, 1)) /
                static_cast<double>(n_grid);
    double hi = t_max * static_cast<double>(std::min<long>(best_index + 1, n_grid)) /
                static_cast<double>(n_grid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = transfer_prob(c);
    double fd = transfer_prob(d);
    while ((hi - lo) > 1e-6 * hi) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = transfer_prob(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = transfer_prob(d);
        }
    }
    const double t_best = 0.5 * (lo + hi);
    const double p_best = transfer_prob(t_best);
    if (p_best >= best) {
        result.t_kick = t_best;
        result.fidelity = p_best;
    } else {
        result.t_kick = t_max * static_cast<double>(best_index) / static_cast<double>(n_grid);
        result.fidelity = best;
    }
    // Flag an argmax on the scan boundary (t_max too short) and the
    // degenerate flat-zero transfer curve (no path to |1>).
    result.boundary_max = (best_index == n_grid) || (result.fidelity <= 1e-12);
    return result;
}

double momentum_kick(const RamanConfig& config, KickDirection direction) {
    if (config.wave_number_k1 == config.wave_number_k2) {
        throw InvalidArgumentError("k1 = k2 gives a zero momentum kick");
    }
    const double p = kHBar * (config.wave_number_k1 - config.wave_number_k2);
    return direction == KickDirection::Left ? p : -p;
}

double translation_time(double momentum, const RamanConfig& config) {
    if (momentum == 0.0) {
        throw InvalidArgumentError("zero momentum cannot translate the condensate");
    }
    if (!(config.atom_mass > 0.0) || !(config.step_length > 0.0)) {
        throw InvalidArgumentError("atom_mass and step_length must be > 0");
    }
    // time = distance / velocity with velocity |P| / m.
    return config.atom_mass * config.step_length / std::abs(momentum);
}

} // namespace qwalk
