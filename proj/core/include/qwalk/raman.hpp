#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qwalk {

using Complex = std::complex<double>;

/// Parameters of the two Raman beams driving |0> <-> |e| <-> |1>.
/// Couplings and detunings are angular (rad/s); wave numbers are signed
/// values along the trap axis.  The two-photon detuning is delta1 - delta2.
struct RamanConfig {
    double coupling_v1 = 0.0; // rad/s, > 0
    double coupling_v2 = 0.0; // rad/s, > 0
    double detuning1 = 0.0;   // rad/s
    double detuning2 = 0.0;   // rad/s
    double phase1 = 0.0;      // rad
    double phase2 = 0.0;      // rad
    double wave_number_k1 = 0.0; // 1/m, signed
    double wave_number_k2 = 0.0; // 1/m, signed
    double atom_mass = 0.0;      // kg
    double step_length = 0.0;    // m

    void validate() const;
};

/// Amplitudes over the bare states in the order (|0>, |e>, |1>).
struct ThreeLevelState {
    Eigen::Vector3cd amplitudes;

    static ThreeLevelState bare(int level);
    double population(int level) const { return std::norm(amplitudes(level)); }
    double norm_squared() const { return amplitudes.squaredNorm(); }
};

enum class RamanBranch {
    A, // drives |0> -> |e> -> |1> (bare |0> energy zero)
    B  // drives |1> -> |e> -> |0> (bare |1> energy zero)
};

/// Rotating-wave Hamiltonian in angular units (H / hbar), basis
/// (|0>, |e>, |1>), Hermitian by construction.  Branch A has diagonal
/// (0, delta1, delta1 - delta2); branch B mirrors it.
Eigen::Matrix3cd raman_hamiltonian(const RamanConfig& config, RamanBranch branch);

/// exp(-i H t) |state> via eigendecomposition of the Hermitian matrix
/// (exact at this size).  Non-Hermitian input is rejected.
ThreeLevelState raman_evolve(const ThreeLevelState& state, const Eigen::Matrix3cd& h,
                             double t);

struct KickCalibration {
    double t_kick = 0.0;        // s
    double fidelity = 0.0;      // |<1| U(t_kick) |0>|^2
    double max_e_population = 0.0; // largest |e> population seen on the grid
    bool boundary_max = false;  // argmax landed at t_max: scan too short
};

/// Scans |<1| exp(-i H_a t) |0>|^2 over (0, t_max], then refines the best
/// grid point by golden-section search to relative precision 1e-6 in t.
KickCalibration calibrate_kick(const RamanConfig& config, double t_max);

enum class KickDirection { Left, Right };

/// Photon-recoil momentum of one stimulated Raman kick:
/// hbar (k1 - k2) for the |0> -> |1> branch (left), the negative for the
/// reverse.  Equal wave numbers give no kick and are rejected.
double momentum_kick(const RamanConfig& config, KickDirection direction);

/// Time for the condensate to translate one step length at velocity |P|/m.
double translation_time(double momentum, const RamanConfig& config);

} // namespace qwalk
