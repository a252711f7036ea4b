#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Square rf pulse coupling the two trappable levels with matrix element
/// rabi_frequency / 2 (angular units) and the stated detuning.
struct RfPulse {
    double rabi_frequency = 0.0; // rad/s, > 0
    double detuning = 0.0;       // rad/s
    double duration = 0.0;       // s, >= 0

    void validate() const;
};

/// Two-level amplitudes (a, b) of |0> and |1>.
struct TwoLevelAmps {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    double population0() const { return std::norm(a); }
    double population1() const { return std::norm(b); }
    double norm_squared() const { return std::norm(a) + std::norm(b); }
};

/// Closed-form propagation (generalized Rabi formula) of
/// i d/dt (a, b) = [[0, w/2], [w/2, Delta]] (a, b).
TwoLevelAmps rf_evolve_closed(const TwoLevelAmps& amps, const RfPulse& pulse);

/// Fixed-step RK4 on the same equation; the step is chosen so the norm
/// drift stays below 1e-10.  Kept as an independent route for testing the
/// closed form.
TwoLevelAmps rf_evolve_rk4(const TwoLevelAmps& amps, const RfPulse& pulse);

/// Default path (closed form).
inline TwoLevelAmps rf_evolve(const TwoLevelAmps& amps, const RfPulse& pulse) {
    return rf_evolve_closed(amps, pulse);
}

enum class PulseKind {
    HadamardRotation, // pi/2 pulse: balanced superposition
    PiFlip            // pi pulse: full population transfer
};

/// Resonant pulse of the duration that realizes the requested rotation.
RfPulse design_pulse(PulseKind kind, double rabi_frequency);

/// The 2x2 propagator of a resonant pulse as a walk coin:
/// cos(w tau / 2) 1 - i sin(w tau / 2) sigma_x.  For the pi/2 pulse this is
/// (1/sqrt(2)) [[1, -i], [-i, 1]] -- a balanced coin, but not the Hadamard
/// matrix.  Non-resonant pulses are rejected.
CoinOperator rf_coin_matrix(const RfPulse& pulse);

} // namespace qwalk
