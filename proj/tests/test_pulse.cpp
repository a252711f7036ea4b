#include <cmath>
#include <complex>

#include "doctest.h"

#include "qwalk/errors.hpp"
#include "qwalk/pulse.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/walk_state.hpp"

using qwalk::Complex;
using qwalk::PulseKind;
using qwalk::RfPulse;
using qwalk::TwoLevelAmps;

namespace {

RfPulse resonant(double omega, double tau) {
    RfPulse p;
    p.rabi_frequency = omega;
    p.detuning = 0.0;
    p.duration = tau;
    return p;
}

} // namespace

TEST_CASE("resonant pi pulse fully inverts, pi/2 pulse balances") {
    const double omega = 2.0 * M_PI * 1000.0;
    const TwoLevelAmps flipped =
        qwalk::rf_evolve(TwoLevelAmps{}, resonant(omega, M_PI / omega));
    CHECK(flipped.population1() == doctest::Approx(1.0).epsilon(1e-12));

    const TwoLevelAmps balanced =
        qwalk::rf_evolve(TwoLevelAmps{}, resonant(omega, M_PI / (2.0 * omega)));
    CHECK(balanced.population0() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(balanced.population1() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero-duration pulse is the identity") {
    const TwoLevelAmps start{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const TwoLevelAmps out = qwalk::rf_evolve(start, resonant(1.0e4, 0.0));
    CHECK(std::abs(out.a - start.a) < 1e-15);
    CHECK(std::abs(out.b - start.b) < 1e-15);
}

TEST_CASE("detuned drive saturates at the generalized Rabi bound") {
    // Delta = omega_R: max |b|^2 = w^2/(w^2 + Delta^2) = 1/2, reached at
    // G tau = pi with G = sqrt(2) w.
    const double omega = 2.0 * M_PI * 500.0;
    RfPulse p = resonant(omega, 0.0);
    p.detuning = omega;
    const double g = std::sqrt(2.0) * omega;
    double max_pop = 0.0;
    for (int i = 0; i <= 400; ++i) {
        p.duration = (2.0 * M_PI / g) * static_cast<double>(i) / 200.0;
        max_pop = std::max(max_pop, qwalk::rf_evolve(TwoLevelAmps{}, p).population1());
    }
    CHECK(max_pop == doctest::Approx(0.5).epsilon(1e-9));
    p.duration = M_PI / g;
    CHECK(qwalk::rf_evolve(TwoLevelAmps{}, p).population1() ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("closed form and RK4 integrator agree over the (detuning, duration) grid") {
    const double omega = 2.0 * M_PI * 2000.0;
    double worst_pop = 0.0;
    double worst_norm = 0.0;
    for (const double ratio : {0.0, 0.5, 1.0, 5.0}) {
        for (int i = 0; i <= 40; ++i) {
            RfPulse p = resonant(omega, (4.0 * M_PI / omega) * i / 40.0);
            p.detuning = ratio * omega;
            const TwoLevelAmps closed = qwalk::rf_evolve_closed(TwoLevelAmps{}, p);
            const TwoLevelAmps numeric = qwalk::rf_evolve_rk4(TwoLevelAmps{}, p);
            worst_pop = std::max(worst_pop,
                                 std::abs(closed.population1() - numeric.population1()));
            worst_norm = std::max(worst_norm, std::abs(numeric.norm_squared() - 1.0));
            CHECK(std::abs(closed.norm_squared() - 1.0) < 1e-12);
        }
    }
    CHECK(worst_pop < 1e-9);
    CHECK(worst_norm < 1e-10);
}

TEST_CASE("design_pulse: pi flip at 1 kHz lasts 0.5 ms and transfers fully") {
    const double omega = 2.0 * M_PI * 1000.0;
    const RfPulse pi_pulse = qwalk::design_pulse(PulseKind::PiFlip, omega);
    CHECK(pi_pulse.duration == doctest::Approx(0.5e-3).epsilon(1e-12));
    CHECK(pi_pulse.detuning == 0.0);
    CHECK(qwalk::rf_evolve(TwoLevelAmps{}, pi_pulse).population1() ==
          doctest::Approx(1.0).epsilon(1e-12));

    const RfPulse had = qwalk::design_pulse(PulseKind::HadamardRotation, omega);
    const TwoLevelAmps once = qwalk::rf_evolve(TwoLevelAmps{}, had);
    CHECK(once.population0() == doctest::Approx(0.5).epsilon(1e-12));
    const TwoLevelAmps twice = qwalk::rf_evolve(once, had);
    CHECK(twice.population1() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rf pi/2 coin matrix is the balanced (1, -i; -i, 1)/sqrt(2) coin") {
    const double omega = 2.0 * M_PI * 1000.0;
    const qwalk::CoinOperator coin =
        qwalk::rf_coin_matrix(qwalk::design_pulse(PulseKind::HadamardRotation, omega));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(coin.entry(0, 0) - Complex(s, 0.0)) < 1e-12);
    CHECK(std::abs(coin.entry(0, 1) - Complex(0.0, -s)) < 1e-12);
    CHECK(std::abs(coin.entry(1, 0) - Complex(0.0, -s)) < 1e-12);
    CHECK(std::abs(coin.entry(1, 1) - Complex(s, 0.0)) < 1e-12);

    // Acting on |0> it yields (|0> - i|1>)/sqrt(2).
    const TwoLevelAmps cat = qwalk::rf_evolve(
        TwoLevelAmps{}, qwalk::design_pulse(PulseKind::HadamardRotation, omega));
    CHECK(std::abs(cat.a - Complex(s, 0.0)) < 1e-12);
    CHECK(std::abs(cat.b - Complex(0.0, -s)) < 1e-12);
}

TEST_CASE("rf pi coin is -i times the bit flip") {
    const double omega = 2.0 * M_PI * 1000.0;
    const qwalk::CoinOperator coin =
        qwalk::rf_coin_matrix(qwalk::design_pulse(PulseKind::PiFlip, omega));
    CHECK(std::abs(coin.entry(0, 1) - Complex(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(coin.entry(1, 0) - Complex(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(coin.entry(0, 0)) < 1e-12);
    CHECK(std::abs(coin.entry(1, 1)) < 1e-12);
}

TEST_CASE("squared pi/2 coin equals the pi coin") {
    const double omega = 2.0 * M_PI * 1000.0;
    const Eigen::Matrix2cd half =
        qwalk::rf_coin_matrix(qwalk::design_pulse(PulseKind::HadamardRotation, omega))
            .matrix();
    const Eigen::Matrix2cd full =
        qwalk::rf_coin_matrix(qwalk::design_pulse(PulseKind::PiFlip, omega)).matrix();
    CHECK(((half * half) - full).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("non-resonant pulses cannot be exported as coins") {
    RfPulse p = resonant(1.0e4, 1.0e-4);
    p.detuning = 100.0;
    CHECK_THROWS_AS(qwalk::rf_coin_matrix(p), qwalk::InvalidArgumentError);
}

TEST_CASE("rf coin walk: gauge-equivalent to Hadamard from |0>, symmetric from |+>") {
    const double omega = 2.0 * M_PI * 1000.0;
    const qwalk::CoinOperator coin =
        qwalk::rf_coin_matrix(qwalk::design_pulse(PulseKind::HadamardRotation, omega));
    const double s = 1.0 / std::sqrt(2.0);

    // K = D H D with D = diag(1, -i), so the |0>-start distribution matches
    // the Hadamard walk site for site.
    qwalk::WalkState from_zero =
        qwalk::WalkState::point(0, 8, Complex(1.0, 0.0), Complex(0.0, 0.0));
    from_zero.evolve(7, coin);
    qwalk::WalkState hadamard =
        qwalk::WalkState::point(0, 8, Complex(1.0, 0.0), Complex(0.0, 0.0));
    hadamard.evolve(7, qwalk::CoinOperator::hadamard());
    CHECK(qwalk::total_variation(from_zero.distribution(), hadamard.distribution()) <
          1e-13);

    // The balanced sigma_x-type coin is symmetric from its exchange
    // eigenstate (|0> + |1>)/sqrt(2), for every step count.
    qwalk::WalkState plus =
        qwalk::WalkState::point(0, 101, Complex(s, 0.0), Complex(s, 0.0));
    for (std::int64_t n = 1; n <= 100; ++n) {
        plus.step(coin);
        const qwalk::Distribution d = plus.distribution();
        for (std::int64_t k = 1; k <= n; ++k) {
            CHECK(std::abs(d.at(k) - d.at(-k)) < 1e-12);
        }
    }
}

TEST_CASE("invalid pulses are rejected") {
    RfPulse p;
    p.rabi_frequency = 0.0;
    CHECK_THROWS_AS(p.validate(), qwalk::InvalidArgumentError);
    RfPulse q = resonant(1.0, -1.0);
    CHECK_THROWS_AS(q.validate(), qwalk::InvalidArgumentError);
}
