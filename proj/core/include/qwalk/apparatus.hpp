#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Dipole-trap geometry.  The usable half range must not exceed the
/// Rayleigh range of the trapping beam (checked by validate()).
struct TrapConfig {
    double wavelength = 0.0;        // m
    double beam_waist_w0 = 0.0;     // m
    double usable_half_range_z = 0.0; // m
    double step_length = 0.0;       // m

    void validate() const;
};

/// Per-step time accounting for one compensated walk step.
struct TimingBudget {
    double kick_time = 0.0;        // t: stimulated-Raman transition time, s
    double coin_pulse_time = 0.0;  // tau: Hadamard-rotation rf pulse, s
    double bitflip_pulse_time = 0.0; // tau_bf: compensatory pi pulse, s
    double translation_time = 0.0; // free flight over one step length, s

    void validate() const;
};

/// Outcomes of repeated single-shot position measurements.
struct MeasurementRecord {
    std::int64_t trials = 0;
    std::vector<std::int64_t> outcomes; // absolute lattice sites
    std::uint64_t seed = 0;
    std::int64_t origin = 0;     // lattice bounds the record was drawn on
    std::int64_t half_width = 0;
};

/// Z_R = pi w0^2 / lambda.
double rayleigh_range(double wavelength, double beam_waist_w0);

/// floor(Z / l): the walk light cone after n steps spans +- n l.
std::int64_t max_steps(const TrapConfig& trap);

enum class TimingMode {
    PerStepSum,  // T = n (t + tau + t_move + tau_bf)
    PaperLiteral // verbatim transcription mode; units are not consistent
};

struct TotalTime {
    double value = 0.0; // seconds in PerStepSum mode; mixed units otherwise
    TimingMode mode = TimingMode::PerStepSum;
    bool units_consistent = true;
    std::string note;
};

TotalTime total_time(const TimingBudget& budget, std::int64_t n,
                     TimingMode mode = TimingMode::PerStepSum);

/// `trials` independent categorical draws from d (microtrap collapse +
/// fluorescence readout per repetition).  Outcome t depends only on
/// (seed, t); zero-probability bins are never drawn.
MeasurementRecord sample_measurement(const Distribution& d, std::int64_t trials,
                                     std::uint64_t seed);

/// Empirical frequencies over the record's lattice.
Distribution estimate_distribution(const MeasurementRecord& record);

/// Concatenation of two records over the same lattice (counts add).
MeasurementRecord merge_records(const MeasurementRecord& a, const MeasurementRecord& b);

struct PlanReport {
    std::int64_t steps = 0;
    std::int64_t max_steps = 0;
    bool steps_ok = false;
    double walk_span = 0.0;        // n * l, m
    double usable_half_range = 0.0; // Z, m
    bool span_ok = false;
    TotalTime time;
    bool feasible = false;
    std::vector<std::string> failures; // names of violated constraints
};

/// Aggregated feasibility check: step budget, spatial span, total time.
PlanReport plan_experiment(const TrapConfig& trap, const TimingBudget& budget,
                           std::int64_t n);

} // namespace qwalk
