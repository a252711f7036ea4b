#include "qwalk/apparatus.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

void TrapConfig::validate() const {
    if (!(wavelength > 0.0) || !(beam_waist_w0 > 0.0) ||
        !(usable_half_range_z > 0.0) || !(step_length > 0.0)) {
        throw InvalidArgumentError("trap parameters must all be positive");
    }
    const double zr = rayleigh_range(wavelength, beam_waist_w0);
    if (usable_half_range_z > zr * (1.0 + 1e-12)) {
        throw InvalidArgumentError(
            "usable half range exceeds the Rayleigh range of the trapping beam");
    }
}

void TimingBudget::validate() const {
    if (kick_time < 0.0 || coin_pulse_time < 0.0 || bitflip_pulse_time < 0.0 ||
        translation_time < 0.0) {
        throw InvalidArgumentError("timing budget entries must be >= 0");
    }
}

double rayleigh_range(double wavelength, double beam_waist_w0) {
    if (!(wavelength > 0.0) || !(beam_waist_w0 > 0.0)) {
        throw InvalidArgumentError("wavelength and beam waist must be > 0");
    }
    return M_PI * beam_waist_w0 * beam_waist_w0 / wavelength;
}

std::int64_t max_steps(const TrapConfig& trap) {
    trap.validate();
    const double ratio = trap.usable_half_range_z / trap.step_length;
    // One-ulp guard so exact multiples are not pushed below the floor.
    return static_cast<std::int64_t>(std::floor(ratio * (1.0 + 1e-12)));
}

TotalTime total_time(const TimingBudget& budget, std::int64_t n, TimingMode mode) {
    budget.validate();
    if (n < 0) {
        throw InvalidArgumentError("step count must be >= 0");
    }
    const double nd = static_cast<double>(n);
    TotalTime out;
    out.mode = mode;
    if (mode == TimingMode::PerStepSum) {
        out.value = nd * (budget.kick_time + budget.coin_pulse_time +
                          budget.translation_time + budget.bitflip_pulse_time);
        out.units_consistent = true;
        out.note = "T = n (t + tau + t_move + tau_bf)";
    } else {
        // Verbatim transcription: T = nt + (n tau - 1) + n + n t_move
        // + (n tau_bf - 1).  Kept for traceability; the bare n and the -1
        // terms mix units, so the value is not a physical duration.
        out.value = nd * budget.kick_time + (nd * budget.coin_pulse_time - 1.0) + nd +
                    nd * budget.translation_time + (nd * budget.bitflip_pulse_time - 1.0);
        out.units_consistent = false;
        out.note = "literal transcription mode; mixes seconds with unitless terms";
    }
    return out;
}

MeasurementRecord sample_measurement(const Distribution& d, std::int64_t trials,
                                     std::uint64_t seed) {
    if (trials < 1) {
        throw InvalidArgumentError("trials must be >= 1");
    }
    const std::size_t n_bins = d.probabilities.size();
    if (n_bins == 0) {
        throw InvalidArgumentError("empty distribution");
    }

    std::vector<double> cdf(n_bins);
    double running = 0.0;
    for (std::size_t i = 0; i < n_bins; ++i) {
        const double p = d.probabilities[i];
        if (p < 0.0) {
            throw InvalidArgumentError("negative probability in distribution");
        }
        running += p;
        cdf[i] = running;
    }
    if (running <= 0.0) {
        throw InvalidArgumentError("distribution sums to zero");
    }
    for (auto& c : cdf) {
        c /= running;
    }
    // Last occupied bin absorbs draws past the rounded total.
    std::size_t last_occupied = 0;
    for (std::size_t i = 0; i < n_bins; ++i) {
        if (d.probabilities[i] > 0.0) {
            last_occupied = i;
        }
    }

    MeasurementRecord record;
    record.trials = trials;
    record.seed = seed;
    record.origin = d.origin;
    record.half_width = d.half_width();
    record.outcomes.resize(static_cast<std::size_t>(trials));
    const std::uint64_t key = derive_stream(seed, 0);
    for (std::int64_t t = 0; t < trials; ++t) {
        const double u = to_unit_interval(counter_hash(key, static_cast<std::uint64_t>(t)));
        // Smallest bin with cdf > u; equal adjacent cdf values (zero
        // probability) are skipped by the strict inequality.
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t bin = (it == cdf.end()) ? last_occupied
                                            : static_cast<std::size_t>(it - cdf.begin());
        if (bin > last_occupied) {
            bin = last_occupied;
        }
        record.outcomes[static_cast<std::size_t>(t)] = d.site_at(bin);
    }
    return record;
}

Distribution estimate_distribution(const MeasurementRecord& record) {
    if (record.trials < 1 || record.outcomes.empty()) {
        throw InvalidArgumentError("record holds no outcomes");
    }
    Distribution d;
    d.origin = record.origin;
    d.probabilities.assign(static_cast<std::size_t>(2 * record.half_width + 1), 0.0);
    const std::int64_t lo = record.origin - record.half_width;
    const std::int64_t hi = record.origin + record.half_width;
    for (const std::int64_t site : record.outcomes) {
        if (site < lo || site > hi) {
            throw InvalidArgumentError("record outcome outside its stated lattice");
        }
        d.probabilities[static_cast<std::size_t>(site - lo)] += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(record.trials);
    for (auto& p : d.probabilities) {
        p *= inv;
    }
    return d;
}

MeasurementRecord merge_records(const MeasurementRecord& a, const MeasurementRecord& b) {
    if (a.origin != b.origin || a.half_width != b.half_width) {
        throw InvalidArgumentError("records cover different lattices");
    }
    MeasurementRecord merged = a;
    merged.trials += b.trials;
    merged.outcomes.insert(merged.outcomes.end(), b.outcomes.begin(), b.outcomes.end());
    return merged;
}

PlanReport plan_experiment(const TrapConfig& trap, const TimingBudget& budget,
                           std::int64_t n) {
    trap.validate();
    PlanReport report;
    report.steps = n;
    report.max_steps = max_steps(trap);
    report.steps_ok = n <= report.max_steps;
    report.walk_span = static_cast<double>(n) * trap.step_length;
    report.usable_half_range = trap.usable_half_range_z;
    report.span_ok = report.walk_span <= trap.usable_half_range_z * (1.0 + 1e-12);
    report.time = total_time(budget, n, TimingMode::PerStepSum);
    if (!report.steps_ok) {
        report.failures.push_back("steps exceed floor(Z / l)");
    }
    if (!report.span_ok) {
        report.failures.push_back("walk span n*l exceeds usable half range Z");
    }
    report.feasible = report.failures.empty();
    return report;
}

} // namespace qwalk
