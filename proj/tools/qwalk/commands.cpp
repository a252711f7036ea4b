#include "qwalk/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qwalk/apparatus.hpp"
#include "qwalk/cat_state.hpp"
#include "qwalk/open_walk.hpp"
#include "qwalk/pulse.hpp"
#include "qwalk/raman.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk::cli {

namespace {

using nlohmann::json;

CoinOperator coin_from_config(const Config& config,
                              const std::string& default_name = "hadamard") {
    const std::string name = config.str("coin", default_name);
    if (name == "hadamard") {
        return CoinOperator::hadamard();
    }
    if (name == "identity") {
        return CoinOperator::identity();
    }
    if (name == "rf-pi-2") {
        const double omega = config.angular_frequency("rabi_frequency", 2.0 * M_PI * 1e3);
        return rf_coin_matrix(design_pulse(PulseKind::HadamardRotation, omega));
    }
    if (name == "custom") {
        const auto v = config.number_list("coin_entries");
        if (v.size() != 8) {
            throw ConfigError("coin_entries needs 8 numbers: re im, row-major");
        }
        Eigen::Matrix2cd m;
        m << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]),
            Complex(v[6], v[7]);
        return CoinOperator(m);
    }
    throw ConfigError("unknown coin '" + name + "'");
}

std::pair<Complex, Complex> initial_coin_amps(const Config& config) {
    const std::string name = config.str("initial_coin", "zero");
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "zero") return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    if (name == "one") return {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    if (name == "symmetric") return {Complex(s, 0.0), Complex(0.0, s)};
    if (name == "plus") return {Complex(s, 0.0), Complex(s, 0.0)};
    if (name == "custom") {
        const auto v = config.number_list("initial_amps");
        if (v.size() != 4) {
            throw ConfigError("initial_amps needs 4 numbers: re0 im0 re1 im1");
        }
        return {Complex(v[0], v[1]), Complex(v[2], v[3])};
    }
    throw ConfigError("unknown initial_coin '" + name + "'");
}

WalkState initial_walk_state(const Config& config, std::int64_t steps,
                             double step_length) {
    const std::int64_t origin = config.count("origin", 0);
    const auto [c0, c1] = initial_coin_amps(config);
    const double sigma = config.number("envelope_sigma", 0.0);
    if (sigma > 0.0) {
        const std::int64_t radius =
            config.count("envelope_radius",
                         static_cast<std::int64_t>(std::ceil(7.0 * sigma)));
        const std::int64_t half_width =
            config.count("half_width", steps + radius);
        return WalkState::gaussian(origin, half_width, sigma, radius, c0, c1,
                                   step_length);
    }
    const std::int64_t half_width = config.count("half_width", steps);
    return WalkState::point(origin, half_width, c0, c1, step_length);
}

json moments_json(const Distribution& d, double step_length) {
    const Moments m = moments(d);
    const auto peaks = peak_sites(d);
    json peak_list = json::array();
    for (const std::int64_t site : peaks) {
        peak_list.push_back({{"site", site},
                             {"position_m", static_cast<double>(site) * step_length}});
    }
    return json{{"mean_sites", m.mean},
                {"variance_sites", m.variance},
                {"peaks", peak_list}};
}

RamanConfig raman_from_config(const Config& config) {
    RamanConfig rc;
    rc.coupling_v1 = config.angular_frequency("v1");
    rc.coupling_v2 = config.angular_frequency("v2");
    rc.detuning1 = config.angular_frequency("delta1");
    rc.detuning2 = config.angular_frequency("delta2");
    rc.phase1 = config.angle_rad("phi1", 0.0);
    rc.phase2 = config.angle_rad("phi2", 0.0);
    rc.wave_number_k1 = config.has("k1") ? config.wavenumber("k1") : 0.0;
    rc.wave_number_k2 = config.has("k2") ? config.wavenumber("k2") : 0.0;
    rc.atom_mass = config.has("atom_mass") ? config.mass_kg("atom_mass") : 0.0;
    rc.step_length = config.length_m("step_length", 0.0);
    rc.validate();
    return rc;
}

TrapConfig trap_from_config(const Config& config) {
    TrapConfig trap;
    trap.wavelength = config.length_m("wavelength");
    trap.beam_waist_w0 = config.length_m("beam_waist");
    trap.usable_half_range_z = config.length_m("usable_half_range");
    trap.step_length = config.length_m("step_length");
    trap.validate();
    return trap;
}

json plan_json(const PlanReport& report) {
    return json{{"steps", report.steps},
                {"max_steps", report.max_steps},
                {"steps_ok", report.steps_ok},
                {"walk_span_m", report.walk_span},
                {"usable_half_range_m", report.usable_half_range},
                {"span_ok", report.span_ok},
                {"total_time_s", report.time.value},
                {"feasible", report.feasible},
                {"failures", report.failures}};
}

} // namespace

int cmd_walk(const GlobalOptions& opts) {
    const Config& config = opts.config;
    const std::int64_t steps = config.count("steps");
    if (steps < 0) {
        throw ConfigError("steps must be >= 0");
    }
    const double step_length = config.length_m("step_length", 10e-6);
    const CoinOperator coin = coin_from_config(config);
    WalkState state = initial_walk_state(config, steps, step_length);
    state.evolve(steps, coin);
    const Distribution d = state.distribution();

    json envelope{{"schema_version", kSchemaVersion},
                  {"command", "walk"},
                  {"steps", steps},
                  {"coin", config.str("coin", "hadamard")},
                  {"step_length_m", step_length},
                  {"seed", opts.seed}};
    envelope.update(moments_json(d, step_length));

    OutputSink sink(opts.out_base, opts.format);
    std::ostringstream csv;
    write_distribution_csv(csv, d, step_length);
    sink.emit_csv("", csv.str(), envelope);
    sink.emit_json(envelope);
    return 0;
}

int cmd_variance_scan(const GlobalOptions& opts) {
    const Config& config = opts.config;
    const std::int64_t n_from = config.count("n_from", 20);
    const std::int64_t n_to = config.count("n_to", 200);
    const std::int64_t n_step = config.count("n_step", 10);
    if (n_from < 0 || n_to < n_from || n_step < 1) {
        throw ConfigError("need 0 <= n_from <= n_to and n_step >= 1");
    }
    std::vector<std::int64_t> ns;
    for (std::int64_t n = n_from; n <= n_to; n += n_step) {
        ns.push_back(n);
    }
    if (ns.size() < 2) {
        throw ConfigError("variance scan needs at least two step counts to fit a slope");
    }

    const double step_length = config.length_m("step_length", 10e-6);
    const CoinOperator coin = coin_from_config(config);
    WalkState state = initial_walk_state(config, n_to, step_length);
    const auto quantum = variance_scan(std::move(state), coin, ns);

    std::vector<std::pair<std::int64_t, double>> classical;
    classical.reserve(ns.size());
    for (const std::int64_t n : ns) {
        classical.emplace_back(n, moments(classical_walk(n)).variance);
    }

    const double quantum_exponent = loglog_slope(quantum);
    const double classical_exponent = loglog_slope(classical);

    std::ostringstream csv;
    csv << "n,variance_quantum,variance_classical\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
        csv << ns[i] << ',' << format_double(quantum[i].second) << ','
            << format_double(classical[i].second) << '\n';
    }

    json envelope{{"schema_version", kSchemaVersion},
                  {"command", "variance-scan"},
                  {"n_from", n_from},
                  {"n_to", n_to},
                  {"n_step", n_step},
                  {"coin", config.str("coin", "hadamard")},
                  {"exponent_quantum", quantum_exponent},
                  {"exponent_classical", classical_exponent}};

    OutputSink sink(opts.out_base, opts.format);
    sink.emit_csv("", csv.str(), envelope);
    sink.emit_json(envelope);
    return 0;
}

int cmd_pulse_rf(const GlobalOptions& opts) {
    const Config& config = opts.config;
    RfPulse pulse;
    std::string kind = config.str("kind", "");
    if (!kind.empty()) {
        const double omega = config.angular_frequency("rabi_frequency");
        if (kind == "hadamard-rotation") {
            pulse = design_pulse(PulseKind::HadamardRotation, omega);
        } else if (kind == "pi-flip") {
            pulse = design_pulse(PulseKind::PiFlip, omega);
        } else {
            throw ConfigError("unknown pulse kind '" + kind + "'");
        }
    } else {
        pulse.rabi_frequency = config.angular_frequency("rabi_frequency");
        pulse.detuning = config.angular_frequency("detuning", 0.0);
        pulse.duration = config.time_s("duration");
    }
    pulse.validate();

    TwoLevelAmps start;
    if (config.has("initial_amps")) {
        const auto v = config.number_list("initial_amps");
        if (v.size() != 4) {
            throw ConfigError("initial_amps needs 4 numbers: re0 im0 re1 im1");
        }
        start = TwoLevelAmps{Complex(v[0], v[1]), Complex(v[2], v[3])};
        const double norm = start.norm_squared();
        if (std::abs(norm - 1.0) > 1e-9) {
            throw ConfigError("initial_amps must be normalized");
        }
    }

    const std::int64_t samples = config.count("samples", 101);
    if (samples < 2) {
        throw ConfigError("samples must be >= 2");
    }

    std::ostringstream csv;
    csv << "tau_s,pop0_closed,pop1_closed,pop0_rk4,pop1_rk4\n";
    double max_route_diff = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        RfPulse partial = pulse;
        partial.duration =
            pulse.duration * static_cast<double>(i) / static_cast<double>(samples - 1);
        const TwoLevelAmps closed = rf_evolve_closed(start, partial);
        const TwoLevelAmps rk4 = rf_evolve_rk4(start, partial);
        max_route_diff = std::max(
            max_route_diff, std::abs(closed.population1() - rk4.population1()));
        csv << format_double(partial.duration) << ',' << format_double(closed.population0())
            << ',' << format_double(closed.population1()) << ','
            << format_double(rk4.population0()) << ',' << format_double(rk4.population1())
            << '\n';
    }

    const TwoLevelAmps final = rf_evolve_closed(start, pulse);
    json envelope{{"schema_version", kSchemaVersion},
                  {"command", "pulse-rf"},
                  {"rabi_frequency_rad_s", pulse.rabi_frequency},
                  {"detuning_rad_s", pulse.detuning},
                  {"duration_s", pulse.duration},
                  {"population0", final.population0()},
                  {"population1", final.population1()},
                  {"max_route_difference", max_route_diff}};
    if (!kind.empty()) {
        envelope["kind"] = kind;
    }

    OutputSink sink(opts.out_base, opts.format);
    sink.emit_csv("", csv.str(), envelope);
    sink.emit_json(envelope);
    return 0;
}

int cmd_pulse_raman(const GlobalOptions& opts) {
    const Config& config = opts.config;
    const RamanConfig rc = raman_from_config(config);
    const double t_max = config.time_s("t_max");
    const KickCalibration cal = calibrate_kick(rc, t_max);

    json envelope{{"schema_version", kSchemaVersion},
                  {"command", "pulse-raman"},
                  {"t_kick_s", cal.t_kick},
                  {"fidelity", cal.fidelity},
                  {"max_e_population", cal.max_e_population},
                  {"boundary_max", cal.boundary_max}};

    if (rc.wave_number_k1 != rc.wave_number_k2 &&
        (rc.wave_number_k1 != 0.0 || rc.wave_number_k2 != 0.0)) {
        const double p_left = momentum_kick(rc, KickDirection::Left);
        const double p_right = momentum_kick(rc, KickDirection::Right);
        envelope["momentum_left_kg_m_s"] = p_left;
        envelope["momentum_right_kg_m_s"] = p_right;
        if (rc.atom_mass > 0.0 && rc.step_length > 0.0) {
            envelope["translation_time_s"] = translation_time(p_left, rc);
        }
    }

    OutputSink sink(opts.out_base, opts.format);
    if (sink.wants_csv()) {
        const Eigen::Matrix3cd h = raman_hamiltonian(rc, RamanBranch::A);
        const ThreeLevelState start = ThreeLevelState::bare(0);
        std::ostringstream csv;
        csv << "t_s,transfer_probability,e_population\n";
        const std::int64_t samples = config.count("samples", 1001);
        for (std::int64_t i = 1; i <= samples; ++i) {
            const double t = t_max * static_cast<double>(i) / static_cast<double>(samples);
            const ThreeLevelState evolved = raman_evolve(start, h, t);
            csv << format_double(t) << ',' << format_double(evolved.population(2)) << ','
                << format_double(evolved.population(1)) << '\n';
        }
        sink.emit_csv("", csv.str(), envelope);
    }
    sink.emit_json(envelope);
    return cal.boundary_max ? 4 : 0;
}

int cmd_plan(const GlobalOptions& opts) {
    const Config& config = opts.config;
    const TrapConfig trap = trap_from_config(config);
    TimingBudget budget;
    budget.kick_time = config.time_s("kick_time");
    budget.coin_pulse_time = config.time_s("coin_pulse_time");
    budget.bitflip_pulse_time = config.time_s("bitflip_pulse_time");
    budget.translation_time = config.time_s("translation_time");
    const std::int64_t steps = config.count("steps");

    PlanReport report = plan_experiment(trap, budget, steps);
    const std::string mode = config.str("mode", "per-step-sum");
    if (mode == "paper-literal") {
        report.time = total_time(budget, steps, TimingMode::PaperLiteral);
    } else if (mode != "per-step-sum") {
        throw ConfigError("unknown timing mode '" + mode + "'");
    }

    json envelope{{"schema_version", kSchemaVersion},
                  {"command", "plan"},
                  {"rayleigh_range_m", rayleigh_range(trap.wavelength, trap.beam_waist_w0)},
                  {"timing_mode", mode},
                  {"units_consistent", report.time.units_consistent},
                  {"timing_note", report.time.note}};
    envelope.update(plan_json(report));

    OutputSink sink(opts.out_base, opts.format);
    sink.emit_json(envelope);
    return report.feasible ? 0 : 4;
}

int cmd_experiment(const GlobalOptions& opts) {
    const Config& config = opts.config;
    const std::int64_t steps = config.count("steps");
    const std::int64_t trials = config.count("trials");
    if (steps < 0 || trials < 1) {
        throw ConfigError("need steps >= 0 and trials >= 1");
    }
    const double step_length = config.length_m("step_length");

    // Physical layer: calibrate the kick and design the rf pulses.
    const RamanConfig rc = raman_from_config(config);
    const double t_max = config.time_s("t_max");
    const KickCalibration cal = calibrate_kick(rc, t_max);
    const double omega = config.angular_frequency("rabi_frequency");
    const RfPulse coin_pulse = design_pulse(PulseKind::HadamardRotation, omega);
    const RfPulse bitflip_pulse = design_pulse(PulseKind::PiFlip, omega);
    const double p_left = momentum_kick(rc, KickDirection::Left);
    const double t_move = translation_time(p_left, rc);

    TimingBudget budget;
    budget.kick_time = cal.t_kick;
    budget.coin_pulse_time = coin_pulse.duration;
    budget.bitflip_pulse_time = bitflip_pulse.duration;
    budget.translation_time = t_move;

    const TrapConfig trap = trap_from_config(config);
    const PlanReport plan = plan_experiment(trap, budget, steps);

    // Pulse imperfection feeds the walk as coin dephasing: the kick misses
    // |1> with probability 1 - fidelity, which scrambles the coin-position
    // correlation of that step.
    NoiseModel noise;
    noise.coin_dephasing_prob = config.number("coin_dephasing_prob", 0.0);
    noise.position_measure_prob = config.number("position_measure_prob", 0.0);
    noise.coin_angle_error = config.angle_rad("coin_angle_error", 0.0);
    noise.survival_fraction = config.number("survival_fraction", 1.0);
    const double kick_infidelity = std::max(0.0, 1.0 - cal.fidelity);
    const double effective_dephasing =
        std::min(1.0, noise.coin_dephasing_prob + kick_infidelity);

    json envelope{
        {"schema_version", kSchemaVersion},
        {"command", "experiment"},
        {"steps", steps},
        {"trials", trials},
        {"seed", opts.seed},
        {"coin", config.str("coin", "rf-pi-2")},
        {"step_length_m", step_length},
        {"calibration",
         {{"t_kick_s", cal.t_kick},
          {"fidelity", cal.fidelity},
          {"max_e_population", cal.max_e_population},
          {"boundary_max", cal.boundary_max}}},
        {"momentum_left_kg_m_s", p_left},
        {"pulses",
         {{"coin_pulse_s", coin_pulse.duration},
          {"bitflip_pulse_s", bitflip_pulse.duration},
          {"translation_s", t_move}}},
        {"noise",
         {{"coin_dephasing_prob_config", noise.coin_dephasing_prob},
          {"kick_infidelity", kick_infidelity},
          {"coin_dephasing_prob_effective", effective_dephasing},
          {"mapping", "coin_dephasing_prob += 1 - kick_fidelity"},
          {"position_measure_prob", noise.position_measure_prob},
          {"coin_angle_error_rad", noise.coin_angle_error},
          {"survival_fraction", noise.survival_fraction}}},
        {"plan", plan_json(plan)},
        {"total_time_s", plan.time.value}};

    OutputSink sink(opts.out_base, opts.format);
    if (!plan.feasible) {
        // Gate before the density evolution: an infeasible step count can
        // demand an absurd density-matrix allocation.
        envelope["infeasible"] = true;
        sink.emit_json(envelope);
        return 4;
    }
    noise.coin_dephasing_prob = effective_dephasing;

    const CoinOperator coin = coin_from_config(config, "rf-pi-2");
    WalkState initial = initial_walk_state(config, steps, step_length);
    const OpenRunResult open = run_open(initial, steps, coin, noise);

    const MeasurementRecord record = sample_measurement(open.distribution, trials, opts.seed);
    const Distribution empirical = estimate_distribution(record);
    const double tv = total_variation(open.distribution, empirical);

    envelope["survival_multiplier"] = open.survival_multiplier;
    envelope["effective_trials"] =
        static_cast<double>(trials) * open.survival_multiplier;
    envelope["tv_distance"] = tv;

    std::ostringstream exact_csv;
    write_distribution_csv(exact_csv, open.distribution, step_length);
    sink.emit_csv("exact", exact_csv.str(), envelope);
    std::ostringstream empirical_csv;
    write_distribution_csv(empirical_csv, empirical, step_length);
    sink.emit_csv("empirical", empirical_csv.str(), envelope);
    sink.emit_json(envelope);
    return 0;
}

} // namespace qwalk::cli
