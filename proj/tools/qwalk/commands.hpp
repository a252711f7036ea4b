#pragma once

#include <cstdint>
#include <string>

#include "qwalk/config.hpp"
#include "qwalk/output.hpp"

namespace qwalk::cli {

struct GlobalOptions {
    Config config;
    std::uint64_t seed = 0;
    std::string out_base; // empty: stdout
    OutputFormat format = OutputFormat::Both;
};

int cmd_walk(const GlobalOptions& opts);
int cmd_variance_scan(const GlobalOptions& opts);
int cmd_pulse_rf(const GlobalOptions& opts);
int cmd_pulse_raman(const GlobalOptions& opts);
int cmd_plan(const GlobalOptions& opts);
int cmd_experiment(const GlobalOptions& opts);

} // namespace qwalk::cli
