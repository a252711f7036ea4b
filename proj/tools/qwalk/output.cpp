#include "qwalk/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "qwalk/config.hpp"

namespace qwalk::cli {

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    if (text == "both") return OutputFormat::Both;
    throw ConfigError("unknown format '" + text + "' (expected csv, json or both)");
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_distribution_csv(std::ostream& out, const qwalk::Distribution& d,
                            double step_length_m) {
    out << "position_index,physical_position_m,probability\n";
    for (std::size_t i = 0; i < d.probabilities.size(); ++i) {
        const std::int64_t site = d.site_at(i);
        out << site << ',' << format_double(static_cast<double>(site) * step_length_m)
            << ',' << format_double(d.probabilities[i]) << '\n';
    }
}

OutputSink::OutputSink(std::string base_path, OutputFormat format)
    : base_(std::move(base_path)), format_(format) {}

std::string OutputSink::csv_path(const std::string& suffix) const {
    return suffix.empty() ? base_ + ".csv" : base_ + "." + suffix + ".csv";
}

void OutputSink::emit_csv(const std::string& suffix, const std::string& content,
                          nlohmann::json& envelope) {
    if (!wants_csv()) {
        return;
    }
    if (base_.empty()) {
        std::cout << content;
        return;
    }
    const std::string path = csv_path(suffix);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    out << content;
    envelope["files"][suffix.empty() ? "csv" : suffix] = path;
}

void OutputSink::emit_json(const nlohmann::json& envelope) {
    if (!wants_json()) {
        return;
    }
    if (base_.empty()) {
        std::cout << envelope.dump(2) << '\n';
        return;
    }
    const std::string path = base_ + ".json";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    out << envelope.dump(2) << '\n';
}

} // namespace qwalk::cli
