#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "qwalk/walk_state.hpp"

namespace qwalk::cli {

constexpr int kSchemaVersion = 1;

enum class OutputFormat { Csv, Json, Both };

OutputFormat parse_format(const std::string& text);

/// 17 significant digits, '.' decimal point, no locale dependence.
std::string format_double(double value);

/// Per-site CSV: position_index, physical_position_m, probability.
void write_distribution_csv(std::ostream& out, const qwalk::Distribution& d,
                            double step_length_m);

/// Destination for one command run.  With an --out base path, CSV and JSON
/// land in "<base><suffix>.csv" / "<base>.json"; without one, everything
/// goes to stdout in format order.
class OutputSink {
public:
    OutputSink(std::string base_path, OutputFormat format);

    bool wants_csv() const {
        return format_ == OutputFormat::Csv || format_ == OutputFormat::Both;
    }
    bool wants_json() const {
        return format_ == OutputFormat::Json || format_ == OutputFormat::Both;
    }

    /// suffix "" -> "<base>.csv", "exact" -> "<base>.exact.csv".
    void emit_csv(const std::string& suffix, const std::string& content,
                  nlohmann::json& envelope);
    void emit_json(const nlohmann::json& envelope);

private:
    std::string csv_path(const std::string& suffix) const;

    std::string base_;
    OutputFormat format_;
};

} // namespace qwalk::cli
