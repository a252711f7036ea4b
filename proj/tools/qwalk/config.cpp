#include "qwalk/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace qwalk::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

struct ParsedValue {
    double magnitude = 0.0;
    std::string unit; // empty if none
};

ParsedValue split_number_unit(const std::string& key, const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) {
        throw ConfigError("empty value for key '" + key + "'");
    }
    errno = 0;
    char* end = nullptr;
    const double magnitude = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || errno == ERANGE || !std::isfinite(magnitude)) {
        throw ConfigError("cannot parse a number from '" + text + "' for key '" + key + "'");
    }
    ParsedValue out;
    out.magnitude = magnitude;
    out.unit = trim(std::string(end));
    return out;
}

using UnitTable = std::vector<std::pair<std::string, double>>;

double convert(const std::string& key, const std::string& raw, const UnitTable& table,
               const std::string& dimension) {
    const ParsedValue v = split_number_unit(key, raw);
    if (v.unit.empty()) {
        throw ConfigError("key '" + key + "' is a " + dimension +
                          " and needs a unit suffix (e.g. '" + table.front().first + "')");
    }
    for (const auto& [token, factor] : table) {
        if (v.unit == token) {
            return v.magnitude * factor;
        }
    }
    throw ConfigError("unknown " + dimension + " unit '" + v.unit + "' for key '" + key + "'");
}

const UnitTable kTimeUnits{{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
const UnitTable kLengthUnits{{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
// Frequencies are angular throughout; cycle units are converted by 2 pi.
const UnitTable kAngularUnits{{"rad/s", 1.0},
                              {"Hz", kTwoPi},
                              {"kHz", kTwoPi * 1e3},
                              {"MHz", kTwoPi * 1e6},
                              {"GHz", kTwoPi * 1e9}};
const UnitTable kAngleUnits{{"rad", 1.0}};
const UnitTable kWavenumberUnits{
    {"1/m", 1.0}, {"rad/m", 1.0}, {"1/mm", 1e3}, {"1/um", 1e6}, {"1/nm", 1e9}};
const UnitTable kMassUnits{{"kg", 1.0}, {"u", 1.66053906660e-27}};

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    Config config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not of the form key = value");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " has an empty key or value");
        }
        config.values_[key] = value;
    }
    return config;
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = trim(value);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& Config::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("missing required key '" + key + "'");
    }
    return it->second;
}

double Config::time_s(const std::string& key) const {
    return convert(key, raw(key), kTimeUnits, "time");
}

double Config::length_m(const std::string& key) const {
    return convert(key, raw(key), kLengthUnits, "length");
}

double Config::angular_frequency(const std::string& key) const {
    return convert(key, raw(key), kAngularUnits, "angular frequency");
}

double Config::angle_rad(const std::string& key) const {
    return convert(key, raw(key), kAngleUnits, "angle");
}

double Config::wavenumber(const std::string& key) const {
    return convert(key, raw(key), kWavenumberUnits, "wave number");
}

double Config::mass_kg(const std::string& key) const {
    return convert(key, raw(key), kMassUnits, "mass");
}

double Config::number(const std::string& key) const {
    const ParsedValue v = split_number_unit(key, raw(key));
    if (!v.unit.empty()) {
        throw ConfigError("key '" + key + "' is dimensionless; found unit '" + v.unit + "'");
    }
    return v.magnitude;
}

std::int64_t Config::count(const std::string& key) const {
    const double v = number(key);
    const double rounded = std::nearbyint(v);
    if (std::abs(v - rounded) > 1e-9 || std::abs(v) > 9.0e15) {
        throw ConfigError("key '" + key + "' must be an integer");
    }
    return static_cast<std::int64_t>(rounded);
}

std::string Config::str(const std::string& key) const { return raw(key); }

std::vector<double> Config::number_list(const std::string& key) const {
    std::istringstream stream(raw(key));
    std::vector<double> out;
    std::string token;
    while (stream >> token) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
            throw ConfigError("key '" + key + "' must be a space-separated number list");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ConfigError("key '" + key + "' holds no numbers");
    }
    return out;
}

double Config::time_s(const std::string& key, double fallback) const {
    return has(key) ? time_s(key) : fallback;
}
double Config::length_m(const std::string& key, double fallback) const {
    return has(key) ? length_m(key) : fallback;
}
double Config::angular_frequency(const std::string& key, double fallback) const {
    return has(key) ? angular_frequency(key) : fallback;
}
double Config::angle_rad(const std::string& key, double fallback) const {
    return has(key) ? angle_rad(key) : fallback;
}
double Config::number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}
std::int64_t Config::count(const std::string& key, std::int64_t fallback) const {
    return has(key) ? count(key) : fallback;
}
std::string Config::str(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
}

} // namespace qwalk::cli
