#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk::cli {

/// Bad command line or config file input; mapped to exit code 2.
class ConfigError : public qwalk::Error {
public:
    using qwalk::Error::Error;
};

/// Flat key = value store.  Values of physical quantities must carry a unit
/// suffix ("10 um", "0.5ms", "6.283e3 rad/s"); unitless physical fields are
/// rejected.  '#' starts a comment, blank lines are skipped.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);

    /// Later set() wins (flag overrides).
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    // Physical quantities (unit suffix required).
    double time_s(const std::string& key) const;
    double length_m(const std::string& key) const;
    double angular_frequency(const std::string& key) const; // rad/s; Hz et al. are converted by 2 pi
    double angle_rad(const std::string& key) const;
    double wavenumber(const std::string& key) const;        // 1/m
    double mass_kg(const std::string& key) const;

    // Dimensionless values (no unit allowed).
    double number(const std::string& key) const;
    std::int64_t count(const std::string& key) const;
    std::string str(const std::string& key) const;
    std::vector<double> number_list(const std::string& key) const;

    // Defaulted variants.
    double time_s(const std::string& key, double fallback) const;
    double length_m(const std::string& key, double fallback) const;
    double angular_frequency(const std::string& key, double fallback) const;
    double angle_rad(const std::string& key, double fallback) const;
    double number(const std::string& key, double fallback) const;
    std::int64_t count(const std::string& key, std::int64_t fallback) const;
    std::string str(const std::string& key, const std::string& fallback) const;

private:
    const std::string& raw(const std::string& key) const;

    std::map<std::string, std::string> values_;
};

} // namespace qwalk::cli
