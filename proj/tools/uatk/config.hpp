#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uatk/activation.hpp"
#include "uatk/grid.hpp"
#include "uatk/rbf.hpp"

namespace uatk::cli {

using nlohmann::json;

// Invalid or unknown configuration. Maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads fields of one JSON object and remembers which keys were used, so that
// leftovers can be rejected as unknown.
class Fields {
public:
    Fields(const json& j, std::string path);

    bool has(const std::string& key) const;
    const json& at(const std::string& key);
    const json* find(const std::string& key);

    double number(const std::string& key);
    double number_or(const std::string& key, double fallback);
    std::int64_t integer(const std::string& key);
    std::int64_t integer_or(const std::string& key, std::int64_t fallback);
    std::string string(const std::string& key);
    std::string string_or(const std::string& key, const std::string& fallback);
    std::vector<double> numbers(const std::string& key);
    std::vector<std::int64_t> integers(const std::string& key);

    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    // Throws on any key that was never read.
    void finish() const;

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

// Applies "a.b.c=value" to j. The value is parsed as JSON when possible,
// otherwise taken as a string.
void apply_override(json& j, const std::string& assignment);

// A scalar target on the real line or a box.
struct TargetSpec {
    std::string description;
    std::function<double(std::span<const double>)> f;
    std::function<double(double)> f1;  // 1-D view
};

// Parses "sin", {"builtin": "sin"}, {"polynomial": [...]}, {"trig": {"a": [...], "b": [...]}}
// or {"activation": {...}}.
TargetSpec parse_target(const json& j, const std::string& path);

Activation parse_activation(const json& j, const std::string& path);
RbfKernel parse_kernel(const json& j, const std::string& path);
// "sup" or a number p >= 1.
Norm parse_norm(const json& j, const std::string& path);
// [lo, hi] or {"lo": [...], "hi": [...]}
Box parse_box(const json& j, const std::string& path);

} // namespace uatk::cli
