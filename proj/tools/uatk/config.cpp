#include "config.hpp"

#include <cmath>

#include "uatk/errors.hpp"
#include "uatk/serialize.hpp"

namespace uatk::cli {

Fields::Fields(const json& j, std::string path) : j_(j), path_(std::move(path))
{
    if (!j_.is_object()) {
        throw ConfigError((path_.empty() ? std::string("config") : path_) + " must be a JSON object");
    }
}

bool Fields::has(const std::string& key) const
{
    return j_.contains(key);
}

const json& Fields::at(const std::string& key)
{
    if (!j_.contains(key)) {
        throw ConfigError("missing required field '" + where(key) + "'");
    }
    used_.insert(key);
    return j_.at(key);
}

const json* Fields::find(const std::string& key)
{
    if (!j_.contains(key)) {
        return nullptr;
    }
    used_.insert(key);
    return &j_.at(key);
}

double Fields::number(const std::string& key)
{
    const json& v = at(key);
    if (!v.is_number()) {
        throw ConfigError("field '" + where(key) + "' must be a number");
    }
    return v.get<double>();
}

double Fields::number_or(const std::string& key, double fallback)
{
    return has(key) ? number(key) : fallback;
}

std::int64_t Fields::integer(const std::string& key)
{
    const json& v = at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("field '" + where(key) + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::int64_t Fields::integer_or(const std::string& key, std::int64_t fallback)
{
    return has(key) ? integer(key) : fallback;
}

std::string Fields::string(const std::string& key)
{
    const json& v = at(key);
    if (!v.is_string()) {
        throw ConfigError("field '" + where(key) + "' must be a string");
    }
    return v.get<std::string>();
}

std::string Fields::string_or(const std::string& key, const std::string& fallback)
{
    return has(key) ? string(key) : fallback;
}

std::vector<double> Fields::numbers(const std::string& key)
{
    const json& v = at(key);
    if (!v.is_array()) {
        throw ConfigError("field '" + where(key) + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ConfigError("field '" + where(key) + "' must be an array of numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::int64_t> Fields::integers(const std::string& key)
{
    const json& v = at(key);
    if (!v.is_array()) {
        throw ConfigError("field '" + where(key) + "' must be an array of integers");
    }
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) {
            throw ConfigError("field '" + where(key) + "' must be an array of integers");
        }
        out.push_back(e.get<std::int64_t>());
    }
    return out;
}

void Fields::finish() const
{
    for (const auto& [key, value] : j_.items()) {
        if (!used_.count(key)) {
            throw ConfigError("unknown field '" + where(key) + "'");
        }
    }
}

void apply_override(json& j, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set expects KEY=VALUE, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) {
        value = raw;
    }

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
            throw ConfigError("--set key '" + key + "' has an empty component");
        }
        if (!node->is_object()) {
            if (!node->is_null()) {
                throw ConfigError("--set key '" + key + "' descends into a non-object");
            }
            *node = json::object();
        }
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

namespace {

double product_of(std::span<const double> x, double (*g)(double))
{
    double v = 1.0;
    for (double t : x) {
        v *= g(t);
    }
    return v;
}

double ramp(double t) { return std::max(0.0, t); }
double clamp01(double t) { return std::min(std::max(t, 0.0), 1.0); }
double bump(double t) { return std::max(0.0, 1.0 - std::abs(t)); }
double abs_sin(double t) { return std::abs(std::sin(t)); }
double sine(double t) { return std::sin(t); }

TargetSpec builtin(const std::string& name, const std::string& path)
{
    double (*g)(double) = nullptr;
    if (name == "sin") {
        g = sine;
    } else if (name == "abs-sin") {
        g = abs_sin;
    } else if (name == "ramp") {
        g = ramp;
    } else if (name == "clamp") {
        g = clamp01;
    } else if (name == "bump") {
        g = bump;
    } else {
        throw ConfigError("unknown builtin target '" + name + "' at " + path +
                          " (expected sin, abs-sin, ramp, clamp or bump)");
    }
    return TargetSpec{name, [g](std::span<const double> x) { return product_of(x, g); }, g};
}

} // namespace

TargetSpec parse_target(const json& j, const std::string& path)
{
    if (j.is_string()) {
        if (j.get<std::string>().empty()) {
            throw ConfigError("target spec at " + path + " is empty");
        }
        return builtin(j.get<std::string>(), path);
    }
    if (!j.is_object() || j.empty()) {
        throw ConfigError("target spec at " + path + " is empty");
    }
    Fields fields(j, path);
    if (j.size() != 1) {
        throw ConfigError("target spec at " + path + " must have exactly one of builtin, polynomial, trig, activation");
    }
    if (const json* b = fields.find("builtin")) {
        if (!b->is_string()) {
            throw ConfigError(path + ".builtin must be a string");
        }
        return builtin(b->get<std::string>(), path + ".builtin");
    }
    if (fields.has("polynomial")) {
        const auto coeffs = fields.numbers("polynomial");
        if (coeffs.empty()) {
            throw ConfigError("polynomial target at " + path + " has no coefficients");
        }
        auto p = [coeffs](double x) {
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                acc = acc * x + *it;
            }
            return acc;
        };
        return TargetSpec{"polynomial", [p](std::span<const double> x) { return p(x[0]); }, p};
    }
    if (const json* t = fields.find("trig")) {
        Fields tf(*t, path + ".trig");
        const auto a = tf.numbers("a");
        const auto b = tf.has("b") ? tf.numbers("b") : std::vector<double>{};
        tf.finish();
        if (a.empty()) {
            throw ConfigError("trig target at " + path + " needs at least a_0");
        }
        auto g = [a, b](double x) {
            double acc = a[0];
            for (std::size_t k = 1; k < a.size(); ++k) {
                acc += a[k] * std::cos(static_cast<double>(k) * x);
            }
            for (std::size_t k = 1; k < b.size(); ++k) {
                acc += b[k] * std::sin(static_cast<double>(k) * x);
            }
            return acc;
        };
        return TargetSpec{"trig", [g](std::span<const double> x) { return g(x[0]); }, g};
    }
    if (const json* act = fields.find("activation")) {
        const Activation psi = parse_activation(*act, path + ".activation");
        fields.finish();
        auto g = [psi](double x) { return psi(x); };
        return TargetSpec{std::string(to_string(psi.kind())), [g](std::span<const double> x) { return g(x[0]); },
                          g};
    }
    fields.finish();
    throw ConfigError("target spec at " + path + " is empty");
}

Activation parse_activation(const json& j, const std::string& path)
{
    try {
        if (j.is_string()) {
            return Activation(activation_kind_from_string(j.get<std::string>()));
        }
        Fields f(j, path);
        f.string("kind");
        if (f.has("params")) {
            f.numbers("params");
        }
        f.finish();
        return activation_from_json(j);
    } catch (const InputError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

RbfKernel parse_kernel(const json& j, const std::string& path)
{
    try {
        if (j.is_string()) {
            return RbfKernel(rbf_kernel_kind_from_string(j.get<std::string>()));
        }
        Fields f(j, path);
        f.string("kind");
        if (f.has("radii")) {
            f.numbers("radii");
        }
        if (f.has("values")) {
            f.numbers("values");
        }
        f.finish();
        return rbf_kernel_from_json(j);
    } catch (const InputError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Norm parse_norm(const json& j, const std::string& path)
{
    if (j.is_string() && j.get<std::string>() == "sup") {
        return Norm::sup();
    }
    if (j.is_number()) {
        const double p = j.get<double>();
        if (!(p >= 1.0) || !std::isfinite(p)) {
            throw ConfigError(path + " must be \"sup\" or a finite number >= 1");
        }
        return Norm::lp(p);
    }
    throw ConfigError(path + " must be \"sup\" or a number >= 1");
}

Box parse_box(const json& j, const std::string& path)
{
    Box box;
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        box = Box::interval(j[0].get<double>(), j[1].get<double>());
    } else if (j.is_object()) {
        Fields f(j, path);
        box.lo = f.numbers("lo");
        box.hi = f.numbers("hi");
        f.finish();
    } else {
        throw ConfigError(path + " must be [lo, hi] or {\"lo\": [...], \"hi\": [...]}");
    }
    if (box.lo.empty() || box.lo.size() != box.hi.size()) {
        throw ConfigError(path + " needs matching, nonempty lo and hi");
    }
    for (std::size_t k = 0; k < box.dim(); ++k) {
        if (!(box.hi[k] > box.lo[k])) {
            throw ConfigError(path + " axis " + std::to_string(k) + " is empty");
        }
    }
    return box;
}

} // namespace uatk::cli
