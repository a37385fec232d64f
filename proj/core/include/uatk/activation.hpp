#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uatk {

enum class ActivationKind {
    heaviside,
    logistic,
    piecewise_cosine_squashing,
    exponential,
    custom_table,
};

std::string_view to_string(ActivationKind kind);
ActivationKind activation_kind_from_string(std::string_view name);

// A scalar activation function. Immutable value type.
//
//  heaviside                    0 for t < 0, 1 for t >= 0 (indicator of [0, inf))
//  logistic                     1 / (1 + exp(-t))
//  piecewise_cosine_squashing   0 for t <= -pi/2, cos t on [-pi/2, 0], 1 for t >= 0
//  exponential                  exp(t)
//  custom_table                 piecewise-linear through (x_i, y_i), constant
//                               beyond the first/last abscissa
//
// custom_table parameters are interleaved: x_0, y_0, x_1, y_1, ... with
// strictly increasing x.
class Activation {
public:
    Activation() = default;
    explicit Activation(ActivationKind kind, std::vector<double> params = {});

    static Activation heaviside() { return Activation(ActivationKind::heaviside); }
    static Activation logistic() { return Activation(ActivationKind::logistic); }
    static Activation cosine_squashing() { return Activation(ActivationKind::piecewise_cosine_squashing); }
    static Activation exponential() { return Activation(ActivationKind::exponential); }
    static Activation table(std::vector<double> xs, std::vector<double> ys);

    double operator()(double t) const;

    ActivationKind kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }

    // Monotone nondecreasing with limits 0 and 1 (for custom tables: checked
    // on the table values).
    bool is_squashing() const;
    // Continuous everywhere.
    bool is_continuous() const;
    // C-infinity on an open interval and not a polynomial there.
    bool is_smooth_nonpolynomial() const;

    friend bool operator==(const Activation&, const Activation&) = default;

private:
    ActivationKind kind_ = ActivationKind::logistic;
    std::vector<double> params_;
};

// n-th derivative at t by central differences with Richardson extrapolation.
// Returns the extrapolated value; `error_estimate`, when given, receives the
// last tableau correction.
double activation_derivative(const Activation& psi, int n, double t,
                             double* error_estimate = nullptr);

} // namespace uatk
