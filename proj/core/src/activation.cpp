#include "uatk/activation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "uatk/errors.hpp"

namespace uatk {

std::string_view to_string(ActivationKind kind)
{
    switch (kind) {
    case ActivationKind::heaviside: return "heaviside";
    case ActivationKind::logistic: return "logistic";
    case ActivationKind::piecewise_cosine_squashing: return "piecewise-cosine-squashing";
    case ActivationKind::exponential: return "exponential";
    case ActivationKind::custom_table: return "custom-table";
    }
    return "unknown";
}

ActivationKind activation_kind_from_string(std::string_view name)
{
    for (auto kind : {ActivationKind::heaviside, ActivationKind::logistic,
                      ActivationKind::piecewise_cosine_squashing, ActivationKind::exponential,
                      ActivationKind::custom_table}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InputError("unknown activation kind '" + std::string(name) + "'");
}

Activation::Activation(ActivationKind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params))
{
    if (kind_ == ActivationKind::custom_table) {
        if (params_.size() < 4 || params_.size() % 2 != 0) {
            throw InputError("custom-table activation needs at least two (x, y) pairs");
        }
        for (std::size_t i = 2; i < params_.size(); i += 2) {
            if (!(params_[i] > params_[i - 2])) {
                throw InputError("custom-table abscissae must be strictly increasing");
            }
        }
        for (double v : params_) {
            if (!std::isfinite(v)) {
                throw InputError("custom-table entries must be finite");
            }
        }
    } else if (!params_.empty()) {
        throw InputError("activation '" + std::string(to_string(kind_)) + "' takes no parameters");
    }
}

Activation Activation::table(std::vector<double> xs, std::vector<double> ys)
{
    if (xs.size() != ys.size()) {
        throw InputError("custom-table: abscissa and value counts differ");
    }
    std::vector<double> params;
    params.reserve(2 * xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        params.push_back(xs[i]);
        params.push_back(ys[i]);
    }
    return Activation(ActivationKind::custom_table, std::move(params));
}

namespace {

double eval_table(const std::vector<double>& p, double t)
{
    const std::size_t count = p.size() / 2;
    if (t <= p[0]) {
        return p[1];
    }
    if (t >= p[2 * (count - 1)]) {
        return p[2 * count - 1];
    }
    // First abscissa strictly greater than t.
    std::size_t lo = 0;
    std::size_t hi = count - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (p[2 * mid] <= t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double x0 = p[2 * lo], y0 = p[2 * lo + 1];
    const double x1 = p[2 * hi], y1 = p[2 * hi + 1];
    const double s = (t - x0) / (x1 - x0);
    return y0 + s * (y1 - y0);
}

} // namespace

double Activation::operator()(double t) const
{
    switch (kind_) {
    case ActivationKind::heaviside:
        return t >= 0.0 ? 1.0 : 0.0;
    case ActivationKind::logistic:
        if (t >= 0.0) {
            return 1.0 / (1.0 + std::exp(-t));
        } else {
            const double e = std::exp(t);
            return e / (1.0 + e);
        }
    case ActivationKind::piecewise_cosine_squashing:
        if (t <= -std::numbers::pi / 2) {
            return 0.0;
        }
        return t >= 0.0 ? 1.0 : std::cos(t);
    case ActivationKind::exponential:
        return std::exp(t);
    case ActivationKind::custom_table:
        return eval_table(params_, t);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool Activation::is_squashing() const
{
    switch (kind_) {
    case ActivationKind::heaviside:
    case ActivationKind::logistic:
    case ActivationKind::piecewise_cosine_squashing:
        return true;
    case ActivationKind::exponential:
        return false;
    case ActivationKind::custom_table: {
        for (std::size_t i = 3; i < params_.size(); i += 2) {
            if (params_[i] < params_[i - 2]) {
                return false;
            }
        }
        return params_[1] == 0.0 && params_.back() == 1.0;
    }
    }
    return false;
}

bool Activation::is_continuous() const
{
    return kind_ != ActivationKind::heaviside;
}

bool Activation::is_smooth_nonpolynomial() const
{
    return kind_ == ActivationKind::logistic || kind_ == ActivationKind::exponential;
}

double activation_derivative(const Activation& psi, int n, double t, double* error_estimate)
{
    if (n < 0) {
        throw InputError("derivative order must be nonnegative");
    }
    if (n == 0) {
        if (error_estimate) {
            *error_estimate = 0.0;
        }
        return psi(t);
    }

    // Symmetric n-th difference quotient: the error expands in even powers of
    // the step, so each Richardson column removes one power of 4.
    auto quotient = [&](double step) {
        double sum = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= n; ++i) {
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            sum += sign * binom * psi(t + (0.5 * n - i) * step);
            binom = binom * (n - i) / (i + 1);
        }
        return sum / std::pow(step, n);
    };

    constexpr int levels = 10;
    double tableau[levels][levels];
    double step = 0.4;
    double best = quotient(step);
    double best_err = std::numeric_limits<double>::infinity();
    tableau[0][0] = best;
    for (int k = 1; k < levels; ++k) {
        step *= 0.5;
        tableau[k][0] = quotient(step);
        double factor = 1.0;
        for (int j = 1; j <= k; ++j) {
            factor *= 4.0;
            tableau[k][j] = tableau[k][j - 1] + (tableau[k][j - 1] - tableau[k - 1][j - 1]) / (factor - 1.0);
            const double err = std::max(std::abs(tableau[k][j] - tableau[k][j - 1]),
                                        std::abs(tableau[k][j] - tableau[k - 1][j - 1]));
            if (err <= best_err) {
                best_err = err;
                best = tableau[k][j];
            }
        }
        // Roundoff has taken over once the diagonal stops improving.
        if (std::abs(tableau[k][k] - tableau[k - 1][k - 1]) >= 2.0 * best_err) {
            break;
        }
    }
    if (error_estimate) {
        *error_estimate = best_err;
    }
    return best;
}

} // namespace uatk
