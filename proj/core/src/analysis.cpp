#include "uatk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uatk/errors.hpp"
#include "uatk/metrics.hpp"

namespace uatk {

RateFit fit_rate(std::span<const double> n_values, std::span<const double> errors, bool drop_nonpositive)
{
    if (n_values.size() != errors.size()) {
        throw InputError("n values and errors differ in length");
    }
    RateFit fit;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (!(n_values[i] > 0.0)) {
            throw InputError("n values must be positive");
        }
        if (!(errors[i] > 0.0)) {
            if (drop_nonpositive) {
                continue;
            }
            throw InputError("nonpositive error at index " + std::to_string(i) + " (set drop_nonpositive to skip)");
        }
        fit.n_values.push_back(n_values[i]);
        fit.errors.push_back(errors[i]);
    }
    const std::size_t m = fit.n_values.size();
    if (m < 3) {
        throw InputError("rate fit needs at least 3 positive pairs");
    }

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += std::log(fit.n_values[i]);
        my += std::log(fit.errors[i]);
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = std::log(fit.n_values[i]) - mx;
        const double dy = std::log(fit.errors[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw InputError("rate fit needs at least two distinct n values");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

bool inequality_holds(double lhs, double rhs)
{
    return lhs <= rhs + 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0);
}

namespace {

void same_length(std::span<const double> a, std::span<const double> b, std::span<const double> w)
{
    if (a.size() != b.size() || a.size() != w.size()) {
        throw InputError("operands and weights differ in length");
    }
}

double lp(std::span<const double> v, std::span<const double> w, double p)
{
    return std::isinf(p) ? max_abs(v) : weighted_lp_norm(v, w, p);
}

InequalityReport report(std::string name, double lhs, double rhs)
{
    return InequalityReport{std::move(name), lhs, rhs, inequality_holds(lhs, rhs)};
}

} // namespace

InequalityReport check_clarkson(std::span<const double> f, std::span<const double> g, std::span<const double> w,
                                double p)
{
    same_length(f, g, w);
    if (!(p > 1.0) || std::isinf(p)) {
        throw InputError("Clarkson check needs p in (1, inf)");
    }
    const double a = std::min(p, p / (p - 1.0));
    std::vector<double> sum(f.size());
    std::vector<double> diff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        sum[i] = f[i] + g[i];
        diff[i] = f[i] - g[i];
    }
    const double lhs = std::pow(lp(sum, w, p), a) + std::pow(lp(diff, w, p), a);
    const double rhs = 2.0 * (std::pow(lp(f, w, p), a) + std::pow(lp(g, w, p), a));
    return report("clarkson", lhs, rhs);
}

InequalityReport check_holder(std::span<const double> f, std::span<const double> g, std::span<const double> w,
                              double p)
{
    same_length(f, g, w);
    if (!(p >= 1.0)) {
        throw InputError("Hoelder check needs p >= 1");
    }
    const double q = p == 1.0 ? std::numeric_limits<double>::infinity() : (std::isinf(p) ? 1.0 : p / (p - 1.0));
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        prod[i] = f[i] * g[i];
    }
    return report("holder", weighted_lp_norm(prod, w, 1.0), lp(f, w, p) * lp(g, w, q));
}

InequalityReport check_minkowski_integral(std::span<const double> F, std::span<const double> wx,
                                          std::span<const double> wy, double p)
{
    if (!(p >= 1.0) || std::isinf(p)) {
        throw InputError("integral Minkowski check needs finite p >= 1");
    }
    const std::size_t nx = wx.size();
    const std::size_t ny = wy.size();
    if (F.size() != nx * ny) {
        throw InputError("F must have wx.size() * wy.size() entries");
    }
    // Left side: inner integral over Y for each x.
    std::vector<double> inner(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            inner[i] += wy[j] * F[i * ny + j];
        }
    }
    const double lhs = weighted_lp_norm(inner, wx, p);

    double rhs = 0.0;
    std::vector<double> column(nx);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            column[i] = F[i * ny + j];
        }
        rhs += wy[j] * weighted_lp_norm(column, wx, p);
    }
    return report("minkowski-integral", lhs, rhs);
}

} // namespace uatk
