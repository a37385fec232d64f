#include "uatk/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uatk/errors.hpp"

namespace uatk {

namespace {

constexpr double kPi = std::numbers::pi;

// sup{x : F(x) <= level} for monotone nondecreasing F, which equals
// sup{x : F(x) = level} when F is continuous and exceeds the level somewhere.
double level_abscissa(const std::function<double(double)>& target, double level, double radius)
{
    double lo = -1.0;
    while (!(target(lo) <= level)) {
        lo *= 2.0;
        if (lo < -radius) {
            throw ConstructionError("target never falls to level " + std::to_string(level) +
                                    " within the search range");
        }
    }
    double hi = 1.0;
    while (!(target(hi) > level)) {
        hi *= 2.0;
        if (hi > radius) {
            throw ConstructionError("target never exceeds level " + std::to_string(level) +
                                    " within the search range (unreachable level)");
        }
    }
    if (lo >= hi) {
        lo = hi;
        while (!(target(lo) <= level)) {
            lo -= 1.0 + std::abs(lo);
        }
    }
    while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (target(mid) <= level) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

Term unit(double coeff, double weight, double bias, const Activation& psi)
{
    return Term{coeff, {weight}, bias, psi};
}

double binomial(int n, int k)
{
    double b = 1.0;
    for (int i = 0; i < k; ++i) {
        b = b * (n - i) / (i + 1);
    }
    return b;
}

} // namespace

StepApproxPlan plan_squashing_step(const Activation& psi, const std::function<double(double)>& target,
                                   double eps, double search_radius)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InputError("step approximation tolerance must lie in (0, 1)");
    }
    if (!psi.is_squashing()) {
        throw InputError("step approximation needs a squashing activation");
    }

    StepApproxPlan plan;
    plan.levels = static_cast<int>(std::floor(2.0 / eps)) + 1;
    while (!(1.0 / plan.levels < eps / 2.0)) {
        ++plan.levels;
    }
    const int Q = plan.levels;
    plan.beta = 1.0 / Q;

    double M = 1.0;
    while (!(psi(-M) < 1.0 / Q && psi(M) > 1.0 - 1.0 / Q)) {
        M *= 2.0;
        if (M > 1e18) {
            throw ConstructionError("activation does not saturate to within 1/Q");
        }
    }
    plan.saturation = M;

    plan.abscissae.assign(Q + 1, 0.0);
    for (int j = 1; j < Q; ++j) {
        plan.abscissae[j] = level_abscissa(target, static_cast<double>(j) / Q, search_radius);
    }
    plan.abscissae[Q] = level_abscissa(target, 1.0 - 1.0 / (2.0 * Q), search_radius);
    plan.abscissae[0] = plan.abscissae[1] - (plan.abscissae[2] - plan.abscissae[1]);

    for (int j = 0; j < Q; ++j) {
        if (!(plan.abscissae[j] < plan.abscissae[j + 1])) {
            throw ConstructionError("level abscissae are not increasing; is the target monotone?");
        }
    }
    return plan;
}

ShallowNet realize_step_plan(const Activation& psi, const StepApproxPlan& plan)
{
    const double M = plan.saturation;
    std::vector<Term> terms;
    terms.reserve(plan.levels);
    for (int j = 0; j < plan.levels; ++j) {
        const double r = plan.abscissae[j];
        const double s = plan.abscissae[j + 1];
        const double w = 2.0 * M / (s - r);
        terms.push_back(unit(plan.beta, w, -M - w * r, psi));
    }
    return ShallowNet(1, std::move(terms));
}

ShallowNet approximate_squashing_step(const Activation& psi, const std::function<double(double)>& target,
                                      double eps)
{
    return realize_step_plan(psi, plan_squashing_step(psi, target, eps));
}

ShallowNet approximate_squashing_step(const Activation& psi, const Activation& target, double eps)
{
    if (!target.is_squashing() || !target.is_continuous()) {
        throw InputError("target must be a continuous squashing function");
    }
    return approximate_squashing_step(psi, [&](double x) { return target(x); }, eps);
}

double cosine_piece_g(double x)
{
    if (x <= -kPi / 2) {
        return 0.0;
    }
    return x >= 0.0 ? 1.0 : std::cos(x);
}

double cosine_piece_h(double x)
{
    if (x <= -kPi) {
        return 0.0;
    }
    return x >= -kPi / 2 ? 1.0 : 1.0 + std::cos(x);
}

int cosine_half_periods(double M)
{
    if (!(M > 0.0)) {
        throw InputError("cosine domain half-width must be positive");
    }
    int n = 1;
    while (M > (2.0 * n - 0.5) * kPi) {
        ++n;
    }
    return n;
}

ShallowNet build_cosine_net(const Activation& psi, double M, double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InputError("cosine tolerance must lie in (0, 1)");
    }
    const int n = cosine_half_periods(M);
    const double piece_eps = eps / (12.0 * n);

    // cos = sum_{j<4n} (-1)^j g_{-2n+j} + (-1)^{j+1} (h_{-2n+1+j} - 1) on
    // [-(2n+1/2)pi, (2n-1/2)pi], where f_a(x) = f(x - a pi).
    const ShallowNet g_net = approximate_squashing_step(psi, cosine_piece_g, piece_eps);
    const ShallowNet h_net = approximate_squashing_step(psi, cosine_piece_h, piece_eps);

    auto shifted = [](const ShallowNet& net, double shift, double sign, std::vector<Term>& out) {
        for (const auto& t : net.terms()) {
            Term s = t;
            s.coeff *= sign;
            s.bias -= t.weight[0] * shift;
            out.push_back(std::move(s));
        }
    };

    // Each h-piece enters as h - 1, approximated by H - psi(K) for a saturating
    // K. The constants carry signs (-1)^j over j < 4n and cancel exactly, so
    // no constant unit is emitted.
    std::vector<Term> terms;
    for (int j = 0; j < 4 * n; ++j) {
        const double sign_g = (j % 2 == 0) ? 1.0 : -1.0;
        shifted(g_net, (-2.0 * n + j) * kPi, sign_g, terms);
        shifted(h_net, (-2.0 * n + 1 + j) * kPi, -sign_g, terms);
    }
    return ShallowNet(1, std::move(terms));
}

double choose_bias(const Activation& psi, const std::vector<int>& orders)
{
    double best_b = 0.0;
    double best_val = -1.0;
    for (int i = 0; i <= 160; ++i) {
        const double b = -4.0 + 0.05 * i;
        double worst = std::numeric_limits<double>::infinity();
        for (int order : orders) {
            worst = std::min(worst, std::abs(activation_derivative(psi, order, b)));
        }
        // Strict comparison keeps the first (leftmost) maximizer.
        if (worst > best_val) {
            best_val = worst;
            best_b = b;
        }
    }
    return best_b;
}

double default_difference_step(Interval domain)
{
    const double hw = domain.half_width();
    if (!(hw > 0.0)) {
        throw InputError("domain must have positive width");
    }
    return 1e-3 / hw;
}

namespace {

double checked_derivative(const Activation& psi, int order, double b)
{
    const double d = activation_derivative(psi, order, b);
    if (!(std::abs(d) >= kDerivativeFloor)) {
        throw PreconditionError("psi^(" + std::to_string(order) + ")(" + std::to_string(b) + ") = " +
                                std::to_string(d) + " is numerically zero; choose a different bias (see choose_bias)");
    }
    return d;
}

} // namespace

ShallowNet build_monomial_net(const Activation& psi, int n, double b, std::optional<double> h, Interval domain)
{
    if (n < 0) {
        throw InputError("monomial degree must be nonnegative");
    }
    const double step = h.value_or(default_difference_step(domain));
    if (!(step > 0.0)) {
        throw InputError("difference step h must be positive");
    }
    const double deriv = checked_derivative(psi, n, b);
    const double scale = 1.0 / (std::pow(2.0 * step, n) * deriv);

    std::vector<Term> terms;
    terms.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        terms.push_back(unit(sign * binomial(n, i) * scale, (n - 2 * i) * step, b, psi));
    }
    return ShallowNet(1, std::move(terms));
}

ShallowNet build_polynomial_net(const Activation& psi, const std::vector<double>& coeffs, double b,
                                std::optional<double> h, Interval domain)
{
    if (coeffs.empty()) {
        throw InputError("polynomial needs at least one coefficient");
    }
    const int n = static_cast<int>(coeffs.size()) - 1;
    const double step = h.value_or(default_difference_step(domain));
    if (!(step > 0.0)) {
        throw InputError("difference step h must be positive");
    }

    // Slot k in [-n, n] holds the unit psi(k h x + b).
    std::vector<double> slot(2 * n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        if (coeffs[j] == 0.0) {
            continue;
        }
        const double deriv = checked_derivative(psi, j, b);
        const double scale = coeffs[j] / (std::pow(2.0 * step, j) * deriv);
        for (int i = 0; i <= j; ++i) {
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            slot[(j - 2 * i) + n] += sign * binomial(j, i) * scale;
        }
    }

    std::vector<Term> terms;
    terms.reserve(slot.size());
    for (int k = n; k >= -n; --k) {
        terms.push_back(unit(slot[k + n], k * step, b, psi));
    }
    return ShallowNet(1, std::move(terms));
}

} // namespace uatk
