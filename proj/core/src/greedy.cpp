#include "uatk/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "uatk/errors.hpp"
#include "uatk/metrics.hpp"

namespace uatk {

Dictionary::Dictionary(std::shared_ptr<const Grid> grid, std::vector<std::vector<double>> atoms,
                       std::vector<Term> units)
    : grid_(std::move(grid)), atoms_(std::move(atoms)), units_(std::move(units))
{
    if (!grid_) {
        throw InputError("dictionary needs a grid");
    }
    if (atoms_.empty()) {
        throw InputError("dictionary must contain at least one atom");
    }
    for (const auto& a : atoms_) {
        if (a.size() != grid_->size()) {
            throw InputError("atom does not live on the dictionary grid");
        }
    }
    if (!units_.empty() && units_.size() != atoms_.size()) {
        throw InputError("unit list must match the atom list");
    }
}

Dictionary Dictionary::from_units(std::shared_ptr<const Grid> grid, std::size_t input_dim, std::vector<Term> units)
{
    if (!grid) {
        throw InputError("dictionary needs a grid");
    }
    std::vector<std::vector<double>> atoms;
    atoms.reserve(units.size());
    for (const auto& u : units) {
        atoms.push_back(sample_net(*grid, ShallowNet(input_dim, {u})));
    }
    return Dictionary(std::move(grid), std::move(atoms), std::move(units));
}

double Dictionary::s_G(double p) const
{
    double s = 0.0;
    for (const auto& a : atoms_) {
        s = std::max(s, weighted_lp_norm(a, grid_->weights(), p));
    }
    return s;
}

ConvexTarget ConvexTarget::make(const Dictionary& dict, std::vector<std::size_t> indices, std::vector<double> weights)
{
    if (indices.empty() || indices.size() != weights.size()) {
        throw InputError("convex target needs matching, nonempty index and weight lists");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] >= dict.size()) {
            throw InputError("atom index " + std::to_string(indices[j]) + " out of range");
        }
        if (!(weights[j] >= 0.0)) {
            throw InputError("convex weights must be nonnegative");
        }
        total += weights[j];
    }
    if (!(std::abs(total - 1.0) <= 1e-12)) {
        throw InputError("convex weights must sum to 1 (got " + std::to_string(total) + ")");
    }
    ConvexTarget t;
    t.grid = dict.grid_ptr();
    t.f.assign(dict.grid().size(), 0.0);
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const auto a = dict.atom(indices[j]);
        for (std::size_t i = 0; i < t.f.size(); ++i) {
            t.f[i] += weights[j] * a[i];
        }
    }
    t.indices = std::move(indices);
    t.weights = std::move(weights);
    return t;
}

ConvexTarget ConvexTarget::uniform(const Dictionary& dict, std::vector<std::size_t> indices)
{
    std::vector<double> w(indices.size(), indices.empty() ? 0.0 : 1.0 / static_cast<double>(indices.size()));
    return make(dict, std::move(indices), std::move(w));
}

std::string_view to_string(GreedyAlgorithm a)
{
    switch (a) {
    case GreedyAlgorithm::maurey:
        return "maurey";
    case GreedyAlgorithm::ks:
        return "ks";
    case GreedyAlgorithm::ddgs:
        return "ddgs";
    }
    return "?";
}

double maurey_bound(double s_G, double f_norm, std::size_t n)
{
    if (n == 0) {
        throw InputError("step count must be positive");
    }
    if (!(f_norm >= 0.0) || !(s_G >= f_norm)) {
        throw InputError("need s_G >= ||f|| >= 0");
    }
    return std::sqrt((s_G * s_G - f_norm * f_norm) / static_cast<double>(n));
}

double ks_bound(double tau, double s_G, double f_norm, std::size_t n)
{
    if (n == 0) {
        throw InputError("step count must be positive");
    }
    if (!(tau >= 0.0 && tau < 1.0)) {
        throw InputError("tau must lie in [0, 1)");
    }
    if (!(f_norm >= 0.0) || !(s_G >= f_norm)) {
        throw InputError("need s_G >= ||f|| >= 0");
    }
    return std::sqrt(std::pow(tau, static_cast<double>(n - 1)) * (s_G * s_G - f_norm * f_norm));
}

double ddgs_bound(double r, double p, std::size_t n)
{
    if (n == 0) {
        throw InputError("step count must be positive");
    }
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw InputError("p must lie in (1, inf)");
    }
    if (!(r >= 0.0)) {
        throw InputError("r must be nonnegative");
    }
    const double q = p / (p - 1.0);
    const double a = std::min(p, q);
    const double b = std::max(p, q);
    return std::pow(2.0, 1.0 / a) * r / std::pow(static_cast<double>(n), 1.0 / b);
}

LineSearch ks_line_search(double q, double r_sq, double e_sq)
{
    const double denom = e_sq + 2.0 * q + r_sq;
    if (!(denom > 0.0)) {
        throw NumericalError("degenerate line search (denominator " + std::to_string(denom) + ")");
    }
    return LineSearch{(q + r_sq) / denom, (e_sq * r_sq - q * q) / denom};
}

double duality_functional(std::span<const double> u, std::span<const double> v, std::span<const double> weights,
                          double p)
{
    if (u.size() != v.size() || u.size() != weights.size()) {
        throw InputError("duality functional operands differ in length");
    }
    const double norm = weighted_lp_norm(u, weights, p);
    if (norm == 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != 0.0) {
            const double mag = std::pow(std::abs(u[i]) / norm, p - 1.0);
            sum += weights[i] * (u[i] > 0.0 ? mag : -mag) * v[i];
        }
    }
    return sum;
}

namespace {

void check_target(const ConvexTarget& target, const Dictionary& dict)
{
    if (!target.grid || !(*target.grid == dict.grid())) {
        throw InputError("target is not sampled on the dictionary grid");
    }
    if (target.f.size() != dict.grid().size()) {
        throw InputError("target vector does not match the grid size");
    }
    for (auto i : target.indices) {
        if (i >= dict.size()) {
            throw InputError("target refers to an atom outside the dictionary");
        }
    }
}

// Distinct support atoms in increasing index order, so ties go to the lowest index.
std::vector<std::size_t> support(const ConvexTarget& target)
{
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < target.indices.size(); ++j) {
        if (target.weights[j] > 0.0) {
            s.push_back(target.indices[j]);
        }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// f - (alpha f_prev + (1 - alpha) g)
std::vector<double> blended_residual(const std::vector<double>& f, const std::vector<double>& f_prev,
                                     std::span<const double> g, double alpha)
{
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] - (alpha * f_prev[i] + (1.0 - alpha) * g[i]);
    }
    return out;
}

void absorb(GreedyResult& res, const Dictionary& dict, std::size_t atom, double alpha)
{
    for (auto& c : res.combination) {
        c *= alpha;
    }
    res.combination[atom] += 1.0 - alpha;
    const auto g = dict.atom(atom);
    for (std::size_t i = 0; i < res.approximant.size(); ++i) {
        res.approximant[i] = alpha * res.approximant[i] + (1.0 - alpha) * g[i];
    }
}

void certify(const GreedyStep& s, double scale, const char* name)
{
    if (!(s.error <= s.bound * (1.0 + 1e-9) + 1e-12 * scale)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << name << " certificate violated at step " << s.step << ": error " << s.error << " > bound "
            << s.bound;
        throw CertificateViolation(msg.str());
    }
}

// Nonnegative s_G^2 - ||f||^2, absorbing roundoff when f attains the largest atom norm.
double variance_gap(double s_G, double f_norm)
{
    if (f_norm > s_G * (1.0 + 1e-12)) {
        throw InputError("target norm exceeds s_G; it is not in the convex hull of the dictionary");
    }
    return std::max(0.0, s_G * s_G - f_norm * f_norm);
}

// Maurey and DDGS share the averaging update f_n = ((n-1) f_{n-1} + g) / n;
// `admissible` filters candidates given the current residual.
template <class Admissible>
GreedyResult run_averaging(const ConvexTarget& target, const Dictionary& dict, double p, std::size_t steps,
                           GreedyAlgorithm algo, Admissible admissible,
                           const std::function<double(std::size_t)>& bound_at, double scale)
{
    const auto& w = dict.grid().weights();
    const auto candidates = support(target);

    GreedyResult res;
    res.combination.assign(dict.size(), 0.0);
    res.approximant.assign(dict.grid().size(), 0.0);
    res.trace.algorithm = algo;

    std::vector<double> residual = target.f;
    for (std::size_t n = 1; n <= steps; ++n) {
        const double alpha = static_cast<double>(n - 1) / static_cast<double>(n);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_atom = candidates.front();
        bool any = false;
        for (auto j : candidates) {
            if (n > 1 && !admissible(residual, j)) {
                continue;
            }
            const double e = weighted_lp_norm(blended_residual(target.f, res.approximant, dict.atom(j), alpha), w, p);
            if (e < best) {
                best = e;
                best_atom = j;
                any = true;
            }
        }
        if (!any) {
            throw NumericalError("no admissible atom at step " + std::to_string(n) + " (residual norm " +
                                 std::to_string(weighted_lp_norm(residual, w, p)) + ")");
        }
        absorb(res, dict, best_atom, alpha);
        for (std::size_t i = 0; i < residual.size(); ++i) {
            residual[i] = target.f[i] - res.approximant[i];
        }
        GreedyStep s;
        s.step = n;
        s.atom = best_atom;
        s.alpha = alpha;
        s.error = weighted_lp_norm(residual, w, p);
        s.bound = bound_at(n);
        certify(s, scale, std::string(to_string(algo)).c_str());
        res.trace.steps.push_back(s);
        if (s.error < kExactRecovery) {
            res.trace.exact_recovery = true;
            break;
        }
    }
    return res;
}

} // namespace

GreedyResult maurey_greedy(const ConvexTarget& target, const Dictionary& dict, std::size_t steps)
{
    check_target(target, dict);
    if (steps == 0) {
        throw InputError("step count must be positive");
    }
    const double s_G = dict.s_G(2.0);
    const double f_norm = weighted_lp_norm(target.f, dict.grid().weights(), 2.0);
    const double gap = variance_gap(s_G, f_norm);
    return run_averaging(
        target, dict, 2.0, steps, GreedyAlgorithm::maurey, [](const std::vector<double>&, std::size_t) { return true; },
        [gap](std::size_t n) { return std::sqrt(gap / static_cast<double>(n)); }, s_G);
}

GreedyResult ddgs_greedy(const ConvexTarget& target, const Dictionary& dict, double p, std::size_t steps)
{
    check_target(target, dict);
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw InputError("DDGS needs p in (1, inf)");
    }
    if (steps == 0) {
        throw InputError("step count must be positive");
    }
    const auto& w = dict.grid().weights();
    double r = 0.0;
    std::vector<double> diff(target.f.size());
    for (auto j : support(target)) {
        const auto a = dict.atom(j);
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = target.f[i] - a[i];
        }
        r = std::max(r, weighted_lp_norm(diff, w, p));
    }
    const double scale = std::max(r, dict.s_G(p));
    auto admissible = [&](const std::vector<double>& residual, std::size_t j) {
        const auto a = dict.atom(j);
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = target.f[i] - a[i];
        }
        return duality_functional(residual, diff, w, p) <= 1e-12 * (scale + 1.0);
    };
    auto res = run_averaging(target, dict, p, steps, GreedyAlgorithm::ddgs, admissible,
                             [r, p](std::size_t n) { return ddgs_bound(r, p, n); }, scale);
    res.trace.r_support = r;
    return res;
}

GreedyResult ks_greedy(const ConvexTarget& target, const Dictionary& dict, std::size_t steps)
{
    check_target(target, dict);
    if (steps == 0) {
        throw InputError("step count must be positive");
    }
    const auto& w = dict.grid().weights();
    const auto candidates = support(target);
    const double s_G = dict.s_G(2.0);
    const double f_norm = weighted_lp_norm(target.f, w, 2.0);
    const double gap = variance_gap(s_G, f_norm);

    GreedyResult res;
    res.combination.assign(dict.size(), 0.0);
    res.approximant.assign(dict.grid().size(), 0.0);
    res.trace.algorithm = GreedyAlgorithm::ks;

    std::vector<double> residual = target.f;
    std::vector<double> diff(residual.size());
    double e_prev = f_norm;
    double rho = 1.0;
    for (std::size_t n = 1; n <= steps; ++n) {
        GreedyStep s;
        s.step = n;
        if (n == 1) {
            double best = std::numeric_limits<double>::infinity();
            for (auto j : candidates) {
                const auto a = dict.atom(j);
                for (std::size_t i = 0; i < diff.size(); ++i) {
                    diff[i] = target.f[i] - a[i];
                }
                const double e = weighted_lp_norm(diff, w, 2.0);
                if (e < best) {
                    best = e;
                    s.atom = j;
                }
            }
            s.alpha = 0.0;
            s.r = best;
            s.rho = 1.0;
        } else {
            double best = std::numeric_limits<double>::infinity();
            bool any = false;
            for (auto j : candidates) {
                const auto a = dict.atom(j);
                for (std::size_t i = 0; i < diff.size(); ++i) {
                    diff[i] = target.f[i] - a[i];
                }
                const double q = -weighted_inner(residual, diff, w);
                if (!(q > 0.0)) {
                    continue;
                }
                const double r_sq = weighted_inner(diff, diff, w);
                const LineSearch ls = ks_line_search(q, r_sq, e_prev * e_prev);
                if (ls.error_sq < best) {
                    best = ls.error_sq;
                    s.atom = j;
                    s.alpha = ls.alpha;
                    s.q = q;
                    s.r = std::sqrt(r_sq);
                    any = true;
                }
            }
            if (!any) {
                throw NumericalError("no atom negatively correlated with the residual at step " +
                                     std::to_string(n) + " (residual norm " + std::to_string(e_prev) + ")");
            }
            rho = std::min(rho, s.q / (e_prev * s.r));
            s.rho = rho;
        }

        absorb(res, dict, s.atom, s.alpha);
        for (std::size_t i = 0; i < residual.size(); ++i) {
            residual[i] = target.f[i] - res.approximant[i];
        }
        s.error = weighted_lp_norm(residual, w, 2.0);

        if (n > 1) {
            const double allowed = (1.0 - rho * rho) * e_prev * e_prev;
            if (!(s.error * s.error <= allowed + 1e-12 * (s_G * s_G + 1e-300))) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "ks recurrence violated at step " << n << ": e_n^2 = " << s.error * s.error
                    << " > (1 - rho^2) e_{n-1}^2 = " << allowed;
                throw CertificateViolation(msg.str());
            }
        }
        res.trace.steps.push_back(s);
        e_prev = s.error;
        if (s.error < kExactRecovery) {
            res.trace.exact_recovery = true;
            break;
        }
    }

    res.trace.tau = res.trace.steps.size() > 1 ? 1.0 - rho * rho : 0.0;
    for (auto& s : res.trace.steps) {
        s.bound = std::sqrt(std::pow(res.trace.tau, static_cast<double>(s.step - 1)) * gap);
        certify(s, s_G, "ks");
    }
    return res;
}

double g_variation_upper_bound(const ShallowNet& net, const Dictionary& dict)
{
    double total = 0.0;
    for (const auto& t : net.terms()) {
        bool matched = false;
        for (const auto& u : dict.units()) {
            if (u.weight == t.weight && u.bias == t.bias && u.activation == t.activation && u.coeff != 0.0) {
                total += std::abs(t.coeff / u.coeff);
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw InputError("network term is not a dictionary unit");
        }
    }
    return total;
}

ShallowNet to_net(const GreedyResult& result, const Dictionary& dict)
{
    if (!dict.has_units()) {
        throw InputError("dictionary has no unit descriptors");
    }
    if (result.combination.size() != dict.size()) {
        throw InputError("combination does not match the dictionary");
    }
    std::vector<Term> terms;
    std::size_t dim = dict.units().front().weight.size();
    for (std::size_t j = 0; j < dict.size(); ++j) {
        if (result.combination[j] != 0.0) {
            Term t = dict.units()[j];
            t.coeff *= result.combination[j];
            terms.push_back(std::move(t));
        }
    }
    return ShallowNet(dim, std::move(terms));
}

} // namespace uatk
