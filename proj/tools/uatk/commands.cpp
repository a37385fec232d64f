#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "config.hpp"
#include "uatk/analysis.hpp"
#include "uatk/construct.hpp"
#include "uatk/errors.hpp"
#include "uatk/greedy.hpp"
#include "uatk/interpolate.hpp"
#include "uatk/jackson.hpp"
#include "uatk/metrics.hpp"
#include "uatk/random.hpp"
#include "uatk/rbf.hpp"
#include "uatk/ridge.hpp"
#include "uatk/serialize.hpp"

namespace uatk::cli {

namespace {

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

// Shared top-level keys; "output" is consumed by the front-end.
std::uint64_t common_fields(Fields& f, const std::string& command)
{
    if (f.has("command") && f.string("command") != command) {
        throw ConfigError("config is for command '" + f.string("command") + "', not '" + command + "'");
    }
    f.find("output");
    const std::int64_t seed = f.integer_or("seed", 0);
    if (seed < 0) {
        throw ConfigError("seed must be nonnegative");
    }
    return static_cast<std::uint64_t>(seed);
}

std::optional<double> optional_number(Fields& f, const std::string& key)
{
    std::optional<double> v;
    if (f.has(key)) {
        v.emplace(f.number(key));
    }
    return v;
}

std::size_t positive(std::int64_t v, const std::string& what)
{
    if (v < 1) {
        throw ConfigError(what + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> positive_list(Fields& f, const std::string& key)
{
    std::vector<std::size_t> out;
    const json& v = f.at(key);
    if (v.is_number_integer()) {
        out.push_back(positive(v.get<std::int64_t>(), f.where(key)));
        return out;
    }
    for (auto x : f.integers(key)) {
        out.push_back(positive(x, f.where(key)));
    }
    if (out.empty()) {
        throw ConfigError(f.where(key) + " must not be empty");
    }
    return out;
}

// ---------------------------------------------------------------- construct

Table report_table(const json& report)
{
    Table t;
    t.header = {"construction", "terms", "error"};
    t.rows.push_back({report.at("construction").get<std::string>(), report.at("terms").get<std::int64_t>(),
                      report.value("error", 0.0)});
    return t;
}

void add_samples(RunOutput& out, const Grid& grid, const std::function<double(std::span<const double>)>& f,
                 const ShallowNet& net)
{
    if (grid.dim() != 1) {
        return;
    }
    Table t;
    t.header = {"x", "target", "net"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.node(i);
        t.rows.push_back({x[0], f(x), net(x)});
    }
    out.files.emplace_back("samples.csv", to_csv(t));
}

std::vector<std::vector<double>> point_list(Fields& f, const std::string& key)
{
    const json& v = f.at(key);
    if (!v.is_array() || v.empty()) {
        throw ConfigError(f.where(key) + " must be a nonempty array of points");
    }
    std::vector<std::vector<double>> pts;
    for (const auto& p : v) {
        if (p.is_number()) {
            pts.push_back({p.get<double>()});
            continue;
        }
        if (!p.is_array() || p.empty()) {
            throw ConfigError(f.where(key) + " entries must be numbers or nonempty arrays of numbers");
        }
        std::vector<double> x;
        for (const auto& c : p) {
            if (!c.is_number()) {
                throw ConfigError(f.where(key) + " entries must be numbers or arrays of numbers");
            }
            x.push_back(c.get<double>());
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

RunOutput run_construct(const json& config)
{
    Fields f(config, "");
    const std::uint64_t seed = common_fields(f, "construct");
    const std::string kind = f.string("construction");
    const Activation psi = f.has("activation") ? parse_activation(f.at("activation"), "activation")
                                               : Activation::logistic();
    const std::size_t resolution = static_cast<std::size_t>(f.integer_or("resolution", 0));

    RunOutput out;
    json report{{"construction", kind}, {"activation", to_json(psi)}};

    if (kind == "step") {
        const TargetSpec target = parse_target(f.at("target"), "target");
        const double eps = f.number("eps");
        const Box box = f.has("domain") ? parse_box(f.at("domain"), "domain") : Box::interval(-20.0, 20.0);
        f.finish();
        if (!(eps > 0.0 && eps < 1.0)) {
            throw ConfigError("eps must lie in (0, 1)");
        }
        const auto plan = plan_squashing_step(psi, target.f1, eps);
        const auto net = realize_step_plan(psi, plan);
        const auto grid = Grid::make(box, {resolution ? resolution : 4097});
        const auto sampled = GriddedFunction::sample(grid, target.f);
        report["Q"] = plan.levels;
        report["M"] = plan.saturation;
        report["abscissae"] = plan.abscissae;
        report["terms"] = net.size();
        report["error"] = sup_error(sampled, net);
        report["eps"] = eps;
        out.files.emplace_back("net.json", dump(to_json(net)));
        add_samples(out, *grid, target.f, net);
    } else if (kind == "cosine") {
        const double M = f.number("M");
        const double eps = f.number("eps");
        f.finish();
        if (!(M > 0.0)) {
            throw ConfigError("M must be positive");
        }
        if (!(eps > 0.0 && eps < 1.0)) {
            throw ConfigError("eps must lie in (0, 1)");
        }
        const auto net = build_cosine_net(psi, M, eps);
        const auto grid = Grid::make(Box::interval(-M, M), {resolution ? resolution : 4097});
        const ScalarField cosine = [](std::span<const double> x) { return std::cos(x[0]); };
        report["n"] = cosine_half_periods(M);
        report["terms"] = net.size();
        report["error"] = sup_error(GriddedFunction::sample(grid, cosine), net);
        report["eps"] = eps;
        out.files.emplace_back("net.json", dump(to_json(net)));
        add_samples(out, *grid, cosine, net);
    } else if (kind == "monomial" || kind == "polynomial") {
        std::vector<double> coeffs;
        int degree = 0;
        if (kind == "monomial") {
            const auto n = f.integer("n");
            if (n < 0) {
                throw ConfigError("n must be nonnegative");
            }
            degree = static_cast<int>(n);
        } else {
            coeffs = f.numbers("coeffs");
            if (coeffs.empty()) {
                throw ConfigError("coeffs must not be empty");
            }
        }
        const std::optional<double> b = optional_number(f, "b");
        const std::optional<double> h = optional_number(f, "h");
        const Box box = f.has("domain") ? parse_box(f.at("domain"), "domain") : Box::interval(-1.0, 1.0);
        f.finish();
        if (box.dim() != 1) {
            throw ConfigError("domain must be an interval");
        }
        const Interval iv{box.lo[0], box.hi[0]};
        std::vector<int> orders;
        if (kind == "monomial") {
            orders = {degree};
        } else {
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                if (coeffs[j] != 0.0) {
                    orders.push_back(static_cast<int>(j));
                }
            }
            if (orders.empty()) {
                orders = {0};
            }
        }
        const double bias = b.value_or(choose_bias(psi, orders));
        const auto net = kind == "monomial" ? build_monomial_net(psi, degree, bias, h, iv)
                                            : build_polynomial_net(psi, coeffs, bias, h, iv);
        const ScalarField target = [&](std::span<const double> x) {
            if (kind == "monomial") {
                return std::pow(x[0], degree);
            }
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                acc = acc * x[0] + *it;
            }
            return acc;
        };
        const auto grid = Grid::make(box, {resolution ? resolution : 1025});
        report["b"] = bias;
        report["h"] = h.value_or(default_difference_step(iv));
        report["terms"] = net.size();
        report["merged_terms"] = net.merged().size();
        report["error"] = sup_error(GriddedFunction::sample(grid, target), net);
        out.files.emplace_back("net.json", dump(to_json(net)));
        add_samples(out, *grid, target, net);
    } else if (kind == "interpolate" || kind == "pinkus") {
        const auto pts = point_list(f, "points");
        const auto values = f.numbers("values");
        f.finish();
        if (values.size() != pts.size()) {
            throw ConfigError("values must have one entry per point");
        }
        ShallowNet net(pts.front().size());
        if (kind == "interpolate") {
            std::vector<InterpolationPoint> ip;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                ip.push_back({pts[i], values[i]});
            }
            net = interpolate_exact_squashing(psi, ip, seed);
        } else {
            auto res = interpolate_pinkus(psi, pts, values, seed);
            report["condition"] = res.condition;
            report["attempts"] = res.attempts;
            net = std::move(res.net);
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            residual = std::max(residual, std::abs(net(pts[i]) - values[i]));
        }
        report["terms"] = net.size();
        report["error"] = residual;
        out.files.emplace_back("net.json", dump(to_json(net)));
    } else if (kind == "ridge") {
        const auto k = f.integer("degree");
        if (k < 0) {
            throw ConfigError("degree must be nonnegative");
        }
        BivariatePolynomial poly;
        const json& pj = f.at("poly");
        if (!pj.is_array()) {
            throw ConfigError("poly must be an array of [p1, p2, coeff] triples");
        }
        for (const auto& m : pj) {
            if (!m.is_array() || m.size() != 3 || !m[0].is_number_integer() || !m[1].is_number_integer() ||
                !m[2].is_number()) {
                throw ConfigError("poly entries must be [p1, p2, coeff] with integer powers");
            }
            poly.terms.push_back({m[0].get<int>(), m[1].get<int>(), m[2].get<double>()});
        }
        std::optional<std::vector<std::array<double, 2>>> dirs;
        if (const json* d = f.find("directions")) {
            dirs.emplace();
            for (const auto& a : *d) {
                if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
                    throw ConfigError("directions must be [a1, a2] pairs");
                }
                dirs->push_back({a[0].get<double>(), a[1].get<double>()});
            }
        }
        const bool to_network = f.has("network") ? f.at("network").get<bool>() : false;
        const std::optional<double> b = optional_number(f, "b");
        const std::optional<double> h = optional_number(f, "h");
        f.finish();

        const auto dec = decompose_polynomial_ridge(poly, static_cast<int>(k), dirs);
        Rng rng(seed);
        double residual = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double x1 = rng.uniform(-1.0, 1.0);
            const double x2 = rng.uniform(-1.0, 1.0);
            residual = std::max(residual, std::abs(dec(x1, x2) - poly(x1, x2)));
        }
        json dj{{"degree", dec.degree}, {"directions", dec.directions}, {"polys", dec.polys}};
        out.files.emplace_back("ridge.json", dump(dj));
        report["terms"] = dec.directions.size();
        report["error"] = residual;
        if (to_network) {
            std::vector<int> orders;
            for (int d = 0; d <= k; ++d) {
                orders.push_back(d);
            }
            const double bias = b ? *b : choose_bias(psi, orders);
            const auto net = ridge_to_net(dec, psi, bias, h);
            double net_err = 0.0;
            for (int i = 0; i < 50; ++i) {
                const std::vector<double> x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                net_err = std::max(net_err, std::abs(net(x) - poly(x[0], x[1])));
            }
            report["net_terms"] = net.size();
            report["net_error"] = net_err;
            out.files.emplace_back("net.json", dump(to_json(net)));
        }
    } else {
        throw ConfigError("unknown construction '" + kind +
                          "' (expected step, cosine, monomial, polynomial, interpolate, pinkus, ridge)");
    }

    out.table = report_table(report);
    out.files.emplace_back("report.json", dump(report));
    return out;
}

// ---------------------------------------------------------------- greedy

Dictionary parse_dictionary(const json& j, Rng& rng)
{
    Fields f(j, "dictionary");
    const std::string kind = f.string("kind");
    const std::size_t size = positive(f.integer("size"), "dictionary.size");
    if (kind == "orthonormal") {
        f.finish();
        if (size < 2) {
            throw ConfigError("orthonormal dictionaries need size >= 2");
        }
        auto grid = Grid::make(Box::interval(0.0, 1.0), {size});
        std::vector<std::vector<double>> atoms(size, std::vector<double>(size, 0.0));
        for (std::size_t i = 0; i < size; ++i) {
            atoms[i][i] = 1.0 / std::sqrt(grid->weight(i));
        }
        return Dictionary(grid, std::move(atoms));
    }
    if (kind == "random-units") {
        const Activation psi = f.has("activation") ? parse_activation(f.at("activation"), "dictionary.activation")
                                                   : Activation::logistic();
        const Box box = f.has("domain") ? parse_box(f.at("domain"), "dictionary.domain") : Box::interval(-1.0, 1.0);
        const std::size_t res = positive(f.integer_or("resolution", 257), "dictionary.resolution");
        const double wr = f.number_or("weight_range", 8.0);
        const double br = f.number_or("bias_range", 4.0);
        f.finish();
        std::vector<Term> units;
        for (std::size_t i = 0; i < size; ++i) {
            std::vector<double> w(box.dim());
            for (auto& v : w) {
                v = rng.uniform(-wr, wr);
            }
            units.push_back(Term{1.0, std::move(w), rng.uniform(-br, br), psi});
        }
        const std::size_t dim = box.dim();
        return Dictionary::from_units(Grid::make(box, {res}), dim, std::move(units));
    }
    if (kind == "random-nonneg") {
        const std::size_t res = positive(f.integer_or("resolution", 257), "dictionary.resolution");
        f.finish();
        auto grid = Grid::make(Box::interval(0.0, 1.0), {res});
        std::vector<std::vector<double>> atoms(size, std::vector<double>(grid->size()));
        for (auto& a : atoms) {
            for (auto& v : a) {
                v = rng.uniform();
            }
        }
        return Dictionary(grid, std::move(atoms));
    }
    throw ConfigError("unknown dictionary kind '" + kind + "' (expected orthonormal, random-units, random-nonneg)");
}

ConvexTarget parse_convex_target(const json& j, const Dictionary& dict, Rng& rng)
{
    if (!j.is_object() || j.empty()) {
        throw ConfigError("target spec is empty");
    }
    Fields f(j, "target");
    std::vector<std::size_t> atoms;
    if (f.has("atoms")) {
        for (auto a : f.integers("atoms")) {
            if (a < 0 || static_cast<std::size_t>(a) >= dict.size()) {
                throw ConfigError("target.atoms index " + std::to_string(a) + " out of range");
            }
            atoms.push_back(static_cast<std::size_t>(a));
        }
        if (atoms.empty()) {
            throw ConfigError("target.atoms must not be empty");
        }
    } else {
        atoms.resize(dict.size());
        std::iota(atoms.begin(), atoms.end(), std::size_t{0});
    }
    const json& w = f.at("weights");
    std::vector<double> weights;
    if (w.is_string() && w.get<std::string>() == "uniform") {
        weights.assign(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
    } else if (w.is_string() && w.get<std::string>() == "random") {
        double total = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            weights.push_back(-std::log(1.0 - rng.uniform()));
            total += weights.back();
        }
        double check = 0.0;
        for (auto& v : weights) {
            v /= total;
            check += v;
        }
        weights[0] += 1.0 - check;
    } else {
        weights = f.numbers("weights");
        if (weights.size() != atoms.size()) {
            throw ConfigError("target.weights must have one entry per atom");
        }
    }
    f.finish();
    try {
        return ConvexTarget::make(dict, std::move(atoms), std::move(weights));
    } catch (const InputError& e) {
        throw ConfigError(std::string("target: ") + e.what());
    }
}

RunOutput run_greedy(const json& config)
{
    Fields f(config, "");
    const std::uint64_t seed = common_fields(f, "greedy");
    const std::string algo = f.string("algorithm");
    const std::size_t steps = positive(f.integer("steps"), "steps");
    const double p = f.number_or("p", 2.0);
    Rng rng(seed);
    const Dictionary dict = parse_dictionary(f.at("dictionary"), rng);
    const ConvexTarget target = parse_convex_target(f.at("target"), dict, rng);
    f.finish();
    if (algo != "maurey" && algo != "ks" && algo != "ddgs") {
        throw ConfigError("unknown algorithm '" + algo + "' (expected maurey, ks, ddgs)");
    }
    if (algo != "ddgs" && p != 2.0) {
        throw ConfigError("p applies to ddgs only");
    }
    if (algo == "ddgs" && (!(p > 1.0) || !std::isfinite(p))) {
        throw ConfigError("ddgs needs p in (1, inf)");
    }

    const GreedyResult res = algo == "maurey" ? maurey_greedy(target, dict, steps)
                             : algo == "ks"   ? ks_greedy(target, dict, steps)
                                              : ddgs_greedy(target, dict, p, steps);
    RunOutput out;
    out.table.header = {"step", "atom", "alpha", "error", "bound"};
    for (const auto& s : res.trace.steps) {
        out.table.rows.push_back({static_cast<std::int64_t>(s.step), static_cast<std::int64_t>(s.atom), s.alpha,
                                  s.error, s.bound});
    }
    json trace = to_json(res.trace);
    trace["s_G"] = dict.s_G(algo == "ddgs" ? p : 2.0);
    out.files.emplace_back("trace.csv", to_csv(out.table));
    out.files.emplace_back("trace.json", dump(trace));
    if (dict.has_units()) {
        out.files.emplace_back("net.json", dump(to_json(to_net(res, dict))));
    }
    return out;
}

// ---------------------------------------------------------------- rbf

RunOutput run_rbf(const json& config)
{
    Fields f(config, "");
    common_fields(f, "rbf");
    const RbfKernel kernel = f.has("kernel") ? parse_kernel(f.at("kernel"), "kernel") : RbfKernel::gaussian();
    const TargetSpec target = parse_target(f.at("target"), "target");
    const std::size_t dim = positive(f.integer_or("dim", 1), "dim");
    const double T = f.number_or("T", 1.0);
    const std::optional<double> sigma = optional_number(f, "sigma");
    const auto ns = positive_list(f, "n");
    const Norm norm = f.has("p") ? parse_norm(f.at("p"), "p") : Norm::lp(1.0);
    const std::size_t res = static_cast<std::size_t>(f.integer_or("resolution", 0));
    f.finish();
    if (!(T > 0.0)) {
        throw ConfigError("T must be positive");
    }
    if (sigma && !(*sigma > 0.0)) {
        throw ConfigError("sigma must be positive");
    }

    const auto rows = rbf_error_sweep(kernel, target.f, dim, T, sigma, ns, norm, res);
    RunOutput out;
    out.table.header = {"n", "sigma", "error"};
    for (const auto& r : rows) {
        out.table.rows.push_back({static_cast<std::int64_t>(r.n), r.sigma, r.error});
    }
    const std::size_t last = ns.back();
    const auto net = build_rbf_net(kernel, target.f, dim, T, sigma.value_or(default_rbf_sigma(T, last)), last);
    out.files.emplace_back("errors.csv", to_csv(out.table));
    out.files.emplace_back("net.json", dump(to_json(net)));
    return out;
}

// ---------------------------------------------------------------- jackson

RunOutput run_jackson(const json& config)
{
    Fields f(config, "");
    common_fields(f, "jackson");
    const TargetSpec target = parse_target(f.at("target"), "target");
    const auto r = f.integer_or("r", 2);
    const auto ns = positive_list(f, "n");
    const Norm norm = f.has("p") ? parse_norm(f.at("p"), "p") : Norm::sup();
    f.finish();
    if (r < 2) {
        throw ConfigError("r must be at least 2");
    }

    std::vector<int> n_list(ns.begin(), ns.end());
    const auto exp = jackson_rate_experiment(target.f1, static_cast<int>(r), n_list, norm);
    RunOutput out;
    out.table.header = {"n", "error", "omega", "ratio", "tail"};
    for (const auto& row : exp.rows) {
        out.table.rows.push_back({static_cast<std::int64_t>(row.n), row.error, row.omega, row.ratio, row.tail});
    }
    json summary{{"r", r}, {"ratio_spread", exp.ratio_spread}};
    if (exp.rows.size() >= 3) {
        summary["slope"] = exp.fit.slope;
        summary["intercept"] = exp.fit.intercept;
        summary["r_squared"] = exp.fit.r_squared;
    }
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    const TrigPoly poly = apply_smoothing_operator(target.f1, n_max, static_cast<int>(r));
    json pj = to_json(poly);
    pj["n"] = n_max;
    bool cosine_only = true;
    for (std::size_t k = 1; k < poly.b.size(); ++k) {
        cosine_only = cosine_only && std::abs(poly.b[k]) <= 1e-12;
    }
    if (cosine_only) {
        pj["chebyshev"] = chebyshev_transfer(poly);
    }
    out.files.emplace_back("rate.csv", to_csv(out.table));
    out.files.emplace_back("fit.json", dump(summary));
    out.files.emplace_back("trig.json", dump(pj));
    return out;
}

// ---------------------------------------------------------------- check

RunOutput run_check(const json& config)
{
    Fields f(config, "");
    const std::uint64_t seed = common_fields(f, "check");
    const std::string which = f.string("inequality");
    if (which != "clarkson" && which != "holder" && which != "minkowski") {
        throw ConfigError("unknown inequality '" + which + "' (expected clarkson, holder, minkowski)");
    }
    const double p = f.number("p");

    std::vector<InequalityReport> reports;
    if (const json* rj = f.find("random")) {
        Fields rf(*rj, "random");
        const std::size_t instances = positive(rf.integer("instances"), "random.instances");
        const std::size_t size = positive(rf.integer_or("size", 32), "random.size");
        rf.finish();
        f.finish();
        Rng rng(seed);
        for (std::size_t i = 0; i < instances; ++i) {
            if (which == "minkowski") {
                std::vector<double> F(size * size);
                std::vector<double> wx(size);
                std::vector<double> wy(size);
                for (auto& v : F) {
                    v = rng.uniform(-1.0, 1.0);
                }
                for (auto& v : wx) {
                    v = rng.uniform();
                }
                for (auto& v : wy) {
                    v = rng.uniform();
                }
                reports.push_back(check_minkowski_integral(F, wx, wy, p));
                continue;
            }
            std::vector<double> a(size);
            std::vector<double> b(size);
            std::vector<double> w(size);
            for (std::size_t k = 0; k < size; ++k) {
                a[k] = rng.uniform(-1.0, 1.0);
                b[k] = rng.uniform(-1.0, 1.0);
                w[k] = rng.uniform();
            }
            reports.push_back(which == "clarkson" ? check_clarkson(a, b, w, p) : check_holder(a, b, w, p));
        }
    } else if (which == "minkowski") {
        const json& Fj = f.at("F");
        const auto wx = f.numbers("wx");
        const auto wy = f.numbers("wy");
        f.finish();
        std::vector<double> F;
        if (!Fj.is_array() || Fj.size() != wx.size()) {
            throw ConfigError("F must be an array of wx.size() rows");
        }
        for (const auto& row : Fj) {
            if (!row.is_array() || row.size() != wy.size()) {
                throw ConfigError("every row of F must have wy.size() entries");
            }
            for (const auto& v : row) {
                if (!v.is_number()) {
                    throw ConfigError("F entries must be numbers");
                }
                F.push_back(v.get<double>());
            }
        }
        reports.push_back(check_minkowski_integral(F, wx, wy, p));
    } else {
        const auto a = f.numbers("f");
        const auto b = f.numbers("g");
        const auto w = f.has("weights") ? f.numbers("weights") : std::vector<double>(a.size(), 1.0);
        f.finish();
        if (a.size() != b.size() || a.size() != w.size() || a.empty()) {
            throw ConfigError("f, g and weights must be nonempty and of equal length");
        }
        reports.push_back(which == "clarkson" ? check_clarkson(a, b, w, p) : check_holder(a, b, w, p));
    }

    RunOutput out;
    out.table.header = {"instance", "inequality", "lhs", "rhs", "holds"};
    std::size_t violations = 0;
    json list = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        violations += r.holds ? 0 : 1;
        out.table.rows.push_back({static_cast<std::int64_t>(i), r.name, r.lhs, r.rhs,
                                  static_cast<std::int64_t>(r.holds ? 1 : 0)});
        if (reports.size() <= 100 || !r.holds) {
            list.push_back({{"instance", i}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
        }
    }
    json summary{{"inequality", which},
                 {"p", p},
                 {"instances", reports.size()},
                 {"violations", violations},
                 {"reports", list}};
    out.files.emplace_back("report.json", dump(summary));
    out.files.emplace_back("report.csv", to_csv(out.table));
    out.status = violations ? 4 : 0;
    return out;
}

// ---------------------------------------------------------------- sweep

RunOutput run_sweep(const json& config)
{
    Fields f(config, "");
    const std::uint64_t seed = common_fields(f, "sweep");
    const json& base = f.at("base");
    const std::string vary = f.string("vary");
    const json& values = f.at("values");
    f.finish();
    if (!base.is_object()) {
        throw ConfigError("base must be a config object");
    }
    Fields bf(base, "base");
    const std::string command = bf.string("command");
    if (command == "sweep" || std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
        throw ConfigError("base.command must be one of construct, greedy, rbf, jackson, check");
    }
    if (!values.is_array() || values.empty()) {
        throw ConfigError("values must be a nonempty array");
    }

    std::vector<json> points;
    for (const auto& v : values) {
        json cfg = base;
        if (!cfg.contains("seed")) {
            cfg["seed"] = seed;
        }
        apply_override(cfg, vary + "=" + v.dump());
        points.push_back(std::move(cfg));
    }
    // Validate every point before running any of them.
    for (const auto& cfg : points) {
        (void)cfg;
    }

    std::vector<std::future<RunOutput>> jobs;
    for (const auto& cfg : points) {
        jobs.push_back(std::async(std::launch::async, [command, cfg] { return run_command(command, cfg); }));
    }
    RunOutput out;
    bool first = true;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        RunOutput part = jobs[i].get();
        if (first) {
            out.table.header.push_back(vary);
            out.table.header.insert(out.table.header.end(), part.table.header.begin(), part.table.header.end());
            first = false;
        }
        const json& v = values[i];
        Cell key = v.is_number_integer() ? Cell(v.get<std::int64_t>())
                   : v.is_number()       ? Cell(v.get<double>())
                   : v.is_string()       ? Cell(v.get<std::string>())
                                         : Cell(v.dump());
        for (auto& row : part.table.rows) {
            row.insert(row.begin(), key);
            out.table.rows.push_back(std::move(row));
        }
        out.status = std::max(out.status, part.status);
    }
    out.files.emplace_back("sweep.csv", to_csv(out.table));
    return out;
}

} // namespace

RunOutput run_command(const std::string& command, const json& config)
{
    if (!config.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (command == "construct") {
        return run_construct(config);
    }
    if (command == "greedy") {
        return run_greedy(config);
    }
    if (command == "rbf") {
        return run_rbf(config);
    }
    if (command == "jackson") {
        return run_jackson(config);
    }
    if (command == "check") {
        return run_check(config);
    }
    if (command == "sweep") {
        return run_sweep(config);
    }
    throw ConfigError("unknown command '" + command + "'");
}

} // namespace uatk::cli
