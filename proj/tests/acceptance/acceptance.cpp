// End-to-end checks of the toolkit's headline guarantees. Prints one
// PASS/FAIL line per check and exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "uatk/analysis.hpp"
#include "uatk/construct.hpp"
#include "uatk/errors.hpp"
#include "uatk/greedy.hpp"
#include "uatk/interpolate.hpp"
#include "uatk/jackson.hpp"
#include "uatk/metrics.hpp"
#include "uatk/random.hpp"
#include "uatk/rbf.hpp"

using namespace uatk;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 for none
    std::function<Outcome()> body;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// m atoms e_j / sqrt(w_j): orthonormal under the grid's trapezoid weights.
Dictionary orthonormal_dictionary(std::size_t m)
{
    auto grid = Grid::make(Box::interval(0.0, 1.0), {m});
    std::vector<std::vector<double>> atoms(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        atoms[j][j] = 1.0 / std::sqrt(grid->weight(j));
    }
    return Dictionary(grid, std::move(atoms));
}

std::vector<std::size_t> all_indices(std::size_t m)
{
    std::vector<std::size_t> idx(m);
    for (std::size_t j = 0; j < m; ++j) {
        idx[j] = j;
    }
    return idx;
}

std::vector<double> random_simplex(Rng& rng, std::size_t m)
{
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& v : w) {
        v = -std::log(1.0 - rng.uniform());
        total += v;
    }
    double check = 0.0;
    for (auto& v : w) {
        v /= total;
        check += v;
    }
    w[0] += 1.0 - check;
    return w;
}

// Random logistic units on [-1, 1].
Dictionary random_unit_dictionary(Rng& rng, std::size_t m)
{
    auto grid = Grid::make(Box::interval(-1.0, 1.0), {257});
    std::vector<Term> units;
    for (std::size_t j = 0; j < m; ++j) {
        units.push_back(Term{1.0, {rng.uniform(-8.0, 8.0)}, rng.uniform(-4.0, 4.0), Activation::logistic()});
    }
    return Dictionary::from_units(grid, 1, std::move(units));
}

// Random nonnegative atoms on a [0, 1] grid.
Dictionary random_nonneg_dictionary(Rng& rng, std::size_t m, std::size_t points)
{
    auto grid = Grid::make(Box::interval(0.0, 1.0), {points});
    std::vector<std::vector<double>> atoms(m, std::vector<double>(points));
    for (auto& a : atoms) {
        for (auto& v : a) {
            v = rng.uniform();
        }
    }
    return Dictionary(grid, std::move(atoms));
}

Outcome maurey_closed_form()
{
    Outcome out;
    double worst_dev = 0.0;
    int bound_fail = 0;
    for (std::size_t m : {4u, 16u, 64u}) {
        const auto dict = orthonormal_dictionary(m);
        const auto target = ConvexTarget::uniform(dict, all_indices(m));
        const auto res = maurey_greedy(target, dict, m);
        for (const auto& s : res.trace.steps) {
            const double n = static_cast<double>(s.step);
            const double md = static_cast<double>(m);
            const double closed = n * std::pow(1.0 / md - 1.0 / n, 2) + (md - n) / (md * md);
            worst_dev = std::max(worst_dev, std::abs(s.error * s.error - closed));
            if (!(s.error <= std::sqrt((1.0 - 1.0 / md) / n))) {
                ++bound_fail;
            }
        }
        if (res.trace.steps.size() != m) {
            out.pass = false;
        }
    }
    out.pass = out.pass && worst_dev <= 1e-9 && bound_fail == 0;
    out.detail = "max |e_n^2 - closed form| = " + fmt(worst_dev) + ", bound failures = " + std::to_string(bound_fail);
    return out;
}

Outcome greedy_rate()
{
    Rng rng(20240601);
    int good = 0;
    double worst = -10.0;
    for (int run = 0; run < 20; ++run) {
        const auto dict = random_unit_dictionary(rng, 128);
        const auto target = ConvexTarget::make(dict, all_indices(128), random_simplex(rng, 128));
        const auto res = maurey_greedy(target, dict, 100);
        std::vector<double> ns;
        std::vector<double> es;
        for (const auto& s : res.trace.steps) {
            ns.push_back(static_cast<double>(s.step));
            es.push_back(s.error);
        }
        const double slope = fit_rate(ns, es, true).slope;
        worst = std::max(worst, slope);
        if (slope <= -0.45) {
            ++good;
        }
    }
    return Outcome{good >= 18, std::to_string(good) + "/20 runs with slope <= -0.45 (worst " + fmt(worst) + ")"};
}

Outcome ddgs_bound_check()
{
    Rng rng(77);
    int violations = 0;
    std::size_t steps_checked = 0;
    for (double p : {1.5, 3.0}) {
        for (int run = 0; run < 10; ++run) {
            const auto dict = random_nonneg_dictionary(rng, 16, 257);
            const auto target = ConvexTarget::make(dict, all_indices(16), random_simplex(rng, 16));
            GreedyResult res;
            try {
                res = ddgs_greedy(target, dict, p, 60);
            } catch (const CertificateViolation&) {
                ++violations;
                continue;
            }
            const double q = p / (p - 1.0);
            const double a = std::min(p, q);
            const double b = std::max(p, q);
            for (const auto& s : res.trace.steps) {
                ++steps_checked;
                const double bound = std::pow(2.0, 1.0 / a) * res.trace.r_support / std::pow(double(s.step), 1.0 / b);
                if (!(s.error <= bound)) {
                    ++violations;
                }
            }
        }
    }
    return Outcome{violations == 0,
                   std::to_string(violations) + " violations over " + std::to_string(steps_checked) + " steps"};
}

Outcome ks_recurrence()
{
    Rng rng(4242);
    int violations = 0;
    std::size_t steps_checked = 0;
    for (int run = 0; run < 10; ++run) {
        const auto dict = random_unit_dictionary(rng, 32);
        const auto target = ConvexTarget::make(dict, all_indices(32), random_simplex(rng, 32));
        GreedyResult res;
        try {
            res = ks_greedy(target, dict, 60);
        } catch (const CertificateViolation&) {
            ++violations;
            continue;
        }
        const double sG = dict.s_G();
        const double fn = weighted_lp_norm(target.f, dict.grid().weights(), 2.0);
        const auto& st = res.trace.steps;
        for (std::size_t i = 0; i < st.size(); ++i) {
            ++steps_checked;
            if (i > 0) {
                const double lhs = st[i].error * st[i].error;
                const double rhs = (1.0 - st[i].rho * st[i].rho) * st[i - 1].error * st[i - 1].error + 1e-12;
                if (!(lhs <= rhs)) {
                    ++violations;
                }
            }
            const double env =
                std::sqrt(std::pow(res.trace.tau, double(st[i].step - 1)) * std::max(0.0, sG * sG - fn * fn));
            if (!(st[i].error <= env * (1.0 + 1e-9) + 1e-12)) {
                ++violations;
            }
        }
    }
    return Outcome{violations == 0,
                   std::to_string(violations) + " violations over " + std::to_string(steps_checked) + " steps"};
}

Outcome jackson_kernel_check()
{
    double worst = 0.0;
    int bound_fail = 0;
    for (int N : {2, 4, 8, 16, 32}) {
        for (int r : {2, 3}) {
            const auto spec = make_kernel(N, r);
            // J has degree r(N-1), far below the node count, so the periodic
            // trapezoid rule is exact up to roundoff.
            const int nodes = 8 * N * r + 64;
            double mean = 0.0;
            for (int i = 0; i < nodes; ++i) {
                mean += spec(-kPi + 2.0 * kPi * i / nodes);
            }
            mean /= nodes;
            worst = std::max(worst, std::abs(mean - 1.0));
            if (!(jackson_constant_lower(N, r) <= spec.c && spec.c <= jackson_constant_upper(N, r))) {
                ++bound_fail;
            }
        }
    }
    return Outcome{worst <= 1e-8 && bound_fail == 0,
                   "max |mean J - 1| = " + fmt(worst) + ", constant bound failures = " + std::to_string(bound_fail)};
}

Outcome jackson_rate_check()
{
    std::vector<int> ns;
    for (int n = 8; n <= 128; ++n) {
        ns.push_back(n);
    }
    auto sin_run = jackson_rate_experiment([](double x) { return std::sin(x); }, 2, ns, Norm::sup());
    auto abs_run = jackson_rate_experiment([](double x) { return std::abs(std::sin(x)); }, 2, ns, Norm::sup());
    double tail = 0.0;
    for (const auto* run : {&sin_run, &abs_run}) {
        for (const auto& row : run->rows) {
            tail = std::max(tail, row.tail);
        }
    }
    const bool pass = sin_run.fit.slope <= -1.8 && abs_run.fit.slope <= -0.9 && tail <= 1e-8;
    return Outcome{pass, "slopes sin " + fmt(sin_run.fit.slope) + ", |sin| " + fmt(abs_run.fit.slope) +
                             ", max tail " + fmt(tail)};
}

Outcome interpolation_check()
{
    Rng rng(99);
    double stair = 0.0;
    double pinkus = 0.0;
    int failures = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t dim = inst % 2 == 0 ? 1 : 2;
        const std::size_t n = 1 + rng.next() % 12;
        std::vector<InterpolationPoint> pts;
        while (pts.size() < n) {
            InterpolationPoint p;
            for (std::size_t k = 0; k < dim; ++k) {
                p.x.push_back(rng.uniform(-3.0, 3.0));
            }
            p.y = rng.uniform(-2.0, 2.0);
            pts.push_back(p);
        }
        try {
            const auto net = interpolate_exact_squashing(Activation::heaviside(), pts, rng.next());
            for (const auto& p : pts) {
                stair = std::max(stair, std::abs(net(p.x) - p.y));
            }
        } catch (const std::exception&) {
            ++failures;
        }
    }
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t dim = inst % 2 == 0 ? 1 : 2;
        const std::size_t k = 1 + rng.next() % 6;
        std::vector<std::vector<double>> xs;
        std::vector<double> alphas;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<double> x;
            for (std::size_t a = 0; a < dim; ++a) {
                x.push_back(rng.uniform(-1.0, 1.0));
            }
            xs.push_back(x);
            alphas.push_back(rng.uniform(-1.0, 1.0));
        }
        try {
            const auto res = interpolate_pinkus(Activation::logistic(), xs, alphas, rng.next());
            for (std::size_t i = 0; i < k; ++i) {
                pinkus = std::max(pinkus, std::abs(res.net(xs[i]) - alphas[i]));
            }
        } catch (const std::exception&) {
            ++failures;
        }
    }
    return Outcome{stair <= 1e-12 && pinkus <= 1e-8 && failures == 0,
                   "staircase max residual " + fmt(stair) + ", collocation max residual " + fmt(pinkus) +
                       ", failures " + std::to_string(failures)};
}

Outcome monomial_check()
{
    auto grid = Grid::make(Box::interval(-1.0, 1.0), {1025});
    double worst = 0.0;
    for (int n : {1, 2, 3}) {
        const auto net = build_monomial_net(Activation::exponential(), n, 0.0, 1e-3, Interval{-1.0, 1.0});
        const auto f = GriddedFunction::sample_1d(grid, [n](double x) { return std::pow(x, n); });
        worst = std::max(worst, sup_error(f, net));
    }
    return Outcome{worst <= 1e-4, "max sup error " + fmt(worst)};
}

Outcome rbf_check()
{
    const auto bump = [](std::span<const double> x) { return std::max(0.0, 1.0 - std::abs(x[0])); };
    const auto kernel = RbfKernel::gaussian();
    const double sigma = 0.1;
    const auto rows = rbf_error_sweep(kernel, bump, 1, 1.0, sigma, {8, 16, 32, 64}, Norm::lp(1.0), 4097);
    bool decreasing = true;
    std::string errs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        errs += (i ? ", " : "") + fmt(rows[i].error);
        if (i > 0 && !(rows[i].error < rows[i - 1].error)) {
            decreasing = false;
        }
    }

    // Convolution oracle: (1 / (sigma sqrt(pi))) int exp(-((a - y)/sigma)^2) f(y) dy
    // by a fine trapezoid rule over the support of f.
    const auto net = build_rbf_net(kernel, bump, 1, 1.0, sigma, 64);
    Rng rng(5);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double a = rng.uniform(-1.2, 1.2);
        const int nodes = 40000;
        const double h = 2.0 / nodes;
        double acc = 0.0;
        for (int j = 0; j <= nodes; ++j) {
            const double y = -1.0 + j * h;
            const double w = (j == 0 || j == nodes) ? 0.5 * h : h;
            const double z = (a - y) / sigma;
            acc += w * std::exp(-z * z) * std::max(0.0, 1.0 - std::abs(y));
        }
        acc /= sigma * std::sqrt(kPi);
        worst = std::max(worst, std::abs(net(a) - acc));
    }
    return Outcome{decreasing && worst <= 1e-3,
                   "L1 errors [" + errs + "], max deviation from convolution " + fmt(worst)};
}

Outcome inequality_check(const std::string& cli)
{
    Rng rng(1234);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 8 + rng.next() % 57;
        std::vector<double> f(n);
        std::vector<double> g(n);
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k) {
            f[k] = rng.uniform(-2.0, 2.0);
            g[k] = rng.uniform(-2.0, 2.0);
            w[k] = rng.uniform(0.0, 1.0);
        }
        const double p = 1.0 + 0.01 + rng.uniform() * 7.0;
        if (!check_clarkson(f, g, w, p).holds) {
            ++violations;
        }
        if (!check_holder(f, g, w, p).holds) {
            ++violations;
        }
    }
    for (int i = 0; i < 1000; ++i) {
        const std::size_t nx = 4 + rng.next() % 13;
        const std::size_t ny = 4 + rng.next() % 13;
        std::vector<double> F(nx * ny);
        std::vector<double> wx(nx);
        std::vector<double> wy(ny);
        for (auto& v : F) {
            v = rng.uniform(-1.0, 1.0);
        }
        for (auto& v : wx) {
            v = rng.uniform();
        }
        for (auto& v : wy) {
            v = rng.uniform();
        }
        if (!check_minkowski_integral(F, wx, wy, 1.0 + rng.uniform() * 5.0).holds) {
            ++violations;
        }
    }

    // A corrupted weight vector must be reported as a violation, and the
    // command-line tool must surface it with exit status 4.
    const std::vector<double> f{1.0, 1.0};
    const std::vector<double> g{1.0, 0.0};
    const std::vector<double> bad_w{1.0, -0.5};
    const bool caught = !check_holder(f, g, bad_w, 2.0).holds;

    int status = -1;
    if (!cli.empty()) {
        const std::string cfg = "uatk_acceptance_corrupt.json";
        if (FILE* fp = std::fopen(cfg.c_str(), "w")) {
            std::fputs("{\"command\":\"check\",\"inequality\":\"holder\",\"p\":2,"
                       "\"f\":[1,1],\"g\":[1,0],\"weights\":[1,-0.5]}",
                       fp);
            std::fclose(fp);
        }
        const std::string cmd = "\"" + cli + "\" check --config " + cfg + " --out uatk_acceptance_out >/dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        std::remove(cfg.c_str());
    }
    const bool cli_ok = cli.empty() || status == 4;
    return Outcome{violations == 0 && caught && cli_ok,
                   std::to_string(violations) + " violations in 3000 instances; corrupted input flagged: " +
                       (caught ? "yes" : "no") + (cli.empty() ? "" : ", cli exit " + std::to_string(status))};
}

} // namespace

int main(int argc, char** argv)
{
    std::string cli;
#ifdef UATK_CLI_PATH
    cli = UATK_CLI_PATH;
#endif
    if (argc > 1) {
        cli = argv[1];
    }

    const std::vector<Check> checks{
        {1, "maurey-closed-form", 1.0, maurey_closed_form},
        {2, "greedy-rate", 30.0, greedy_rate},
        {3, "ddgs-bound", 30.0, ddgs_bound_check},
        {4, "ks-recurrence", 0.0, ks_recurrence},
        {5, "jackson-kernel", 5.0, jackson_kernel_check},
        {6, "jackson-rate", 30.0, jackson_rate_check},
        {7, "interpolation-exactness", 0.0, interpolation_check},
        {8, "monomial-builder", 0.0, monomial_check},
        {9, "rbf-convergence", 0.0, rbf_check},
        {10, "inequality-suite", 0.0, [&] { return inequality_check(cli); }},
    };

    int failed = 0;
    for (const auto& c : checks) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = Outcome{false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && secs >= c.time_limit) {
            out.pass = false;
            out.detail += " (over time limit " + fmt(c.time_limit) + " s)";
        }
        std::printf("[%s] %2d %-24s %7.3f s  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    out.detail.c_str());
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failed, checks.size());
    return failed == 0 ? 0 : 1;
}
