#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "uatk/analysis.hpp"
#include "uatk/errors.hpp"
#include "uatk/greedy.hpp"
#include "uatk/metrics.hpp"
#include "uatk/random.hpp"

using namespace uatk;

namespace {

Dictionary orthonormal(std::size_t m)
{
    auto grid = Grid::make(Box::interval(0.0, 1.0), {m});
    std::vector<std::vector<double>> atoms(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        atoms[i][i] = 1.0 / std::sqrt(grid->weight(i));
    }
    return Dictionary(grid, atoms);
}

Dictionary random_nonneg(std::size_t m, std::size_t res, std::uint64_t seed, double scale = 1.0)
{
    Rng rng(seed);
    auto grid = Grid::make(Box::interval(0.0, 1.0), {res});
    std::vector<std::vector<double>> atoms(m, std::vector<double>(res));
    for (auto& a : atoms) {
        for (auto& v : a) {
            v = scale * rng.uniform();
        }
    }
    return Dictionary(grid, atoms);
}

std::vector<std::size_t> all(std::size_t m)
{
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

double l2(const Grid& g, std::span<const double> v)
{
    return weighted_lp_norm(v, g.weights(), 2.0);
}

// Maurey selection written out directly: f_n = ((n-1) f_{n-1} + g) / n with g
// the support atom minimising ||f - f_n||.
std::vector<std::size_t> naive_maurey(const ConvexTarget& t, const Dictionary& d, std::size_t steps)
{
    std::vector<std::size_t> picks;
    std::vector<double> fn(t.f.size(), 0.0);
    for (std::size_t n = 1; n <= steps; ++n) {
        double best = INFINITY;
        std::size_t pick = 0;
        std::vector<double> best_vec;
        for (std::size_t j : t.indices) {
            std::vector<double> cand(fn.size());
            std::vector<double> diff(fn.size());
            for (std::size_t i = 0; i < fn.size(); ++i) {
                cand[i] = ((n - 1) * fn[i] + d.atom(j)[i]) / static_cast<double>(n);
                diff[i] = t.f[i] - cand[i];
            }
            const double e = l2(d.grid(), diff);
            if (e < best - 1e-14) {
                best = e;
                pick = j;
                best_vec = cand;
            }
        }
        picks.push_back(pick);
        fn = best_vec;
        if (best < kExactRecovery) {
            break;
        }
    }
    return picks;
}

} // namespace

TEST(Bounds, PlugIn)
{
    EXPECT_DOUBLE_EQ(maurey_bound(1, 0, 4), 0.5);
    EXPECT_NEAR(ddgs_bound(1, 2, 4), std::sqrt(2.0) / 2, 1e-15);
    EXPECT_DOUBLE_EQ(ks_bound(0.5, 1, 0, 3), 0.5);
    EXPECT_THROW(maurey_bound(0.5, 1.0, 2), InputError);
    EXPECT_THROW(ks_bound(1.0, 1.0, 0.0, 2), InputError);
    EXPECT_THROW(ddgs_bound(1.0, 1.0, 2), InputError);
    // p and its conjugate give the same bound
    EXPECT_NEAR(ddgs_bound(0.7, 3.0, 9), ddgs_bound(0.7, 1.5, 9), 1e-15);
}

TEST(Dictionary, SGAndValidation)
{
    const auto d = orthonormal(8);
    EXPECT_NEAR(d.s_G(), 1.0, 1e-14);
    EXPECT_THROW(Dictionary(d.grid_ptr(), {}), InputError);
    EXPECT_THROW(ConvexTarget::make(d, {0, 1}, {0.5, 0.6}), InputError);
    EXPECT_THROW(ConvexTarget::make(d, {0, 1}, {1.5, -0.5}), InputError);
    EXPECT_THROW(ConvexTarget::make(d, {0, 9}, {0.5, 0.5}), InputError);
    const auto t = ConvexTarget::make(d, {2, 5}, {0.25, 0.75});
    for (std::size_t i = 0; i < t.f.size(); ++i) {
        EXPECT_NEAR(t.f[i], 0.25 * d.atom(2)[i] + 0.75 * d.atom(5)[i], 1e-15);
    }
}

TEST(Maurey, FourOrthonormalAtoms)
{
    const auto d = orthonormal(4);
    const auto res = maurey_greedy(ConvexTarget::uniform(d, all(4)), d, 4);
    ASSERT_GE(res.trace.steps.size(), 2u);
    std::set<std::size_t> picked;
    for (const auto& s : res.trace.steps) {
        picked.insert(s.atom);
    }
    EXPECT_EQ(picked.size(), res.trace.steps.size());
    const auto& s2 = res.trace.steps[1];
    EXPECT_NEAR(s2.error * s2.error, 0.25, 1e-14);
    EXPECT_NEAR(s2.bound * s2.bound, 3.0 / 8.0, 1e-14);
}

TEST(Maurey, SixtyFourOrthonormalClosedForm)
{
    const std::size_t m = 64;
    const auto d = orthonormal(m);
    const auto res = maurey_greedy(ConvexTarget::uniform(d, all(m)), d, m);
    for (const auto& s : res.trace.steps) {
        const double n = static_cast<double>(s.step);
        const double closed = n * std::pow(1.0 / m - 1.0 / n, 2) + (m - n) / double(m * m);
        EXPECT_NEAR(s.error * s.error, closed, 1e-9);
        EXPECT_LE(s.error * s.error, (1.0 - 1.0 / m) / n + 1e-15);
    }
    std::vector<double> n;
    std::vector<double> e;
    for (const auto& s : res.trace.steps) {
        if (s.step < m) {
            n.push_back(static_cast<double>(s.step));
            e.push_back(s.error);
        }
    }
    EXPECT_LE(fit_rate(n, e).slope, -0.45);
}

TEST(Maurey, SingleAtomTargetRecoveredAtOnce)
{
    const auto d = random_nonneg(10, 33, 1);
    const auto res = maurey_greedy(ConvexTarget::make(d, {3}, {1.0}), d, 5);
    ASSERT_EQ(res.trace.steps.size(), 1u);
    EXPECT_EQ(res.trace.steps[0].error, 0.0);
    EXPECT_TRUE(res.trace.exact_recovery);
}

TEST(Maurey, MatchesNaiveSelectionAndBoundEveryStep)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = random_nonneg(16, 65, seed);
        Rng rng(seed + 100);
        std::vector<double> w(16);
        double total = 0;
        for (auto& v : w) {
            v = rng.uniform();
            total += v;
        }
        for (auto& v : w) {
            v /= total;
        }
        w[0] += 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
        const auto t = ConvexTarget::make(d, all(16), w);
        const auto res = maurey_greedy(t, d, 30);
        const auto ref = naive_maurey(t, d, 30);
        ASSERT_EQ(res.trace.steps.size(), ref.size());
        const double fn = l2(d.grid(), t.f);
        const double c = d.s_G() * d.s_G() - fn * fn;
        for (std::size_t k = 0; k < ref.size(); ++k) {
            EXPECT_EQ(res.trace.steps[k].atom, ref[k]) << "seed " << seed << " step " << k + 1;
            EXPECT_LE(res.trace.steps[k].error * res.trace.steps[k].error, c / double(k + 1) * (1 + 1e-12));
        }
    }
}

TEST(KS, LineSearchFormula)
{
    const auto ls = ks_line_search(0.5, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(ls.alpha, 0.6);
    EXPECT_DOUBLE_EQ(ls.error_sq, 0.1);
}

TEST(KS, OrthonormalMidpoint)
{
    const auto d = orthonormal(2);
    const auto res = ks_greedy(ConvexTarget::uniform(d, {0, 1}), d, 5);
    ASSERT_EQ(res.trace.steps.size(), 2u);
    EXPECT_NEAR(res.trace.steps[0].error * res.trace.steps[0].error, 0.5, 1e-14);
    EXPECT_NEAR(res.trace.steps[1].alpha, 0.5, 1e-14);
    EXPECT_NEAR(res.trace.steps[1].error, 0.0, 1e-7);
    EXPECT_TRUE(res.trace.exact_recovery);
}

TEST(KS, SingleAtomTarget)
{
    const auto d = random_nonneg(6, 17, 2);
    const auto res = ks_greedy(ConvexTarget::make(d, {4}, {1.0}), d, 10);
    ASSERT_EQ(res.trace.steps.size(), 1u);
    EXPECT_EQ(res.trace.steps[0].error, 0.0);
}

TEST(KS, EnvelopeMonotonicityAndRecurrence)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = random_nonneg(24, 65, seed);
        const auto t = ConvexTarget::uniform(d, all(24));
        const auto res = ks_greedy(t, d, 40);
        const double fn = l2(d.grid(), t.f);
        const double gap = d.s_G() * d.s_G() - fn * fn;
        double prev = INFINITY;
        double min_rho = 1.0;
        for (const auto& s : res.trace.steps) {
            EXPECT_LE(s.error, prev + 1e-15);
            EXPECT_GE(s.alpha, 0.0);
            EXPECT_LE(s.alpha, 1.0);
            prev = s.error;
            if (s.step >= 2) {
                min_rho = std::min(min_rho, s.rho);
            }
            EXPECT_LE(s.error, std::sqrt(std::pow(res.trace.tau, double(s.step - 1)) * gap) * (1 + 1e-9) + 1e-15);
            EXPECT_LE(s.error, s.bound * (1 + 1e-9) + 1e-15);
        }
        EXPECT_NEAR(res.trace.tau, 1.0 - min_rho * min_rho, 1e-15);
        EXPECT_LT(res.trace.tau, 1.0);
    }
}

TEST(DDGS, HilbertCaseAgreesWithMaureyBound)
{
    const auto d = orthonormal(16);
    const auto t = ConvexTarget::uniform(d, all(16));
    const auto res = ddgs_greedy(t, d, 2.0, 16);
    for (const auto& s : res.trace.steps) {
        EXPECT_NEAR(s.bound, std::sqrt(2.0) * res.trace.r_support / std::sqrt(double(s.step)), 1e-14);
        EXPECT_LE(s.error, s.bound);
        EXPECT_LE(s.error, maurey_bound(1.0, l2(d.grid(), t.f), s.step) + 1e-12);
    }
}

TEST(DDGS, SingleAtomTarget)
{
    const auto d = random_nonneg(8, 33, 3);
    const auto res = ddgs_greedy(ConvexTarget::make(d, {2}, {1.0}), d, 3.0, 5);
    for (const auto& s : res.trace.steps) {
        EXPECT_EQ(s.error, 0.0);
    }
}

TEST(DDGS, RandomNonnegativeAtomsRespectBound)
{
    for (double p : {1.5, 3.0, 6.0}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto d = random_nonneg(8, 129, seed);
            const auto t = ConvexTarget::uniform(d, all(8));
            const auto res = ddgs_greedy(t, d, p, 50);
            double r = 0.0;
            for (std::size_t j = 0; j < 8; ++j) {
                std::vector<double> diff(t.f.size());
                for (std::size_t i = 0; i < diff.size(); ++i) {
                    diff[i] = t.f[i] - d.atom(j)[i];
                }
                r = std::max(r, weighted_lp_norm(diff, d.grid().weights(), p));
            }
            EXPECT_NEAR(res.trace.r_support, r, 1e-14);
            for (const auto& s : res.trace.steps) {
                EXPECT_LE(s.error, ddgs_bound(r, p, s.step));
            }
        }
    }
}

TEST(DDGS, RejectsBadExponent)
{
    const auto d = orthonormal(4);
    const auto t = ConvexTarget::uniform(d, all(4));
    EXPECT_THROW(ddgs_greedy(t, d, 1.0, 3), InputError);
    EXPECT_THROW(ddgs_greedy(t, d, INFINITY, 3), InputError);
}

TEST(Duality, NormingFunctional)
{
    Rng rng(21);
    for (double p : {1.3, 2.0, 4.0}) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> u(40);
            std::vector<double> g(40);
            std::vector<double> w(40);
            for (std::size_t i = 0; i < u.size(); ++i) {
                u[i] = rng.uniform(-1, 1);
                g[i] = rng.uniform(-2, 2);
                w[i] = rng.uniform(0.01, 1);
            }
            EXPECT_LE(std::abs(duality_functional(u, g, w, p)), weighted_lp_norm(g, w, p) * (1 + 1e-12));
            EXPECT_NEAR(duality_functional(u, u, w, p), weighted_lp_norm(u, w, p), 1e-10);
        }
    }
    const std::vector<double> zero(5, 0.0);
    const std::vector<double> one(5, 1.0);
    EXPECT_EQ(duality_functional(zero, one, one, 2.0), 0.0);
}

TEST(GreedyProperty, SelectionIsScaleInvariant)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d1 = random_nonneg(12, 65, seed);
        const auto d2 = random_nonneg(12, 65, seed, 7.5);
        const auto t1 = ConvexTarget::uniform(d1, all(12));
        const auto t2 = ConvexTarget::uniform(d2, all(12));
        auto atoms = [](const GreedyResult& r) {
            std::vector<std::size_t> a;
            for (const auto& s : r.trace.steps) {
                a.push_back(s.atom);
            }
            return a;
        };
        EXPECT_EQ(atoms(maurey_greedy(t1, d1, 20)), atoms(maurey_greedy(t2, d2, 20)));
        EXPECT_EQ(atoms(ks_greedy(t1, d1, 20)), atoms(ks_greedy(t2, d2, 20)));
        EXPECT_EQ(atoms(ddgs_greedy(t1, d1, 3.0, 20)), atoms(ddgs_greedy(t2, d2, 3.0, 20)));
    }
}

TEST(GreedyProperty, CombinationReproducesApproximant)
{
    const auto d = random_nonneg(10, 33, 4);
    const auto t = ConvexTarget::uniform(d, all(10));
    for (const auto& res : {maurey_greedy(t, d, 12), ks_greedy(t, d, 12), ddgs_greedy(t, d, 2.5, 12)}) {
        ASSERT_EQ(res.combination.size(), d.size());
        EXPECT_NEAR(std::accumulate(res.combination.begin(), res.combination.end(), 0.0), 1.0, 1e-12);
        for (std::size_t i = 0; i < res.approximant.size(); ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < d.size(); ++j) {
                v += res.combination[j] * d.atom(j)[i];
            }
            EXPECT_NEAR(v, res.approximant[i], 1e-12);
        }
    }
}

TEST(GVariation, Examples)
{
    const auto psi = Activation::logistic();
    std::vector<Term> units{Term{1.0, {1.0}, 0.0, psi}, Term{1.0, {2.0}, -1.0, psi}, Term{1.0, {-3.0}, 0.5, psi}};
    const auto d = Dictionary::from_units(Grid::make(Box::interval(-1, 1), {65}), 1, units);

    std::vector<Term> net_terms = units;
    net_terms[0].coeff = 1.0;
    net_terms[1].coeff = -2.0;
    net_terms[2].coeff = 0.5;
    EXPECT_DOUBLE_EQ(g_variation_upper_bound(ShallowNet(1, net_terms), d), 3.5);
    EXPECT_EQ(g_variation_upper_bound(ShallowNet(1), d), 0.0);

    const ShallowNet single(1, {units[1]});
    EXPECT_DOUBLE_EQ(g_variation_upper_bound(single, d), 1.0);
    const auto vals = sample_net(d.grid(), single);
    EXPECT_LE(l2(d.grid(), vals), d.s_G() * 1.0 + 1e-15);

    const ShallowNet stranger(1, {Term{1.0, {5.0}, 0.0, psi}});
    EXPECT_THROW(g_variation_upper_bound(stranger, d), InputError);
}

TEST(GVariation, GreedyNetMatchesApproximant)
{
    Rng rng(6);
    std::vector<Term> units;
    for (int j = 0; j < 20; ++j) {
        units.push_back(Term{1.0, {rng.uniform(-6, 6)}, rng.uniform(-3, 3), Activation::logistic()});
    }
    const auto d = Dictionary::from_units(Grid::make(Box::interval(-1, 1), {129}), 1, units);
    const auto res = maurey_greedy(ConvexTarget::uniform(d, all(20)), d, 15);
    const auto net = to_net(res, d);
    const auto vals = sample_net(d.grid(), net);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        EXPECT_NEAR(vals[i], res.approximant[i], 1e-12);
    }
    EXPECT_NEAR(g_variation_upper_bound(net, d), 1.0, 1e-12);
}
