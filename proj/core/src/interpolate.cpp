#include "uatk/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "uatk/errors.hpp"
#include "uatk/random.hpp"

namespace uatk {

namespace {

std::size_t common_dim(const std::vector<std::vector<double>>& xs)
{
    if (xs.empty()) {
        throw InputError("at least one interpolation point is required");
    }
    const std::size_t d = xs.front().size();
    if (d == 0) {
        throw InputError("points must have positive dimension");
    }
    for (const auto& x : xs) {
        if (x.size() != d) {
            throw InputError("all points must have the same dimension");
        }
        for (double v : x) {
            if (!std::isfinite(v)) {
                throw InputError("points must be finite");
            }
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (xs[i] == xs[j]) {
                throw InputError("duplicate interpolation point at index " + std::to_string(i));
            }
        }
    }
    return d;
}

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

bool attains_zero_and_one(const Activation& psi)
{
    switch (psi.kind()) {
    case ActivationKind::heaviside:
    case ActivationKind::piecewise_cosine_squashing:
        return true;
    case ActivationKind::custom_table:
        return psi.is_squashing();
    default:
        return false;
    }
}

} // namespace

ShallowNet interpolate_exact_squashing(const Activation& psi, const std::vector<InterpolationPoint>& points,
                                       std::uint64_t seed)
{
    if (!attains_zero_and_one(psi)) {
        throw PreconditionError("staircase interpolation needs a squashing activation that attains 0 and 1 (" +
                                std::string(to_string(psi.kind())) + " does not)");
    }
    std::vector<std::vector<double>> xs;
    xs.reserve(points.size());
    for (const auto& p : points) {
        xs.push_back(p.x);
    }
    const std::size_t d = common_dim(xs);
    const std::size_t n = points.size();

    double M = 1.0;
    while (!(psi(-M) == 0.0 && psi(M) == 1.0)) {
        M *= 2.0;
        if (M > 1e12) {
            throw PreconditionError("activation does not reach 0 and 1 exactly");
        }
    }

    // Projection direction.
    std::vector<double> p(d, 0.0);
    std::vector<double> t(n);
    if (d == 1) {
        p[0] = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = xs[i][0];
        }
    } else {
        Rng rng(seed);
        bool found = false;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
            double norm = 0.0;
            for (auto& v : p) {
                v = rng.normal();
                norm += v * v;
            }
            norm = std::sqrt(norm);
            if (norm == 0.0) {
                continue;
            }
            for (auto& v : p) {
                v /= norm;
            }
            double scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                t[i] = dot(p, xs[i]);
                scale = std::max(scale, std::abs(t[i]));
            }
            std::vector<double> sorted = t;
            std::sort(sorted.begin(), sorted.end());
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < n; ++i) {
                gap = std::min(gap, sorted[i] - sorted[i - 1]);
            }
            found = n == 1 || gap > 1e-8 * std::max(scale, 1e-300);
        }
        if (!found) {
            throw ConstructionError("no projection direction separates the points after 100 draws");
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });

    std::vector<Term> terms;
    terms.reserve(n);
    terms.push_back(Term{points[order[0]].y, std::vector<double>(d, 0.0), M, psi});
    for (std::size_t j = 1; j < n; ++j) {
        const double lo = t[order[j - 1]];
        const double hi = t[order[j]];
        const double w = 2.0 * M / (hi - lo);
        std::vector<double> weight(d);
        for (std::size_t k = 0; k < d; ++k) {
            weight[k] = w * p[k];
        }
        terms.push_back(Term{points[order[j]].y - points[order[j - 1]].y, std::move(weight), -M - w * lo, psi});
    }
    return ShallowNet(d, std::move(terms));
}

PinkusResult interpolate_pinkus(const Activation& psi, const std::vector<std::vector<double>>& points,
                                const std::vector<double>& alphas, std::uint64_t seed)
{
    if (!psi.is_continuous()) {
        throw PreconditionError("collocation interpolation needs a continuous activation");
    }
    const std::size_t d = common_dim(points);
    const auto k = static_cast<Eigen::Index>(points.size());
    if (alphas.size() != points.size()) {
        throw InputError("need one target value per point");
    }

    Eigen::VectorXd rhs(k);
    double alpha_scale = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        rhs(i) = alphas[i];
        alpha_scale = std::max(alpha_scale, std::abs(alphas[i]));
    }

    Rng rng(seed);
    for (int attempt = 1; attempt <= kMaxResamples; ++attempt) {
        std::vector<std::vector<double>> w(k, std::vector<double>(d));
        std::vector<double> b(k);
        for (Eigen::Index j = 0; j < k; ++j) {
            for (auto& v : w[j]) {
                v = rng.uniform(-5.0, 5.0);
            }
            b[j] = rng.uniform(-5.0, 5.0);
        }
        Eigen::MatrixXd A(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                A(i, j) = psi(dot(w[j], points[i]) + b[j]);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
        const auto& sv = svd.singularValues();
        const double smallest = sv(sv.size() - 1);
        if (!(smallest > 0.0) || !(sv(0) / smallest < 1e12)) {
            continue;
        }
        const auto lu = A.partialPivLu();
        Eigen::VectorXd c = lu.solve(rhs);
        c += lu.solve(rhs - A * c);
        if ((A * c - rhs).cwiseAbs().maxCoeff() > 1e-8 * alpha_scale) {
            continue;
        }

        std::vector<Term> terms;
        terms.reserve(k);
        for (Eigen::Index j = 0; j < k; ++j) {
            terms.push_back(Term{c(j), w[j], b[j], psi});
        }
        return PinkusResult{ShallowNet(d, std::move(terms)), sv(0) / smallest, attempt};
    }
    throw ConstructionError("no well-conditioned collocation matrix after " + std::to_string(kMaxResamples) +
                            " draws");
}

} // namespace uatk
