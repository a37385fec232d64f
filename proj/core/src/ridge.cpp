#include "uatk/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "uatk/errors.hpp"

namespace uatk {

namespace {

double binomial(int n, int k)
{
    double b = 1.0;
    for (int i = 0; i < k; ++i) {
        b = b * (n - i) / (i + 1);
    }
    return b;
}

double horner(const std::vector<double>& c, double t)
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

} // namespace

VandermondeSolution vandermonde_ridge_coeffs(int r, int s, const std::vector<double>& betas)
{
    if (r < 0 || s < 0) {
        throw InputError("r and s must be nonnegative");
    }
    const int m = r + s;
    if (static_cast<int>(betas.size()) != m + 1) {
        throw InputError("need exactly r+s+1 betas, got " + std::to_string(betas.size()));
    }
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (betas[i] == 0.0 || !std::isfinite(betas[i])) {
            throw InputError("betas must be finite and nonzero");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (betas[i] == betas[j]) {
                throw InputError("betas must be distinct");
            }
        }
    }

    Eigen::MatrixXd A(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    for (int k = 0; k <= m; ++k) {
        const double binom = binomial(m, k);
        for (int j = 0; j <= m; ++j) {
            A(k, j) = binom * std::pow(betas[j], k);
        }
    }
    rhs(s) = 1.0;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    VandermondeSolution out;
    out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    out.ill_conditioned = !(out.condition < kIllConditioned);

    Eigen::VectorXd c = A.partialPivLu().solve(rhs);
    out.coeffs.assign(c.data(), c.data() + c.size());
    return out;
}

int BivariatePolynomial::degree() const
{
    int d = 0;
    for (const auto& t : terms) {
        if (t.p1 < 0 || t.p2 < 0) {
            throw InputError("monomial powers must be nonnegative");
        }
        if (t.coeff != 0.0) {
            d = std::max(d, t.p1 + t.p2);
        }
    }
    return d;
}

double BivariatePolynomial::operator()(double x1, double x2) const
{
    double acc = 0.0;
    for (const auto& t : terms) {
        acc += t.coeff * std::pow(x1, t.p1) * std::pow(x2, t.p2);
    }
    return acc;
}

double RidgeDecomposition::operator()(double x1, double x2) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < directions.size(); ++i) {
        acc += horner(polys[i], directions[i][0] * x1 + directions[i][1] * x2);
    }
    return acc;
}

std::vector<std::array<double, 2>> default_ridge_directions(int k)
{
    if (k < 0) {
        throw InputError("degree must be nonnegative");
    }
    std::vector<std::array<double, 2>> dirs;
    for (int i = 0; i <= k; ++i) {
        const double theta = i * std::numbers::pi / (k + 1);
        dirs.push_back({std::cos(theta), std::sin(theta)});
    }
    return dirs;
}

RidgeDecomposition decompose_polynomial_ridge(const BivariatePolynomial& poly, int k,
                                              std::optional<std::vector<std::array<double, 2>>> directions)
{
    if (k < 0) {
        throw InputError("degree must be nonnegative");
    }
    if (poly.degree() > k) {
        throw InputError("polynomial degree exceeds k");
    }

    RidgeDecomposition out;
    out.degree = k;
    out.directions = directions ? *directions : default_ridge_directions(k);
    const auto L = static_cast<Eigen::Index>(out.directions.size());
    if (L == 0) {
        throw InputError("at least one direction is required");
    }
    out.polys.assign(L, std::vector<double>(k + 1, 0.0));

    for (int d = 0; d <= k; ++d) {
        // Homogeneous part P_d = sum_m p_m x1^{d-m} x2^m.
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
        for (const auto& t : poly.terms) {
            if (t.p1 + t.p2 == d) {
                rhs(t.p2) += t.coeff;
            }
        }
        // (a1 x1 + a2 x2)^d = sum_m C(d,m) a1^{d-m} a2^m x1^{d-m} x2^m.
        Eigen::MatrixXd A(d + 1, L);
        for (int m = 0; m <= d; ++m) {
            for (Eigen::Index i = 0; i < L; ++i) {
                const auto& a = out.directions[i];
                A(m, i) = binomial(d, m) * std::pow(a[0], d - m) * std::pow(a[1], m);
            }
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
        cod.setThreshold(1e-10);
        if (cod.rank() < d + 1) {
            throw InputError("directions are not determining for degree " + std::to_string(d) +
                             " (rank " + std::to_string(cod.rank()) + " < " + std::to_string(d + 1) + ")");
        }
        if (rhs.isZero(0.0)) {
            continue;
        }
        const Eigen::VectorXd gamma = cod.solve(rhs);
        for (Eigen::Index i = 0; i < L; ++i) {
            out.polys[i][d] = gamma(i);
        }
    }
    return out;
}

ShallowNet ridge_to_net(const RidgeDecomposition& decomp, const Activation& psi, double b, std::optional<double> h,
                        double radius)
{
    if (!(radius > 0.0)) {
        throw InputError("radius must be positive");
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < decomp.directions.size(); ++i) {
        const auto& a = decomp.directions[i];
        const auto& g = decomp.polys[i];
        if (std::all_of(g.begin(), g.end(), [](double c) { return c == 0.0; })) {
            continue;
        }
        const double t_half = radius * (std::abs(a[0]) + std::abs(a[1]));
        const ShallowNet univariate = build_polynomial_net(psi, g, b, h, Interval{-t_half, t_half});
        for (const auto& t : univariate.terms()) {
            terms.push_back(Term{t.coeff, {t.weight[0] * a[0], t.weight[0] * a[1]}, t.bias, t.activation});
        }
    }
    return ShallowNet(2, std::move(terms));
}

} // namespace uatk
