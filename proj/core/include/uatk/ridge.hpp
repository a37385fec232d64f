#pragma once

#include <array>
#include <optional>
#include <vector>

#include "uatk/activation.hpp"
#include "uatk/construct.hpp"
#include "uatk/shallow_net.hpp"

namespace uatk {

struct VandermondeSolution {
    std::vector<double> coeffs;  // c_0 .. c_{r+s}
    double condition = 1.0;      // 2-norm condition number of the system
    bool ill_conditioned = false;
};

// Coefficients with sum_j c_j (x1 + beta_j x2)^{r+s} = x1^r x2^s.
// Needs r+s+1 distinct nonzero betas.
VandermondeSolution vandermonde_ridge_coeffs(int r, int s, const std::vector<double>& betas);

inline constexpr double kIllConditioned = 1e12;

struct Monomial2 {
    int p1 = 0;  // power of x1
    int p2 = 0;  // power of x2
    double coeff = 0.0;
};

// Polynomial in (x1, x2) as a list of monomials; repeated powers add.
struct BivariatePolynomial {
    std::vector<Monomial2> terms;

    int degree() const;
    double operator()(double x1, double x2) const;
};

struct RidgeDecomposition {
    int degree = 0;
    std::vector<std::array<double, 2>> directions;
    // polys[i][d] is the coefficient of t^d in g_i.
    std::vector<std::vector<double>> polys;

    double operator()(double x1, double x2) const;
};

// k+1 unit directions at angles i pi / (k+1), i = 0..k.
std::vector<std::array<double, 2>> default_ridge_directions(int k);

// Writes a bivariate polynomial of degree <= k as sum_i g_i(a_i . x). Each
// homogeneous part is solved in the minimum-norm sense; directions that cannot
// represent some degree-d part raise InputError.
RidgeDecomposition decompose_polynomial_ridge(const BivariatePolynomial& poly, int k,
                                              std::optional<std::vector<std::array<double, 2>>> directions = {});

// Two-input network: every g_i is replaced by its polynomial net, with inputs
// in the box [-radius, radius]^2.
ShallowNet ridge_to_net(const RidgeDecomposition& decomp, const Activation& psi, double b,
                        std::optional<double> h = {}, double radius = 1.0);

} // namespace uatk
