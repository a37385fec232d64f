#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uatk/activation.hpp"
#include "uatk/shallow_net.hpp"

namespace uatk {

struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    double half_width() const { return 0.5 * (hi - lo); }
};

// Parameters of the staircase H = sum_{j<Q} (1/Q) psi(A_j x), where A_j maps
// [r_j, r_{j+1}] affinely onto [-M, M].
struct StepApproxPlan {
    int levels = 0;                 // Q, the smallest integer with 1/Q < eps/2
    double saturation = 0.0;        // M: psi(-M) < 1/Q and psi(M) > 1 - 1/Q
    std::vector<double> abscissae;  // r_0 .. r_Q
    double beta = 0.0;              // 1/Q
};

// Chooses Q, M and the level abscissae for a continuous squashing target.
// r_j = sup{x : F(x) = j/Q} (j < Q), r_Q = sup{x : F(x) = 1 - 1/(2Q)}, found
// by bisection to 1e-12; r_0 = r_1 - (r_2 - r_1).
StepApproxPlan plan_squashing_step(const Activation& psi, const std::function<double(double)>& target,
                                   double eps, double search_radius = 1e6);

ShallowNet realize_step_plan(const Activation& psi, const StepApproxPlan& plan);

// sup_x |F(x) - H(x)| < eps with H made of Q units of psi.
ShallowNet approximate_squashing_step(const Activation& psi, const std::function<double(double)>& target,
                                      double eps);
ShallowNet approximate_squashing_step(const Activation& psi, const Activation& target, double eps);

// The two continuous squashing pieces whose shifts telescope to cos:
// g = the cosine squashing activation, h(x) = 1 - g(-x - pi).
double cosine_piece_g(double x);
double cosine_piece_h(double x);

// Smallest n >= 1 with M <= (2n - 1/2) pi.
int cosine_half_periods(double M);

// Network within eps of cos on [-M, M]. Each of the 8n shifted pieces is
// approximated to eps / (12 n).
ShallowNet build_cosine_net(const Activation& psi, double M, double eps);

// Bias maximizing min_{j in orders} |psi^{(j)}(b)| over a scan of [-4, 4].
double choose_bias(const Activation& psi, const std::vector<int>& orders);

// Derivatives below this magnitude are treated as vanishing.
inline constexpr double kDerivativeFloor = 1e-6;

// (2h)^{-n} sum_i (-1)^i C(n,i) psi((n - 2i) h x + b) / psi^{(n)}(b), an
// (n+1)-unit approximation of x^n. h defaults to 1e-3 / half-width(domain).
ShallowNet build_monomial_net(const Activation& psi, int n, double b, std::optional<double> h,
                              Interval domain = {});

// sum_j a_j x^j from the monomial nets of every degree j <= n, with units of
// equal weight merged: exactly 2n+1 units (n >= 1).
ShallowNet build_polynomial_net(const Activation& psi, const std::vector<double>& coeffs, double b,
                                std::optional<double> h, Interval domain = {});

double default_difference_step(Interval domain);

} // namespace uatk
