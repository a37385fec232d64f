#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "uatk/analysis.hpp"
#include "uatk/grid.hpp"

namespace uatk {

using PeriodicFn = std::function<double(double)>;

// r-th forward difference sum_k C(r,k) (-1)^(r-k) f(x + k h).
double difference(const PeriodicFn& f, int r, double h, double x);

struct ModulusGrid {
    std::size_t h_points = 64;    // log-spaced over [t/1000, t]
    std::size_t x_points = 1024;  // cell midpoints of (-pi, pi)
};

// max over the h-grid of ||Delta_h^r f|| on (-pi, pi). A lower estimate of
// the true supremum over 0 < h <= t.
double modulus_of_smoothness(const PeriodicFn& f, int r, const Norm& norm, double t, ModulusGrid grid = {});

// sin(M u / 2) / sin(u / 2), with u reduced to [-pi, pi] and a Taylor series
// where |sin(u/2)| < 1e-6.
double sine_ratio(int M, double u);

double dirichlet(int N, double x);
double fejer(int N, double x);

struct JacksonKernelSpec {
    int N = 1;
    int r = 2;
    double c = 1.0;  // (1/pi) int_0^pi (sin(N t/2) / sin(t/2))^{2r} dt

    double operator()(double x) const;
};

// Computes c by adaptive Simpson to relative accuracy 1e-10. Needs N >= 1, r >= 2.
JacksonKernelSpec make_kernel(int N, int r);
double jackson_kernel(const JacksonKernelSpec& spec, double x);

// (2/pi)^{2r} N^{2r-1} and pi^{2r-1} (2^{-2r} + 1/(2r-1)) N^{2r-1}.
double jackson_constant_lower(int N, int r);
double jackson_constant_upper(int N, int r);
// sup_x J_{N,r}(x) <= (pi/2)^{4r} N.
double jackson_pointwise_bound(int N, int r);

// a_0 + sum_k (a_k cos kx + b_k sin kx). b[0] is unused and kept at 0.
struct TrigPoly {
    std::vector<double> a;
    std::vector<double> b;

    int degree() const;
    double operator()(double x) const;
};

struct SmoothingDiagnostics {
    int m = 0;                  // kernel index floor(n/r) + 1
    std::size_t x_points = 0;   // 4 (n + 1)
    std::size_t t_points = 0;   // quadrature nodes in t
    double tail = 0.0;          // largest |coefficient| above n
};

// Coefficients (up to degree n) of S_{n,r} f(x) = int (f(x) + (-1)^{r+1} Delta_t^r f(x)) K(t) dt
// with K = J_{m,r} / (2 pi), from a trapezoid rule in t and a discrete Fourier
// analysis on 4(n+1) points. Throws NumericalError if the coefficients above n
// exceed 1e-8.
TrigPoly apply_smoothing_operator(const PeriodicFn& f, int n, int r, SmoothingDiagnostics* diag = nullptr);

struct RateRow {
    int n = 0;
    double error = 0.0;  // ||S_{n,r} f - f|| on a fine periodic grid
    double omega = 0.0;  // omega_r(f)(1/n) in the same norm
    double ratio = 0.0;  // error / omega
    double tail = 0.0;
};

struct RateExperiment {
    std::vector<RateRow> rows;
    RateFit fit;           // of error against n
    double ratio_spread = 0.0;  // max ratio / min ratio
};

RateExperiment jackson_rate_experiment(const PeriodicFn& f, int r, const std::vector<int>& n_list, const Norm& norm);

// Algebraic polynomial p (coefficients of y^k) with p(2 cos x) equal to the
// cosine part of the input. Sine coefficients must vanish.
std::vector<double> chebyshev_transfer(const TrigPoly& poly);

} // namespace uatk
