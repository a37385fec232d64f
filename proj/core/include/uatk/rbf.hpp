#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uatk/grid.hpp"

namespace uatk {

enum class RbfKernelKind { gaussian, triangular, custom_table_radial };

std::string_view to_string(RbfKernelKind kind);
RbfKernelKind rbf_kernel_kind_from_string(std::string_view name);

// Radial kernel K(x) = k(||x||).
//
//  gaussian              exp(-rho^2)
//  triangular            max(0, 1 - rho)
//  custom_table_radial   piecewise linear through (rho_i, v_i), v_0 for rho
//                        below rho_0, zero beyond the last radius. Sign
//                        changes are allowed.
class RbfKernel {
public:
    RbfKernel() = default;
    explicit RbfKernel(RbfKernelKind kind, std::vector<double> radii = {}, std::vector<double> values = {});

    static RbfKernel gaussian() { return RbfKernel(RbfKernelKind::gaussian); }
    static RbfKernel triangular() { return RbfKernel(RbfKernelKind::triangular); }
    static RbfKernel table(std::vector<double> radii, std::vector<double> values)
    {
        return RbfKernel(RbfKernelKind::custom_table_radial, std::move(radii), std::move(values));
    }

    RbfKernelKind kind() const { return kind_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& values() const { return values_; }

    double radial(double rho) const;
    double operator()(std::span<const double> x) const;

    // sup |K|.
    double bound() const;
    // Radius beyond which |K| < 1e-12 sup|K| (at most 40).
    double truncation_radius() const;

    friend bool operator==(const RbfKernel&, const RbfKernel&) = default;

private:
    RbfKernelKind kind_ = RbfKernelKind::gaussian;
    std::vector<double> radii_;
    std::vector<double> values_;
};

struct KernelIntegral {
    double value = 0.0;
    double radius = 0.0;               // truncation box is [-radius, radius]^dim
    double quadrature_estimate = 0.0;  // change under the last refinement
    double truncation_estimate = 0.0;  // bound on the mass outside the box
};

// Integral of K over R^dim. Throws PreconditionError when |integral| < 1e-8.
KernelIntegral kernel_integral(const RbfKernel& kernel, std::size_t dim);

// q(x) = sum_i w_i K((x - z_i) / sigma).
struct RbfNet {
    std::size_t dim = 1;
    std::vector<std::vector<double>> centers;
    std::vector<double> weights;
    double sigma = 1.0;
    RbfKernel kernel;

    double operator()(std::span<const double> x) const;
    double operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }
    std::size_t size() const { return weights.size(); }
};

// f(alpha) (2T/n)^dim / (sigma^dim int K): the Riemann-sum weight of one cell.
double rbf_weight(double f_alpha, double T, std::size_t n, std::size_t dim, double sigma, double integral);

// Cell midpoint -T + (i + 1/2) 2T/n.
double rbf_center(double T, std::size_t n, std::size_t i);

// 2 (2T/n).
double default_rbf_sigma(double T, std::size_t n);

// Riemann sum of the mollification (K_sigma / int K) * f_c with n cells per
// axis on [-T, T]^dim, one kernel unit per cell midpoint.
RbfNet build_rbf_net(const RbfKernel& kernel, const ScalarField& f_c, std::size_t dim, double T, double sigma,
                     std::size_t n);

// Same, with f_c given on a grid over a cube [-T, T]^dim; values at the cell
// midpoints are interpolated. f_c must vanish on the boundary of the cube.
RbfNet build_rbf_net(const RbfKernel& kernel, const GriddedFunction& f_c, double sigma, std::size_t n);

struct RbfSweepRow {
    std::size_t n = 0;
    double sigma = 0.0;
    double error = 0.0;
};

// Error of build_rbf_net against f_c (not its mollification) for each n, in
// the given norm on [-T - R sigma, T + R sigma]^dim with R the kernel's
// truncation radius. sigma defaults to default_rbf_sigma(T, n) per row.
std::vector<RbfSweepRow> rbf_error_sweep(const RbfKernel& kernel, const ScalarField& f_c, std::size_t dim, double T,
                                         std::optional<double> sigma, const std::vector<std::size_t>& n_list,
                                         const Norm& norm, std::size_t resolution = 0);

} // namespace uatk
