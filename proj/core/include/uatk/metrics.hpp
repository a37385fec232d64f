#pragma once

#include <span>
#include <vector>

#include "uatk/grid.hpp"
#include "uatk/shallow_net.hpp"

namespace uatk {

// Weighted discrete norms. The weights are trusted (callers supply quadrature
// rules); p must be >= 1.
double weighted_lp_norm(std::span<const double> values, std::span<const double> weights, double p);
double max_abs(std::span<const double> values);
double weighted_inner(std::span<const double> a, std::span<const double> b, std::span<const double> weights);

double grid_norm(const Grid& grid, std::span<const double> values, const Norm& norm);

std::vector<double> sample_net(const Grid& grid, const ShallowNet& net);

// max over grid nodes of |f - net|. Requires f.norm() to be sup.
double sup_error(const GriddedFunction& f, const ShallowNet& net);

// (sum_i w_i |f_i - net(x_i)|^p)^(1/p) with the grid's trapezoid weights.
double lp_error(const GriddedFunction& f, const ShallowNet& net, double p);

// Error in the norm carried by f.
double error(const GriddedFunction& f, const ShallowNet& net);

} // namespace uatk
