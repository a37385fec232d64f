#pragma once

#include <cstdint>
#include <vector>

#include "uatk/activation.hpp"
#include "uatk/shallow_net.hpp"

namespace uatk {

struct InterpolationPoint {
    std::vector<double> x;
    double y = 0.0;
};

// Staircase network through the points, one unit per point. psi must reach
// exactly 0 and 1 (heaviside, the cosine squashing, suitable tables). For
// inputs of dimension >= 2 the points are first projected onto a random unit
// direction with well separated projections.
ShallowNet interpolate_exact_squashing(const Activation& psi, const std::vector<InterpolationPoint>& points,
                                       std::uint64_t seed = 0);

struct PinkusResult {
    ShallowNet net;
    double condition = 0.0;  // of the accepted collocation matrix
    int attempts = 0;
};

inline constexpr int kMaxResamples = 100;

// Random (w_j, b_j) uniform on [-5, 5], then solves sum_j c_j psi(w_j . x_i + b_j) = alpha_i.
// Draws are repeated until the collocation matrix has condition number below 1e12.
PinkusResult interpolate_pinkus(const Activation& psi, const std::vector<std::vector<double>>& points,
                                const std::vector<double>& alphas, std::uint64_t seed = 0);

} // namespace uatk
