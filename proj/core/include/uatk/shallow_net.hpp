#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uatk/activation.hpp"

namespace uatk {

// One hidden unit c * psi(w . x + b).
struct Term {
    double coeff = 0.0;
    std::vector<double> weight;
    double bias = 0.0;
    Activation activation;

    friend bool operator==(const Term&, const Term&) = default;
};

// Finite sum of ridge units, sum_j c_j psi_j(w_j . x + b_j). This is the
// output type of every construction in the library.
class ShallowNet {
public:
    explicit ShallowNet(std::size_t input_dim, std::vector<Term> terms = {});

    std::size_t input_dim() const { return input_dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Accumulates in term order, so results are reproducible bit-for-bit.
    double operator()(std::span<const double> x) const;
    double operator()(double x) const;

    // Units with identical (weight, bias, activation) folded into one term,
    // keeping first-occurrence order.
    ShallowNet merged() const;

    // Concatenation; terms of `other` are scaled by `scale`.
    ShallowNet plus(const ShallowNet& other, double scale = 1.0) const;

private:
    std::size_t input_dim_;
    std::vector<Term> terms_;
};

inline double eval_net(const ShallowNet& net, std::span<const double> x) { return net(x); }

} // namespace uatk
