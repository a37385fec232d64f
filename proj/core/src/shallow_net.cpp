#include "uatk/shallow_net.hpp"

#include <string>

#include "uatk/errors.hpp"

namespace uatk {

ShallowNet::ShallowNet(std::size_t input_dim, std::vector<Term> terms)
    : input_dim_(input_dim), terms_(std::move(terms))
{
    if (input_dim_ == 0) {
        throw InputError("network input dimension must be positive");
    }
    for (const auto& term : terms_) {
        if (term.weight.size() != input_dim_) {
            throw InputError("term weight has dimension " + std::to_string(term.weight.size()) +
                             ", network expects " + std::to_string(input_dim_));
        }
    }
}

double ShallowNet::operator()(std::span<const double> x) const
{
    if (x.size() != input_dim_) {
        throw InputError("input has dimension " + std::to_string(x.size()) + ", network expects " +
                         std::to_string(input_dim_));
    }
    double sum = 0.0;
    for (const auto& term : terms_) {
        double z = term.bias;
        for (std::size_t k = 0; k < input_dim_; ++k) {
            z += term.weight[k] * x[k];
        }
        sum += term.coeff * term.activation(z);
    }
    return sum;
}

double ShallowNet::operator()(double x) const
{
    return (*this)(std::span<const double>(&x, 1));
}

ShallowNet ShallowNet::merged() const
{
    std::vector<Term> out;
    for (const auto& term : terms_) {
        bool folded = false;
        for (auto& existing : out) {
            if (existing.weight == term.weight && existing.bias == term.bias &&
                existing.activation == term.activation) {
                existing.coeff += term.coeff;
                folded = true;
                break;
            }
        }
        if (!folded) {
            out.push_back(term);
        }
    }
    return ShallowNet(input_dim_, std::move(out));
}

ShallowNet ShallowNet::plus(const ShallowNet& other, double scale) const
{
    if (other.input_dim_ != input_dim_) {
        throw InputError("cannot add networks of different input dimension");
    }
    std::vector<Term> out = terms_;
    out.reserve(terms_.size() + other.terms_.size());
    for (const auto& term : other.terms_) {
        Term t = term;
        t.coeff *= scale;
        out.push_back(std::move(t));
    }
    return ShallowNet(input_dim_, std::move(out));
}

} // namespace uatk
