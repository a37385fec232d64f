#include "uatk/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "uatk/errors.hpp"

namespace uatk {

double weighted_lp_norm(std::span<const double> values, std::span<const double> weights, double p)
{
    if (!(p >= 1.0)) {
        throw InputError("L^p exponent must be >= 1");
    }
    if (values.size() != weights.size()) {
        throw InputError("value and weight vectors differ in length");
    }
    double sum = 0.0;
    if (p == 1.0) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum += weights[i] * std::abs(values[i]);
        }
        return sum;
    }
    if (p == 2.0) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum += weights[i] * values[i] * values[i];
        }
        return std::sqrt(sum);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += weights[i] * std::pow(std::abs(values[i]), p);
    }
    return std::pow(sum, 1.0 / p);
}

double max_abs(std::span<const double> values)
{
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double weighted_inner(std::span<const double> a, std::span<const double> b, std::span<const double> weights)
{
    if (a.size() != b.size() || a.size() != weights.size()) {
        throw InputError("inner product operands differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += weights[i] * a[i] * b[i];
    }
    return sum;
}

double grid_norm(const Grid& grid, std::span<const double> values, const Norm& norm)
{
    if (values.size() != grid.size()) {
        throw InputError("vector does not live on this grid");
    }
    return norm.is_sup() ? max_abs(values) : weighted_lp_norm(values, grid.weights(), norm.p);
}

std::vector<double> sample_net(const Grid& grid, const ShallowNet& net)
{
    if (net.input_dim() != grid.dim()) {
        throw InputError("network input dimension does not match grid dimension");
    }
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = net(grid.node(i));
    }
    return out;
}

namespace {

std::vector<double> residual(const GriddedFunction& f, const ShallowNet& net)
{
    auto values = sample_net(f.grid(), net);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f.samples()[i] - values[i];
    }
    return values;
}

} // namespace

double sup_error(const GriddedFunction& f, const ShallowNet& net)
{
    if (!f.norm().is_sup()) {
        throw InputError("sup_error needs a target configured with the sup norm");
    }
    return max_abs(residual(f, net));
}

double lp_error(const GriddedFunction& f, const ShallowNet& net, double p)
{
    if (!(p >= 1.0)) {
        throw InputError("lp_error needs p >= 1");
    }
    return weighted_lp_norm(residual(f, net), f.grid().weights(), p);
}

double error(const GriddedFunction& f, const ShallowNet& net)
{
    return f.norm().is_sup() ? sup_error(f, net) : lp_error(f, net, f.norm().p);
}

} // namespace uatk
