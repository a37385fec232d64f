#include "uatk/grid.hpp"

#include <cmath>
#include <string>

#include "uatk/errors.hpp"

namespace uatk {

Box Box::cube(std::size_t dim, double lo, double hi)
{
    return Box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

double Box::volume() const
{
    double v = 1.0;
    for (std::size_t k = 0; k < dim(); ++k) {
        v *= hi[k] - lo[k];
    }
    return v;
}

Norm Norm::lp(double p)
{
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw InputError("L^p exponent must be a finite real >= 1");
    }
    return Norm{Kind::lp, p};
}

std::size_t default_resolution(std::size_t dim)
{
    if (dim <= 1) {
        return 1025;
    }
    return dim <= 3 ? 65 : 17;
}

Grid::Grid(Box box, std::vector<std::size_t> resolution)
    : box_(std::move(box)), resolution_(std::move(resolution))
{
    const std::size_t d = box_.dim();
    if (d == 0 || box_.hi.size() != d) {
        throw InputError("grid box must have matching, nonempty lo/hi vectors");
    }
    if (resolution_.size() == 1 && d > 1) {
        resolution_.assign(d, resolution_[0]);
    }
    if (resolution_.size() != d) {
        throw InputError("grid resolution must give one count per axis");
    }
    std::size_t count = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (!(box_.hi[k] > box_.lo[k])) {
            throw InputError("grid box axis " + std::to_string(k) + " is empty");
        }
        if (resolution_[k] < 2) {
            throw InputError("grid needs at least two points per axis");
        }
        count *= resolution_[k];
    }

    // Per-axis trapezoid weights; the tensor product sums to the box volume.
    std::vector<std::vector<double>> axis_w(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double h = axis_step(k);
        axis_w[k].assign(resolution_[k], h);
        axis_w[k].front() = axis_w[k].back() = 0.5 * h;
    }

    nodes_.resize(count * d);
    weights_.resize(count);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t i = 0; i < count; ++i) {
        double w = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t last = resolution_[k] - 1;
            // Endpoints exactly on the box faces.
            nodes_[i * d + k] = idx[k] == last ? box_.hi[k] : box_.lo[k] + idx[k] * axis_step(k);
            w *= axis_w[k][idx[k]];
        }
        weights_[i] = w;
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < resolution_[k]) {
                break;
            }
            idx[k] = 0;
        }
    }
}

std::shared_ptr<const Grid> Grid::make(Box box, std::vector<std::size_t> resolution)
{
    return std::make_shared<const Grid>(std::move(box), std::move(resolution));
}

std::shared_ptr<const Grid> Grid::make(Box box)
{
    const std::size_t d = box.dim();
    return make(std::move(box), std::vector<std::size_t>(d, default_resolution(d)));
}

double Grid::axis_step(std::size_t axis) const
{
    return (box_.hi[axis] - box_.lo[axis]) / static_cast<double>(resolution_[axis] - 1);
}

GriddedFunction::GriddedFunction(std::shared_ptr<const Grid> grid, std::vector<double> samples, Norm norm)
    : grid_(std::move(grid)), samples_(std::move(samples)), norm_(norm)
{
    if (!grid_) {
        throw InputError("gridded function needs a grid");
    }
    if (samples_.size() != grid_->size()) {
        throw InputError("sample count " + std::to_string(samples_.size()) + " does not match grid size " +
                         std::to_string(grid_->size()));
    }
    if (norm_.kind == Norm::Kind::lp) {
        norm_ = Norm::lp(norm_.p);
    }
}

GriddedFunction GriddedFunction::sample(std::shared_ptr<const Grid> grid, const ScalarField& f, Norm norm)
{
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f(grid->node(i));
    }
    return GriddedFunction(std::move(grid), std::move(values), norm);
}

GriddedFunction GriddedFunction::sample_1d(std::shared_ptr<const Grid> grid,
                                           const std::function<double(double)>& f, Norm norm)
{
    if (grid->dim() != 1) {
        throw InputError("sample_1d needs a one-dimensional grid");
    }
    return sample(std::move(grid), [&](std::span<const double> x) { return f(x[0]); }, norm);
}

double GriddedFunction::interpolate(std::span<const double> x) const
{
    const Grid& g = *grid_;
    const std::size_t d = g.dim();
    if (x.size() != d) {
        throw InputError("interpolation point has wrong dimension");
    }
    std::vector<std::size_t> base(d);
    std::vector<double> frac(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double lo = g.box().lo[k];
        const double hi = g.box().hi[k];
        if (x[k] < lo || x[k] > hi) {
            return 0.0;
        }
        const double u = (x[k] - lo) / g.axis_step(k);
        const std::size_t last = g.resolution()[k] - 1;
        std::size_t i = static_cast<std::size_t>(std::floor(u));
        if (i >= last) {
            i = last - 1;
        }
        base[k] = i;
        frac[k] = u - static_cast<double>(i);
    }
    double value = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        std::size_t flat = 0;
        for (std::size_t k = 0; k < d; ++k) {
            const bool up = (c >> k) & 1u;
            w *= up ? frac[k] : 1.0 - frac[k];
            flat = flat * g.resolution()[k] + base[k] + (up ? 1 : 0);
        }
        if (w != 0.0) {
            value += w * samples_[flat];
        }
    }
    return value;
}

} // namespace uatk
