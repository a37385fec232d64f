#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace uatk {

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    static Box interval(double lo, double hi) { return Box{{lo}, {hi}}; }
    static Box cube(std::size_t dim, double lo, double hi);

    std::size_t dim() const { return lo.size(); }
    double volume() const;
};

// Norm configuration carried by sampled functions.
struct Norm {
    enum class Kind { sup, lp };
    Kind kind = Kind::sup;
    double p = 2.0;

    static Norm sup() { return Norm{Kind::sup, 0.0}; }
    static Norm lp(double p);

    bool is_sup() const { return kind == Kind::sup; }
};

// 1025 nodes for 1-D, 65 per axis up to three dimensions, 17 beyond.
std::size_t default_resolution(std::size_t dim);

// Tensor grid on an axis-aligned box with composite-trapezoid weights. Nodes
// are stored row-major (last axis fastest).
class Grid {
public:
    Grid(Box box, std::vector<std::size_t> resolution);

    static std::shared_ptr<const Grid> make(Box box, std::vector<std::size_t> resolution);
    static std::shared_ptr<const Grid> make(Box box);  // default resolution

    const Box& box() const { return box_; }
    std::size_t dim() const { return box_.dim(); }
    const std::vector<std::size_t>& resolution() const { return resolution_; }
    std::size_t size() const { return weights_.size(); }

    std::span<const double> node(std::size_t i) const
    {
        return {nodes_.data() + i * dim(), dim()};
    }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    double axis_step(std::size_t axis) const;

    friend bool operator==(const Grid& a, const Grid& b)
    {
        return a.box_.lo == b.box_.lo && a.box_.hi == b.box_.hi && a.resolution_ == b.resolution_;
    }

private:
    Box box_;
    std::vector<std::size_t> resolution_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

using ScalarField = std::function<double(std::span<const double>)>;

// A target sampled on a grid, together with the norm used to measure errors
// against it.
class GriddedFunction {
public:
    GriddedFunction(std::shared_ptr<const Grid> grid, std::vector<double> samples, Norm norm = Norm::sup());

    static GriddedFunction sample(std::shared_ptr<const Grid> grid, const ScalarField& f,
                                  Norm norm = Norm::sup());
    static GriddedFunction sample_1d(std::shared_ptr<const Grid> grid,
                                     const std::function<double(double)>& f, Norm norm = Norm::sup());

    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    const Norm& norm() const { return norm_; }

    GriddedFunction with_norm(Norm norm) const { return GriddedFunction(grid_, samples_, norm); }

    // Multilinear interpolation of the samples; zero outside the box.
    double interpolate(std::span<const double> x) const;

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> samples_;
    Norm norm_;
};

} // namespace uatk
