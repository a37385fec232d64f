#include "uatk/rbf.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "uatk/errors.hpp"
#include "uatk/metrics.hpp"

namespace uatk {

std::string_view to_string(RbfKernelKind kind)
{
    switch (kind) {
    case RbfKernelKind::gaussian:
        return "gaussian";
    case RbfKernelKind::triangular:
        return "triangular";
    case RbfKernelKind::custom_table_radial:
        return "custom-table-radial";
    }
    return "?";
}

RbfKernelKind rbf_kernel_kind_from_string(std::string_view name)
{
    if (name == "gaussian") {
        return RbfKernelKind::gaussian;
    }
    if (name == "triangular") {
        return RbfKernelKind::triangular;
    }
    if (name == "custom-table-radial") {
        return RbfKernelKind::custom_table_radial;
    }
    throw InputError("unknown kernel kind '" + std::string(name) + "'");
}

RbfKernel::RbfKernel(RbfKernelKind kind, std::vector<double> radii, std::vector<double> values)
    : kind_(kind), radii_(std::move(radii)), values_(std::move(values))
{
    if (kind_ != RbfKernelKind::custom_table_radial) {
        if (!radii_.empty() || !values_.empty()) {
            throw InputError("only table kernels take radii and values");
        }
        return;
    }
    if (radii_.empty() || radii_.size() != values_.size()) {
        throw InputError("table kernel needs matching, nonempty radii and values");
    }
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!std::isfinite(radii_[i]) || !std::isfinite(values_[i]) || radii_[i] < 0.0) {
            throw InputError("table kernel radii must be finite and nonnegative, values finite");
        }
        if (i > 0 && !(radii_[i] > radii_[i - 1])) {
            throw InputError("table kernel radii must be strictly increasing");
        }
    }
}

double RbfKernel::radial(double rho) const
{
    switch (kind_) {
    case RbfKernelKind::gaussian:
        return std::exp(-rho * rho);
    case RbfKernelKind::triangular:
        return std::max(0.0, 1.0 - rho);
    case RbfKernelKind::custom_table_radial:
        break;
    }
    if (rho > radii_.back()) {
        return 0.0;
    }
    if (rho <= radii_.front()) {
        return values_.front();
    }
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), rho);
    const std::size_t i = static_cast<std::size_t>(it - radii_.begin());
    if (i >= radii_.size()) {
        return values_.back();
    }
    const double s = (rho - radii_[i - 1]) / (radii_[i] - radii_[i - 1]);
    return values_[i - 1] + s * (values_[i] - values_[i - 1]);
}

double RbfKernel::operator()(std::span<const double> x) const
{
    double sq = 0.0;
    for (double v : x) {
        sq += v * v;
    }
    if (kind_ == RbfKernelKind::gaussian) {
        return std::exp(-sq);
    }
    return radial(std::sqrt(sq));
}

double RbfKernel::bound() const
{
    if (kind_ != RbfKernelKind::custom_table_radial) {
        return 1.0;
    }
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double RbfKernel::truncation_radius() const
{
    switch (kind_) {
    case RbfKernelKind::gaussian:
        return std::min(40.0, std::sqrt(12.0 * std::log(10.0)));
    case RbfKernelKind::triangular:
        return 1.0;
    case RbfKernelKind::custom_table_radial:
        break;
    }
    return std::min(40.0, std::max(radii_.back(), 1e-12));
}

KernelIntegral kernel_integral(const RbfKernel& kernel, std::size_t dim)
{
    if (dim == 0 || dim > 6) {
        throw InputError("kernel integrals are supported for dimensions 1 to 6");
    }
    KernelIntegral out;
    out.radius = kernel.truncation_radius();
    const double R = out.radius;

    // Tensor trapezoid with m intervals per axis, doubled until the value
    // settles or the node budget runs out.
    const std::size_t budget = std::size_t{1} << 22;
    auto trapezoid = [&](std::size_t m) {
        const std::size_t pts = m + 1;
        const double h = 2.0 * R / static_cast<double>(m);
        std::vector<std::size_t> idx(dim, 0);
        std::vector<double> x(dim);
        double sum = 0.0;
        while (true) {
            double w = 1.0;
            for (std::size_t a = 0; a < dim; ++a) {
                x[a] = -R + h * static_cast<double>(idx[a]);
                w *= (idx[a] == 0 || idx[a] == m) ? 0.5 * h : h;
            }
            sum += w * kernel(x);
            std::size_t a = dim;
            while (a > 0) {
                --a;
                if (++idx[a] < pts) {
                    break;
                }
                idx[a] = 0;
                if (a == 0) {
                    return sum;
                }
            }
        }
    };

    std::size_t m = 16;
    double prev = trapezoid(m);
    double change = std::abs(prev);
    while (true) {
        const std::size_t next = 2 * m;
        if (std::pow(static_cast<double>(next + 1), static_cast<double>(dim)) > static_cast<double>(budget)) {
            break;
        }
        const double cur = trapezoid(next);
        change = std::abs(cur - prev);
        prev = cur;
        m = next;
        if (change <= 1e-14 * std::max(1.0, std::abs(cur))) {
            break;
        }
    }
    out.value = prev;
    out.quadrature_estimate = change;
    if (kernel.kind() == RbfKernelKind::gaussian) {
        const double inside = std::pow(std::erf(R), static_cast<double>(dim));
        out.truncation_estimate = std::pow(std::sqrt(std::numbers::pi), static_cast<double>(dim)) * (1.0 - inside);
    }
    if (!(std::abs(out.value) >= 1e-8)) {
        throw PreconditionError("kernel integral is numerically zero (" + std::to_string(out.value) +
                                "); the construction needs a kernel with nonzero integral");
    }
    return out;
}

double RbfNet::operator()(std::span<const double> x) const
{
    if (x.size() != dim) {
        throw InputError("input has dimension " + std::to_string(x.size()) + ", RBF net expects " +
                         std::to_string(dim));
    }
    std::vector<double> z(dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::size_t a = 0; a < dim; ++a) {
            z[a] = (x[a] - centers[i][a]) / sigma;
        }
        sum += weights[i] * kernel(z);
    }
    return sum;
}

double rbf_weight(double f_alpha, double T, std::size_t n, std::size_t dim, double sigma, double integral)
{
    const double r = static_cast<double>(dim);
    return f_alpha * std::pow(2.0 * T / static_cast<double>(n), r) / (std::pow(sigma, r) * integral);
}

double rbf_center(double T, std::size_t n, std::size_t i)
{
    return -T + (static_cast<double>(i) + 0.5) * (2.0 * T / static_cast<double>(n));
}

double default_rbf_sigma(double T, std::size_t n)
{
    if (!(T > 0.0) || n == 0) {
        throw InputError("need T > 0 and n >= 1");
    }
    return 2.0 * (2.0 * T / static_cast<double>(n));
}

namespace {

void check_build_args(std::size_t dim, double T, double sigma, std::size_t n)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InputError("sigma must be positive");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InputError("support half-width T must be positive");
    }
    if (n == 0) {
        throw InputError("need at least one cell per axis");
    }
    if (dim == 0) {
        throw InputError("dimension must be positive");
    }
}

template <class Sample>
RbfNet assemble(const RbfKernel& kernel, std::size_t dim, double T, double sigma, std::size_t n, Sample sample)
{
    const double integral = kernel_integral(kernel, dim).value;
    RbfNet net;
    net.dim = dim;
    net.sigma = sigma;
    net.kernel = kernel;
    std::size_t total = 1;
    for (std::size_t a = 0; a < dim; ++a) {
        total *= n;
    }
    net.centers.reserve(total);
    net.weights.reserve(total);
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> alpha(dim);
    for (std::size_t c = 0; c < total; ++c) {
        std::size_t rem = c;
        for (std::size_t a = dim; a-- > 0;) {
            idx[a] = rem % n;
            rem /= n;
            alpha[a] = rbf_center(T, n, idx[a]);
        }
        net.centers.push_back(alpha);
        net.weights.push_back(rbf_weight(sample(alpha), T, n, dim, sigma, integral));
    }
    return net;
}

} // namespace

RbfNet build_rbf_net(const RbfKernel& kernel, const ScalarField& f_c, std::size_t dim, double T, double sigma,
                     std::size_t n)
{
    check_build_args(dim, T, sigma, n);
    return assemble(kernel, dim, T, sigma, n, [&](const std::vector<double>& a) { return f_c(a); });
}

RbfNet build_rbf_net(const RbfKernel& kernel, const GriddedFunction& f_c, double sigma, std::size_t n)
{
    const Box& box = f_c.grid().box();
    const std::size_t dim = box.dim();
    const double T = box.hi.empty() ? 0.0 : box.hi[0];
    for (std::size_t a = 0; a < dim; ++a) {
        if (box.lo[a] != -T || box.hi[a] != T) {
            throw InputError("target grid must cover a symmetric cube [-T, T]^dim");
        }
    }
    check_build_args(dim, T, sigma, n);

    const auto& grid = f_c.grid();
    const auto& s = f_c.samples();
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        peak = std::max(peak, std::abs(s[i]));
        const auto x = grid.node(i);
        for (std::size_t a = 0; a < dim; ++a) {
            if (x[a] == -T || x[a] == T) {
                edge = std::max(edge, std::abs(s[i]));
                break;
            }
        }
    }
    if (edge > 1e-9 * std::max(peak, 1.0)) {
        throw PreconditionError("target does not vanish on the boundary of its support box");
    }
    return assemble(kernel, dim, T, sigma, n, [&](const std::vector<double>& a) { return f_c.interpolate(a); });
}

std::vector<RbfSweepRow> rbf_error_sweep(const RbfKernel& kernel, const ScalarField& f_c, std::size_t dim, double T,
                                         std::optional<double> sigma, const std::vector<std::size_t>& n_list,
                                         const Norm& norm, std::size_t resolution)
{
    if (n_list.empty()) {
        throw InputError("sweep needs at least one n");
    }
    const double R = kernel.truncation_radius();
    const std::size_t res = resolution == 0 ? default_resolution(dim) : resolution;

    auto run = [&](std::size_t n) {
        const double s = sigma.value_or(default_rbf_sigma(T, n));
        const RbfNet net = build_rbf_net(kernel, f_c, dim, T, s, n);
        const double half = T + R * s;
        const auto grid = Grid::make(Box::cube(dim, -half, half), std::vector<std::size_t>(dim, res));
        std::vector<double> diff(grid->size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            const auto x = grid->node(i);
            diff[i] = f_c(x) - net(x);
        }
        return RbfSweepRow{n, s, grid_norm(*grid, diff, norm)};
    };

    std::vector<std::future<RbfSweepRow>> jobs;
    jobs.reserve(n_list.size());
    for (auto n : n_list) {
        jobs.push_back(std::async(std::launch::async, run, n));
    }
    std::vector<RbfSweepRow> rows;
    rows.reserve(n_list.size());
    for (auto& j : jobs) {
        rows.push_back(j.get());
    }
    return rows;
}

} // namespace uatk
