#include "uatk/jackson.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <sstream>

#include "uatk/errors.hpp"
#include "uatk/metrics.hpp"

namespace uatk {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k)
{
    double b = 1.0;
    for (int i = 0; i < k; ++i) {
        b = b * (n - i) / (i + 1);
    }
    return b;
}

double reduce_angle(double u)
{
    double v = std::remainder(u, 2.0 * kPi);
    return v;
}

double simpson_adaptive(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return simpson_adaptive(g, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_adaptive(g, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

// int_a^b g over `panels` equal panels, each refined adaptively so that the
// total error stays below rel_tol times the integral.
double integrate(const std::function<double(double)>& g, double a, double b, int panels, double rel_tol)
{
    const double h = (b - a) / panels;
    double coarse = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        coarse += h / 6.0 * (g(lo) + 4.0 * g(lo + 0.5 * h) + g(lo + h));
    }
    const double eps = rel_tol * std::abs(coarse) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        const double hi = lo + h;
        const double fa = g(lo);
        const double fm = g(0.5 * (lo + hi));
        const double fb = g(hi);
        total += simpson_adaptive(g, lo, hi, fa, fm, fb, h / 6.0 * (fa + 4.0 * fm + fb), eps, 40);
    }
    return total;
}

int lcm_upto(int r)
{
    int l = 1;
    for (int k = 2; k <= r; ++k) {
        l = std::lcm(l, k);
    }
    return l;
}

} // namespace

double difference(const PeriodicFn& f, int r, double h, double x)
{
    if (r < 1) {
        throw InputError("difference order must be at least 1");
    }
    double sum = 0.0;
    for (int k = 0; k <= r; ++k) {
        const double sign = ((r - k) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binomial(r, k) * f(x + k * h);
    }
    return sum;
}

double modulus_of_smoothness(const PeriodicFn& f, int r, const Norm& norm, double t, ModulusGrid grid)
{
    if (!(t > 0.0) || t > 2.0 * kPi) {
        throw InputError("modulus of smoothness needs 0 < t <= 2 pi");
    }
    if (grid.h_points < 1 || grid.x_points < 1) {
        throw InputError("modulus grids must be nonempty");
    }
    const std::size_t nx = grid.x_points;
    std::vector<double> xs(nx);
    std::vector<double> w(nx, 2.0 * kPi / static_cast<double>(nx));
    for (std::size_t i = 0; i < nx; ++i) {
        xs[i] = -kPi + 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(nx);
    }
    const double h_lo = t / 1000.0;
    std::vector<double> d(nx);
    double best = 0.0;
    for (std::size_t j = 0; j < grid.h_points; ++j) {
        const double frac = grid.h_points == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(grid.h_points - 1);
        const double h = h_lo * std::pow(t / h_lo, frac);
        for (std::size_t i = 0; i < nx; ++i) {
            d[i] = difference(f, r, h, xs[i]);
        }
        const double v = norm.is_sup() ? max_abs(d) : weighted_lp_norm(d, w, norm.p);
        best = std::max(best, v);
    }
    return best;
}

double sine_ratio(int M, double u)
{
    const double v = reduce_angle(u);
    const double s = std::sin(0.5 * v);
    if (std::abs(s) < 1e-6) {
        const double m = static_cast<double>(M);
        const double m2 = m * m;
        const double v2 = v * v;
        return m * (1.0 - (m2 - 1.0) / 24.0 * v2 + (m2 - 1.0) * (3.0 * m2 - 7.0) / 5760.0 * v2 * v2 -
                     (m2 - 1.0) * (3.0 * m2 * m2 - 18.0 * m2 + 31.0) / 967680.0 * v2 * v2 * v2);
    }
    return std::sin(0.5 * M * v) / s;
}

double dirichlet(int N, double x)
{
    if (N < 0) {
        throw InputError("Dirichlet kernel needs N >= 0");
    }
    return sine_ratio(2 * N + 1, x);
}

double fejer(int N, double x)
{
    if (N < 0) {
        throw InputError("Fejer kernel needs N >= 0");
    }
    const double q = sine_ratio(N + 1, x);
    return q * q / (N + 1);
}

double JacksonKernelSpec::operator()(double x) const
{
    return std::pow(sine_ratio(N, x), 2 * r) / c;
}

JacksonKernelSpec make_kernel(int N, int r)
{
    if (r < 2) {
        throw InputError("Jackson kernel needs r >= 2");
    }
    if (N < 1) {
        throw InputError("Jackson kernel needs N >= 1");
    }
    const auto g = [N, r](double t) { return std::pow(sine_ratio(N, t), 2 * r); };
    const double integral = integrate(g, 0.0, kPi, std::max(8, 4 * N * r), 1e-12);
    return JacksonKernelSpec{N, r, integral / kPi};
}

double jackson_kernel(const JacksonKernelSpec& spec, double x)
{
    return spec(x);
}

double jackson_constant_lower(int N, int r)
{
    return std::pow(2.0 / kPi, 2 * r) * std::pow(static_cast<double>(N), 2 * r - 1);
}

double jackson_constant_upper(int N, int r)
{
    return std::pow(kPi, 2 * r - 1) * (std::pow(2.0, -2 * r) + 1.0 / (2 * r - 1)) *
           std::pow(static_cast<double>(N), 2 * r - 1);
}

double jackson_pointwise_bound(int N, int r)
{
    return std::pow(kPi / 2.0, 4 * r) * N;
}

int TrigPoly::degree() const
{
    int d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double bk = k < b.size() ? b[k] : 0.0;
        if (std::abs(a[k]) + std::abs(bk) > 1e-12) {
            d = static_cast<int>(k);
        }
    }
    return d;
}

double TrigPoly::operator()(double x) const
{
    double sum = a.empty() ? 0.0 : a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
        sum += a[k] * std::cos(static_cast<double>(k) * x);
        if (k < b.size()) {
            sum += b[k] * std::sin(static_cast<double>(k) * x);
        }
    }
    return sum;
}

TrigPoly apply_smoothing_operator(const PeriodicFn& f, int n, int r, SmoothingDiagnostics* diag)
{
    if (n < 1) {
        throw InputError("smoothing operator needs n >= 1");
    }
    if (r < 2) {
        throw InputError("smoothing operator needs r >= 2");
    }
    const int m = n / r + 1;
    const JacksonKernelSpec kernel = make_kernel(m, r);

    const std::size_t nx = 4 * static_cast<std::size_t>(n + 1);
    const std::size_t base = nx * static_cast<std::size_t>(lcm_upto(r));
    const std::size_t min_nodes = std::size_t{1} << 15;
    const std::size_t nt = base * ((min_nodes + base - 1) / base);
    const std::size_t stride = nt / nx;

    // f on the fine periodic grid 2 pi j / nt; every x_i + k t_s lands on it.
    std::vector<double> fs(nt);
    double f_scale = 1.0;
    for (std::size_t j = 0; j < nt; ++j) {
        double u = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(nt);
        if (u > kPi) {
            u -= 2.0 * kPi;
        }
        fs[j] = f(u);
        f_scale = std::max(f_scale, std::abs(fs[j]));
    }
    // Trapezoid weights times K = J / (2 pi) collapse to J(t_s) / nt.
    std::vector<double> kw(nt);
    for (std::size_t s = 0; s < nt; ++s) {
        kw[s] = kernel(2.0 * kPi * static_cast<double>(s) / static_cast<double>(nt)) / static_cast<double>(nt);
    }
    // The k = 0 term of the difference cancels f(x).
    std::vector<double> coef(r + 1, 0.0);
    for (int k = 1; k <= r; ++k) {
        coef[k] = (k % 2 == 1 ? 1.0 : -1.0) * binomial(r, k);
    }

    // One strided pass over the samples for each k; the index i*stride + k*s
    // (mod nt) is split into runs without wrap-around.
    std::vector<double> values(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        double acc = 0.0;
        for (int k = 1; k <= r; ++k) {
            const std::size_t step = static_cast<std::size_t>(k);
            std::size_t idx = (i * stride) % nt;
            std::size_t s = 0;
            double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
            while (s < nt) {
                const std::size_t run = std::min(nt - s, (nt - idx + step - 1) / step);
                const double* kv = kw.data() + s;
                const double* fv = fs.data() + idx;
                std::size_t j = 0;
                for (; j + 4 <= run; j += 4) {
                    p0 += kv[j] * fv[step * j];
                    p1 += kv[j + 1] * fv[step * (j + 1)];
                    p2 += kv[j + 2] * fv[step * (j + 2)];
                    p3 += kv[j + 3] * fv[step * (j + 3)];
                }
                for (; j < run; ++j) {
                    p0 += kv[j] * fv[step * j];
                }
                s += run;
                idx = (idx + step * run) % nt;
            }
            acc += coef[k] * ((p0 + p1) + (p2 + p3));
        }
        values[i] = acc;
    }

    // Real DFT on x_i = 2 pi i / nx.
    const std::size_t half = nx / 2;
    std::vector<double> a(half + 1, 0.0);
    std::vector<double> b(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
        double ca = 0.0;
        double cb = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            const double phase = 2.0 * kPi * static_cast<double>((k * i) % nx) / static_cast<double>(nx);
            ca += values[i] * std::cos(phase);
            cb += values[i] * std::sin(phase);
        }
        const double scale = (k == 0 || k == half) ? 1.0 / static_cast<double>(nx) : 2.0 / static_cast<double>(nx);
        a[k] = scale * ca;
        b[k] = (k == 0 || k == half) ? 0.0 : scale * cb;
    }

    double tail = 0.0;
    for (std::size_t k = static_cast<std::size_t>(n) + 1; k <= half; ++k) {
        tail = std::max({tail, std::abs(a[k]), std::abs(b[k])});
    }
    if (diag) {
        *diag = SmoothingDiagnostics{m, nx, nt, tail};
    }
    if (!(tail <= 1e-8 * f_scale)) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "smoothing operator output is not of degree " << n << ": coefficient tail " << tail
            << " exceeds 1e-8";
        throw NumericalError(msg.str());
    }

    TrigPoly out;
    out.a.assign(a.begin(), a.begin() + n + 1);
    out.b.assign(b.begin(), b.begin() + n + 1);
    out.b[0] = 0.0;
    return out;
}

RateExperiment jackson_rate_experiment(const PeriodicFn& f, int r, const std::vector<int>& n_list, const Norm& norm)
{
    if (n_list.empty()) {
        throw InputError("rate experiment needs at least one n");
    }
    constexpr std::size_t fine = 4096;
    std::vector<double> xs(fine);
    std::vector<double> w(fine, 2.0 * kPi / static_cast<double>(fine));
    std::vector<double> fx(fine);
    for (std::size_t i = 0; i < fine; ++i) {
        xs[i] = -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(fine);
        fx[i] = f(xs[i]);
    }

    auto run = [&](int n) {
        SmoothingDiagnostics diag;
        const TrigPoly s = apply_smoothing_operator(f, n, r, &diag);
        std::vector<double> err(fine);
        for (std::size_t i = 0; i < fine; ++i) {
            err[i] = s(xs[i]) - fx[i];
        }
        RateRow row;
        row.n = n;
        row.error = norm.is_sup() ? max_abs(err) : weighted_lp_norm(err, w, norm.p);
        row.omega = modulus_of_smoothness(f, r, norm, 1.0 / n);
        row.ratio = row.omega > 0.0 ? row.error / row.omega : 0.0;
        row.tail = diag.tail;
        return row;
    };

    std::vector<std::future<RateRow>> jobs;
    for (int n : n_list) {
        jobs.push_back(std::async(std::launch::async, run, n));
    }
    RateExperiment out;
    for (auto& j : jobs) {
        out.rows.push_back(j.get());
    }

    std::vector<double> ns;
    std::vector<double> es;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& row : out.rows) {
        ns.push_back(row.n);
        es.push_back(row.error);
        if (row.ratio > 0.0) {
            lo = std::min(lo, row.ratio);
            hi = std::max(hi, row.ratio);
        }
    }
    if (out.rows.size() >= 3) {
        out.fit = fit_rate(ns, es, true);
    }
    out.ratio_spread = hi > 0.0 ? hi / lo : 0.0;
    return out;
}

std::vector<double> chebyshev_transfer(const TrigPoly& poly)
{
    for (std::size_t k = 1; k < poly.b.size(); ++k) {
        if (std::abs(poly.b[k]) > 1e-12) {
            throw InputError("Chebyshev transfer needs a cosine polynomial (sine coefficient " + std::to_string(k) +
                             " is nonzero)");
        }
    }
    const std::size_t deg = poly.a.empty() ? 0 : poly.a.size() - 1;
    std::vector<double> out(deg + 1, 0.0);
    if (poly.a.empty()) {
        return out;
    }
    // P_0 = 1, P_1 = y/2, P_{k+1} = y P_k - P_{k-1}, so P_k(2 cos x) = cos kx.
    std::vector<double> prev{1.0};
    std::vector<double> cur{0.0, 0.5};
    out[0] += poly.a[0];
    for (std::size_t k = 1; k <= deg; ++k) {
        for (std::size_t j = 0; j < cur.size(); ++j) {
            out[j] += poly.a[k] * cur[j];
        }
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            next[j + 1] += cur[j];
        }
        for (std::size_t j = 0; j < prev.size(); ++j) {
            next[j] -= prev[j];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

} // namespace uatk
