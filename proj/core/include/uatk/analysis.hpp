#pragma once

#include <span>
#include <string>
#include <vector>

namespace uatk {

// Least-squares line through (log n, log error).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> n_values;  // pairs actually used
    std::vector<double> errors;
};

// Needs at least 3 usable pairs. Nonpositive errors are an InputError unless
// drop_nonpositive is set, in which case those pairs are skipped.
RateFit fit_rate(std::span<const double> n_values, std::span<const double> errors, bool drop_nonpositive = false);

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

// lhs <= rhs up to 1e-12 (|lhs| + |rhs| + 1).
bool inequality_holds(double lhs, double rhs);

// ||f+g||^a + ||f-g||^a <= 2 (||f||^a + ||g||^a), a = min(p, p/(p-1)), in
// L^p with quadrature weights w. p in (1, inf).
InequalityReport check_clarkson(std::span<const double> f, std::span<const double> g, std::span<const double> w,
                                double p);

// ||fg||_1 <= ||f||_p ||g||_q with 1/p + 1/q = 1; p = 1 pairs with sup|g|
// and p = inf with ||g||_1.
InequalityReport check_holder(std::span<const double> f, std::span<const double> g, std::span<const double> w,
                              double p);

// (int_X |int_Y F dnu|^p dmu)^(1/p) <= int_Y (int_X |F|^p dmu)^(1/p) dnu.
// F is row-major with wx.size() rows and wy.size() columns.
InequalityReport check_minkowski_integral(std::span<const double> F, std::span<const double> wx,
                                          std::span<const double> wy, double p);

} // namespace uatk
