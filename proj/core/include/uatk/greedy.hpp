#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uatk/grid.hpp"
#include "uatk/shallow_net.hpp"

namespace uatk {

// A finite dictionary G of functions sampled on one shared grid. When the
// atoms come from network units, the units are kept so that greedy results
// can be turned back into networks.
class Dictionary {
public:
    Dictionary(std::shared_ptr<const Grid> grid, std::vector<std::vector<double>> atoms, std::vector<Term> units = {});

    // Each unit sampled as an atom (one-term network).
    static Dictionary from_units(std::shared_ptr<const Grid> grid, std::size_t input_dim, std::vector<Term> units);

    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
    std::size_t size() const { return atoms_.size(); }
    std::span<const double> atom(std::size_t i) const { return atoms_.at(i); }
    const std::vector<Term>& units() const { return units_; }
    bool has_units() const { return !units_.empty(); }

    // s_G = max atom norm in L^p(grid); p defaults to 2.
    double s_G(double p = 2.0) const;

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<std::vector<double>> atoms_;
    std::vector<Term> units_;
};

// f = sum_j a_j atom_{i_j} with a_j >= 0 and sum a_j = 1.
struct ConvexTarget {
    std::shared_ptr<const Grid> grid;
    std::vector<std::size_t> indices;
    std::vector<double> weights;
    std::vector<double> f;

    static ConvexTarget make(const Dictionary& dict, std::vector<std::size_t> indices, std::vector<double> weights);
    static ConvexTarget uniform(const Dictionary& dict, std::vector<std::size_t> indices);
};

enum class GreedyAlgorithm { maurey, ks, ddgs };
std::string_view to_string(GreedyAlgorithm a);

struct GreedyStep {
    std::size_t step = 0;   // n, from 1
    std::size_t atom = 0;   // dictionary index picked at this step
    double alpha = 0.0;     // f_n = alpha f_{n-1} + (1 - alpha) atom
    double error = 0.0;     // e_n
    double bound = 0.0;     // certificate value at n
    // Line-search quantities (KS only): q_n = -<f - f_{n-1}, f - g>,
    // r_n = ||f - g||, rho_n = running minimum of q_n / (e_{n-1} r_n).
    double q = 0.0;
    double r = 0.0;
    double rho = 0.0;
};

struct GreedyTrace {
    GreedyAlgorithm algorithm = GreedyAlgorithm::maurey;
    std::vector<GreedyStep> steps;
    double tau = 0.0;        // KS: 1 - min rho_n^2 over n >= 2
    double r_support = 0.0;  // DDGS: max_j ||f - h_j||_p over the support
    bool exact_recovery = false;
};

struct GreedyResult {
    std::vector<double> combination;  // coefficient of each dictionary atom in f_n
    std::vector<double> approximant;  // f_n on the grid
    GreedyTrace trace;
};

// Stop once the error falls below this.
inline constexpr double kExactRecovery = 1e-13;

GreedyResult maurey_greedy(const ConvexTarget& target, const Dictionary& dict, std::size_t steps);
GreedyResult ks_greedy(const ConvexTarget& target, const Dictionary& dict, std::size_t steps);
GreedyResult ddgs_greedy(const ConvexTarget& target, const Dictionary& dict, double p, std::size_t steps);

double maurey_bound(double s_G, double f_norm, std::size_t n);
double ks_bound(double tau, double s_G, double f_norm, std::size_t n);
double ddgs_bound(double r, double p, std::size_t n);

struct LineSearch {
    double alpha = 0.0;
    double error_sq = 0.0;
};

// Optimal alpha for e^2 = ||f - f_{n-1}||^2, q = -<f - f_{n-1}, f - g>, r^2 = ||f - g||^2.
LineSearch ks_line_search(double q, double r_sq, double e_sq);

// Pi(v) = sum_i w_i sign(u_i) |u_i|^{p-1} v_i / ||u||_p^{p-1}, the norming
// functional of u in L^p with weights w. Zero when u = 0.
double duality_functional(std::span<const double> u, std::span<const double> v, std::span<const double> weights,
                          double p);

// sum_j |c_j| / |unit coefficient|, after matching every net term to a
// dictionary unit by (weight, bias, activation).
double g_variation_upper_bound(const ShallowNet& net, const Dictionary& dict);

// The greedy combination as a network. Needs a dictionary built from units.
ShallowNet to_net(const GreedyResult& result, const Dictionary& dict);

} // namespace uatk
