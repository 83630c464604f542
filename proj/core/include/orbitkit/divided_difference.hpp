#ifndef ORBITKIT_DIVIDED_DIFFERENCE_HPP
#define ORBITKIT_DIVIDED_DIFFERENCE_HPP

#include <vector>

namespace orbitkit::dd {

/// Relative node-gap threshold below which a table cell switches from the
/// difference quotient to the truncated-Taylor derivative limit.
inline constexpr double kConfluentRelGap = 1e-6;
inline constexpr int kTaylorTerms = 20;

/// Complete homogeneous symmetric polynomials h_0..h_max_degree of the
/// given values (h_0 = 1, h_m = sum of all degree-m monomials).
std::vector<double> complete_homogeneous(const std::vector<double>& values, int max_degree);

/// Upper-triangular divided-difference table of f(x) = exp(-t*x) over the
/// given nodes (any order, repeats allowed). Cell (a,b) holds
/// f[x_a,...,x_b]; near-coincident spans use the Taylor limit so the table
/// is continuous across node collisions.
///
/// A first-order rounding bound runs alongside the recursion; callers can
/// refuse results whose noise bound swamps them.
class ExpDDTable {
public:
    ExpDDTable(std::vector<double> nodes, double t);

    int size() const { return n_; }
    /// f[x_a,...,x_b], 0 <= a <= b < size().
    double cell(int a, int b) const { return tab_[idx(a, b)]; }
    /// Accumulated rounding bound for cell (a,b).
    double noise(int a, int b) const { return noise_[idx(a, b)]; }
    /// Leading divided differences f[x_0..x_j] for j = 0..n-1.
    std::vector<double> leading() const;

private:
    size_t idx(int a, int b) const { return static_cast<size_t>(a) * n_ + b; }
    int n_;
    std::vector<double> nodes_;
    double t_;
    double gap_threshold_;
    std::vector<double> tab_;
    std::vector<double> noise_;
};

/// Divided difference of x -> exp(-t*x) in the spec sign convention:
///   sum_i exp(-t*x_i) / prod_{j!=i} (x_j - x_i)
/// which is (-1)^(k-1) times the standard divided difference over k nodes,
/// and equals the k-fold convolution of one-sided exponentials at t.
/// Continuous in the nodes; repeats take the derivative limit.
double dd_exp(const std::vector<double>& nodes, double t);

/// Divided differences of the scaled monomial (-x)^q / q! over leading node
/// prefixes: result[s] = p_q[x_0..x_s] for s = 0..n-1 (exact symmetric-
/// function formula; zero for s > q).
std::vector<double> poly_dd_leading(const std::vector<double>& nodes, int q);

} // namespace orbitkit::dd

#endif
