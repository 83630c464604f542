#include "orbitkit/divided_difference.hpp"

#include <algorithm>
#include <cmath>

#include "orbitkit/errors.hpp"

namespace orbitkit::dd {

std::vector<double> complete_homogeneous(const std::vector<double>& values, int max_degree) {
    std::vector<double> h(static_cast<size_t>(max_degree) + 1, 0.0);
    h[0] = 1.0;
    for (double x : values)
        for (int m = 1; m <= max_degree; ++m) h[m] += x * h[m - 1];
    return h;
}

namespace {

double node_scale(const std::vector<double>& nodes) {
    double m = 0.0;
    for (double x : nodes) m = std::max(m, std::abs(x));
    return std::max(1.0, m);
}

// Taylor limit of f[x_a..x_b] for f(x) = exp(-t*x) on a tight node cluster:
// expand around the cluster midpoint c,
//   f[cluster] = exp(-t*c) * sum_{m>=0} (-t)^(p+m)/(p+m)! * h_m(x_i - c)
// where p is the cluster order (#nodes - 1).
double taylor_cluster(const std::vector<double>& nodes, int a, int b, double t) {
    const int p = b - a;
    const double c = 0.5 * (nodes[a] + nodes[b]);
    std::vector<double> shifted(nodes.begin() + a, nodes.begin() + b + 1);
    for (double& x : shifted) x -= c;
    const std::vector<double> h = complete_homogeneous(shifted, kTaylorTerms - 1);

    // coeff_m = (-t)^(p+m) / (p+m)!
    double coeff = 1.0;
    for (int k = 1; k <= p; ++k) coeff *= -t / k;
    double sum = 0.0;
    for (int m = 0; m < kTaylorTerms; ++m) {
        sum += coeff * h[m];
        coeff *= -t / (p + m + 1);
    }
    return std::exp(-t * c) * sum;
}

} // namespace

ExpDDTable::ExpDDTable(std::vector<double> nodes, double t)
    : n_(static_cast<int>(nodes.size())), nodes_(std::move(nodes)), t_(t) {
    if (n_ == 0) throw DomainError("ExpDDTable: empty node vector");
    for (double x : nodes_)
        if (!std::isfinite(x)) throw DomainError("ExpDDTable: non-finite node");
    std::sort(nodes_.begin(), nodes_.end());
    gap_threshold_ = kConfluentRelGap * node_scale(nodes_);

    constexpr double eps = 2.3e-16;
    tab_.assign(static_cast<size_t>(n_) * n_, 0.0);
    noise_.assign(tab_.size(), 0.0);
    for (int a = 0; a < n_; ++a) {
        tab_[idx(a, a)] = std::exp(-t_ * nodes_[a]);
        noise_[idx(a, a)] = eps * std::abs(tab_[idx(a, a)]);
    }
    for (int len = 1; len < n_; ++len) {
        for (int a = 0; a + len < n_; ++a) {
            const int b = a + len;
            const double span = nodes_[b] - nodes_[a];
            if (span < gap_threshold_) {
                tab_[idx(a, b)] = taylor_cluster(nodes_, a, b, t_);
                noise_[idx(a, b)] = 8.0 * eps * std::abs(tab_[idx(a, b)]);
            } else {
                tab_[idx(a, b)] = (tab_[idx(a + 1, b)] - tab_[idx(a, b - 1)]) / span;
                noise_[idx(a, b)] = (noise_[idx(a + 1, b)] + noise_[idx(a, b - 1)]) / span +
                                    eps * std::abs(tab_[idx(a, b)]);
            }
        }
    }
}

std::vector<double> ExpDDTable::leading() const {
    std::vector<double> r(n_);
    for (int j = 0; j < n_; ++j) r[j] = tab_[idx(0, j)];
    return r;
}

double dd_exp(const std::vector<double>& nodes, double t) {
    const int k = static_cast<int>(nodes.size());
    if (k == 0) throw DomainError("dd_exp: empty node vector");
    if (k == 1) return std::exp(-t * nodes[0]);
    const ExpDDTable table(nodes, t);
    const double value = table.cell(0, k - 1);
    // the running bound overestimates the observed error by 1-2 orders;
    // past 0.05 relative the value has no trustworthy digits left
    if (table.noise(0, k - 1) > 0.05 * std::abs(value))
        throw NumericalError("dd_exp: rounding bound swamps the divided difference; the "
                             "node count and spread exceed double-precision desk scale");
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    return sign * value;
}

std::vector<double> poly_dd_leading(const std::vector<double>& nodes, int q) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> r(n, 0.0);
    // (-1)^q / q!
    double scale = 1.0;
    for (int k = 1; k <= q; ++k) scale /= -k;
    // dd of x^q over s+1 nodes is h_{q-s}(x_0..x_s); build incrementally.
    std::vector<double> h(static_cast<size_t>(q) + 1, 0.0);
    h[0] = 1.0;
    for (int s = 0; s < n; ++s) {
        const double x = nodes[s];
        for (int m = 1; m <= q; ++m) h[m] += x * h[m - 1];
        if (s <= q) r[s] = scale * h[q - s];
    }
    return r;
}

} // namespace orbitkit::dd
