#include "orbitkit/schur_horn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace orbitkit {

DoublyStochasticMatrix::DoublyStochasticMatrix(int n, std::vector<double> entries)
    : n_(n), a_(std::move(entries)) {
    if (n < 1) throw DomainError("DoublyStochasticMatrix: dimension must be >= 1");
    if (a_.size() != static_cast<size_t>(n) * n)
        throw DomainError("DoublyStochasticMatrix: entry count mismatch");
    for (double& x : a_) {
        if (!std::isfinite(x) || x < -1e-12 || x > 1.0 + 1e-12)
            throw DomainError("DoublyStochasticMatrix: entry outside [0, 1] tolerance band");
        x = std::clamp(x, 0.0, 1.0);
    }
    for (int i = 0; i < n_; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < n_; ++j) {
            row += at(i, j);
            col += at(j, i);
        }
        if (std::abs(row - 1.0) > 1e-10 || std::abs(col - 1.0) > 1e-10) {
            std::ostringstream os;
            os << "DoublyStochasticMatrix: line " << i << " sums to " << row << " / " << col;
            throw DomainError(os.str());
        }
    }
}

double BirkhoffDecomposition::weight_sum() const {
    double s = 0.0;
    for (const auto& [w, p] : terms) s += w;
    return s;
}

std::vector<double> BirkhoffDecomposition::reconstruct(int n) const {
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (const auto& [w, p] : terms)
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + p[i]] += w;
    return m;
}

DoublyStochasticMatrix unistochastic(const UnitaryMatrix& u) {
    const int n = u.dim();
    std::vector<double> q(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q[static_cast<size_t>(i) * n + j] = std::norm(u.at(i, j));
    return DoublyStochasticMatrix(n, std::move(q));
}

bool is_majorized(const std::vector<double>& v, const Spectrum& lam) {
    const int n = lam.size();
    if (static_cast<int>(v.size()) != n) throw DomainError("is_majorized: length mismatch");
    std::vector<double> vs = v;
    std::sort(vs.begin(), vs.end(), std::greater<>());
    const double tol = 1e-9;
    double pv = 0.0, pl = 0.0;
    for (int k = 0; k < n; ++k) {
        pv += vs[k];
        pl += lam[n - 1 - k]; // lam descending
        if (k < n - 1 && pv > pl + tol) return false;
    }
    return std::abs(pv - pl) <= tol;
}

namespace {

// Kuhn augmenting-path bipartite matching on the support graph.
bool try_augment(int row, const std::vector<std::vector<int>>& adj, std::vector<int>& row_of_col,
                 std::vector<bool>& visited) {
    for (int col : adj[row]) {
        if (visited[col]) continue;
        visited[col] = true;
        if (row_of_col[col] < 0 || try_augment(row_of_col[col], adj, row_of_col, visited)) {
            row_of_col[col] = row;
            return true;
        }
    }
    return false;
}

// Perfect matching over entries above threshold; returns col-per-row or
// empty when none exists.
std::vector<int> perfect_matching(const std::vector<double>& a, int n, double threshold) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a[static_cast<size_t>(i) * n + j] > threshold) adj[i].push_back(j);
    std::vector<int> row_of_col(n, -1);
    for (int i = 0; i < n; ++i) {
        std::vector<bool> visited(n, false);
        if (!try_augment(i, adj, row_of_col, visited)) return {};
    }
    std::vector<int> col_of_row(n, -1);
    for (int j = 0; j < n; ++j) col_of_row[row_of_col[j]] = j;
    return col_of_row;
}

} // namespace

BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& q) {
    const int n = q.dim();
    const int max_terms = (n - 1) * (n - 1) + 1;
    const double support_tol = 1e-12;
    const double stop_tol = 1e-10;

    std::vector<double> r = q.entries();
    BirkhoffDecomposition out;
    for (int iter = 0; iter < max_terms; ++iter) {
        double maxentry = 0.0;
        for (double x : r) maxentry = std::max(maxentry, x);
        if (maxentry <= stop_tol) break;

        std::vector<int> match = perfect_matching(r, n, support_tol);
        if (match.empty())
            throw NumericalError("birkhoff_decompose: no perfect matching on positive support; "
                                 "input violates the doubly stochastic tolerance");
        double w = 1.0;
        for (int i = 0; i < n; ++i) w = std::min(w, r[static_cast<size_t>(i) * n + match[i]]);
        out.terms.emplace_back(w, Permutation(match));
        for (int i = 0; i < n; ++i) {
            double& x = r[static_cast<size_t>(i) * n + match[i]];
            x = (x - w <= support_tol) ? 0.0 : x - w;
        }
    }
    double maxres = 0.0;
    for (double x : r) maxres = std::max(maxres, x);
    if (maxres > 1e-8)
        throw NumericalError("birkhoff_decompose: residual above tolerance after term budget");
    return out;
}

UnitaryMatrix horn_construct(const std::vector<double>& v, const Spectrum& lam) {
    const int n = lam.size();
    if (static_cast<int>(v.size()) != n) throw DomainError("horn_construct: length mismatch");
    if (!is_majorized(v, lam)) {
        // locate the failing partial sum for the diagnostic
        std::vector<double> vs = v;
        std::sort(vs.begin(), vs.end(), std::greater<>());
        double pv = 0.0, pl = 0.0;
        std::ostringstream os;
        os << "horn_construct: v is not majorized by lambda";
        for (int k = 0; k < n; ++k) {
            pv += vs[k];
            pl += lam[n - 1 - k];
            if (pv > pl + 1e-9) {
                os << " (top-" << (k + 1) << " partial sum " << pv << " > " << pl << ")";
                break;
            }
        }
        throw DomainError(os.str());
    }

    // Working diagonal values live at matrix slots; each step retires one
    // target via the 2x2 rotation kernel on a bracketing pair of slots.
    std::vector<double> slot_value = lam.values();
    std::vector<bool> active(n, true);
    std::vector<int> target_slot(n, -1); // input position -> slot holding it

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });

    ComplexMatrix u = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, std::max(std::abs(lam[0]), std::abs(lam[n - 1])));

    for (int step = 0; step < n; ++step) {
        const int pos = order[step];
        const double target = v[pos];
        if (step == n - 1) {
            // last remaining slot holds the final target by trace identity
            for (int s = 0; s < n; ++s)
                if (active[s]) {
                    target_slot[pos] = s;
                    active[s] = false;
                }
            break;
        }
        // bracketing pair among active slots: largest value <= target and
        // smallest value >= target
        int lo = -1, hi = -1;
        for (int s = 0; s < n; ++s) {
            if (!active[s]) continue;
            const double d = slot_value[s];
            if (d <= target + 1e-12 * scale && (lo < 0 || d > slot_value[lo])) lo = s;
            if (d >= target - 1e-12 * scale && (hi < 0 || d < slot_value[hi])) hi = s;
        }
        // inputs at the majorization tolerance boundary may overshoot the
        // active range by O(1e-9); fall back to the nearest slot
        if (lo < 0 || hi < 0) {
            int nearest = -1;
            for (int s = 0; s < n; ++s)
                if (active[s] && (nearest < 0 || std::abs(slot_value[s] - target) <
                                                     std::abs(slot_value[nearest] - target)))
                    nearest = s;
            if (nearest < 0 || std::abs(slot_value[nearest] - target) > 2e-9 * scale)
                throw NumericalError("horn_construct: no bracketing pair; majorization "
                                     "tolerance too loose for this input");
            if (lo < 0) lo = nearest;
            if (hi < 0) hi = nearest;
        }
        if (lo == hi || std::abs(slot_value[hi] - slot_value[lo]) <= 1e-14 * scale) {
            // target equals an available value; retire without rotation
            target_slot[pos] = lo;
            active[lo] = false;
            slot_value[lo] = target;
            continue;
        }
        const double di = slot_value[lo];
        const double dj = slot_value[hi];
        const double t = std::clamp((target - di) / (dj - di), 0.0, 1.0);
        const double c = std::sqrt(1.0 - t);
        const double s = std::sqrt(t);
        // rotation G on slots (lo, hi): G = [[c, s], [-s, c]] embedded;
        // diag of G diag(di, dj) G* is (target, di + dj - target)
        for (int k = 0; k < n; ++k) {
            const cplx ulo = u.at(lo, k);
            const cplx uhi = u.at(hi, k);
            u.at(lo, k) = c * ulo + s * uhi;
            u.at(hi, k) = -s * ulo + c * uhi;
        }
        target_slot[pos] = lo;
        active[lo] = false;
        slot_value[lo] = target;
        slot_value[hi] = di + dj - target;
    }

    // permute slots into input positions: P e_{slot(k)} = e_k
    ComplexMatrix p(n);
    for (int k = 0; k < n; ++k) p.at(k, target_slot[k]) = 1.0;
    return UnitaryMatrix(p.multiply(u));
}

OrbitLinearMinimum min_orbit_linear(const Spectrum& lam, const std::vector<double>& z) {
    const int n = lam.size();
    if (static_cast<int>(z.size()) != n) throw DomainError("min_orbit_linear: length mismatch");
    std::vector<int> zorder(n);
    std::iota(zorder.begin(), zorder.end(), 0);
    std::stable_sort(zorder.begin(), zorder.end(), [&](int a, int b) { return z[a] > z[b]; });
    // descending z takes ascending lam ranks (stable over z ties)
    std::vector<int> mapping(n);
    double value = 0.0;
    for (int k = 0; k < n; ++k) {
        mapping[zorder[k]] = k;
        value += lam[k] * z[zorder[k]];
    }
    // equal lam values make rank choice free; put ascending ranks at
    // ascending positions so the mapping is lexicographically smallest
    std::vector<int> pos_of_rank(n);
    for (int pos = 0; pos < n; ++pos) pos_of_rank[mapping[pos]] = pos;
    int r0 = 0;
    while (r0 < n) {
        int r1 = r0 + 1;
        while (r1 < n && lam[r1] == lam[r0]) ++r1;
        if (r1 - r0 > 1) {
            std::vector<int> ps(pos_of_rank.begin() + r0, pos_of_rank.begin() + r1);
            std::sort(ps.begin(), ps.end());
            for (int k = 0; k < r1 - r0; ++k) mapping[ps[k]] = r0 + k;
        }
        r0 = r1;
    }
    return OrbitLinearMinimum{value, Permutation(std::move(mapping))};
}

MinEigenvalue min_eigenvalue(const HermitianMatrix& a) {
    const EighResult e = eigh(a);
    const int n = a.dim();
    std::vector<cplx> w(n);
    for (int i = 0; i < n; ++i) w[i] = e.eigenvectors.at(i, 0);
    return MinEigenvalue{e.eigenvalues[0], std::move(w)};
}

} // namespace orbitkit
