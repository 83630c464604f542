#include "orbitkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace orbitkit {

ComplexMatrix::ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
    if (n < 1) throw DomainError("ComplexMatrix: dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(int n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw DomainError("ComplexMatrix: dimension must be >= 1");
    if (a_.size() != static_cast<size_t>(n) * n)
        throw DomainError("ComplexMatrix: entry count does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : a_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::multiply(const ComplexMatrix& rhs) const {
    if (rhs.n_ != n_) throw DomainError("ComplexMatrix::multiply: dimension mismatch");
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n_; ++j) r.at(i, j) += aik * rhs.at(k, j);
        }
    }
    return r;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.all_finite()) throw DomainError("HermitianMatrix: non-finite entry");
    const int n = m_.dim();
    const double scale = m_.max_abs();
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            dev = std::max(dev, std::abs(m_.at(i, j) - std::conj(m_.at(j, i))));
    if (dev > kHermitianTol * std::max(scale, 1.0)) {
        std::ostringstream os;
        os << "HermitianMatrix: |A - A*| deviation " << dev << " exceeds tolerance "
           << kHermitianTol * std::max(scale, 1.0);
        throw DomainError(os.str());
    }
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::zero(int n) { return HermitianMatrix(ComplexMatrix(n)); }

std::vector<double> HermitianMatrix::real_diagonal() const {
    std::vector<double> d(dim());
    for (int i = 0; i < dim(); ++i) d[i] = m_.at(i, i).real();
    return d;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.all_finite()) throw DomainError("UnitaryMatrix: non-finite entry");
    const int n = m_.dim();
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += m_.at(i, k) * std::conj(m_.at(j, k));
            if (i == j) s -= 1.0;
            dev = std::max(dev, std::abs(s));
        }
    }
    if (dev > kUnitaryTol) {
        std::ostringstream os;
        os << "UnitaryMatrix: |UU* - I| deviation " << dev << " exceeds " << kUnitaryTol;
        throw DomainError(os.str());
    }
}

UnitaryMatrix UnitaryMatrix::identity(int n) { return UnitaryMatrix(ComplexMatrix::identity(n)); }

HermitianMatrix UnitaryMatrix::conjugate(const HermitianMatrix& a) const {
    if (a.dim() != dim()) throw DomainError("UnitaryMatrix::conjugate: dimension mismatch");
    ComplexMatrix x = m_.multiply(a.matrix()).multiply(m_.adjoint());
    for (int i = 0; i < x.dim(); ++i) {
        for (int j = i; j < x.dim(); ++j) {
            const cplx z = 0.5 * (x.at(i, j) + std::conj(x.at(j, i)));
            x.at(i, j) = z;
            x.at(j, i) = std::conj(z);
        }
        x.at(i, i) = x.at(i, i).real();
    }
    return HermitianMatrix(std::move(x));
}

Spectrum::Spectrum(std::vector<double> values) : v_(std::move(values)) {
    if (v_.empty()) throw DomainError("Spectrum: empty");
    for (double x : v_)
        if (!std::isfinite(x)) throw DomainError("Spectrum: non-finite eigenvalue");
    std::sort(v_.begin(), v_.end());
    min_gap_ = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < v_.size(); ++i) min_gap_ = std::min(min_gap_, v_[i] - v_[i - 1]);
    if (v_.size() == 1) min_gap_ = std::numeric_limits<double>::infinity();
}

double Spectrum::sum() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    const int n = static_cast<int>(map_.size());
    std::vector<bool> seen(n, false);
    for (int x : map_) {
        if (x < 0 || x >= n || seen[x]) throw DomainError("Permutation: mapping is not a bijection");
        seen[x] = true;
    }
    // parity from cycle decomposition
    std::vector<bool> visited(n, false);
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
        if (visited[i]) continue;
        int len = 0;
        for (int j = i; !visited[j]; j = map_[j]) {
            visited[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    sign_ = (transpositions % 2 == 0) ? 1 : -1;
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

std::vector<double> Permutation::apply(const std::vector<double>& v) const {
    if (v.size() != map_.size()) throw DomainError("Permutation::apply: length mismatch");
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[map_[i]];
    return r;
}

namespace {

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

EighResult eigh(const HermitianMatrix& input) {
    const int n = input.dim();
    ComplexMatrix a = input.matrix();
    ComplexMatrix w = ComplexMatrix::identity(n);

    const double norm = frobenius_norm(a);
    const double tol = 1e-13 * std::max(norm, 1e-300);
    const int max_sweeps = 50;

    int sweep = 0;
    while (off_diagonal_frobenius(a) > tol && sweep < max_sweeps) {
        ++sweep;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq <= 1e-300) continue;
                // phase factor mapping the 2x2 block to a real symmetric one
                const cplx phase = apq / abs_apq;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * abs_apq);
                double t;
                if (tau >= 0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // column rotation: col_p' = c*col_p - s*conj(phase)*col_q,
                //                  col_q' = s*phase*col_p + c*col_q
                const cplx sp = s * phase;
                const cplx spc = s * std::conj(phase);
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = c * akp - spc * akq;
                    a.at(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a.at(p, k);
                    const cplx aqk = a.at(q, k);
                    a.at(p, k) = c * apk - sp * aqk;
                    a.at(q, k) = spc * apk + c * aqk;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = a.at(p, p).real();
                a.at(q, q) = a.at(q, q).real();
                for (int k = 0; k < n; ++k) {
                    const cplx wkp = w.at(k, p);
                    const cplx wkq = w.at(k, q);
                    w.at(k, p) = c * wkp - spc * wkq;
                    w.at(k, q) = sp * wkp + c * wkq;
                }
            }
        }
    }
    const double residual = off_diagonal_frobenius(a);
    if (residual > tol) {
        std::ostringstream os;
        os << "eigh: Jacobi sweeps did not converge; off-diagonal residual " << residual
           << " after " << max_sweeps << " sweeps (tolerance " << tol << ")";
        throw NumericalError(os.str());
    }

    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a.at(i, i).real();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });

    ComplexMatrix sorted(n);
    std::vector<double> sorted_vals(n);
    for (int j = 0; j < n; ++j) {
        sorted_vals[j] = vals[order[j]];
        for (int i = 0; i < n; ++i) sorted.at(i, j) = w.at(i, order[j]);
    }
    return EighResult{Spectrum(std::move(sorted_vals)), UnitaryMatrix(std::move(sorted))};
}

namespace {

// Partial-pivoted elimination; fills (sign, log|det|) and also the plain value.
struct DetResult {
    int sign;
    double log_abs;
};

DetResult lu_det(ComplexMatrix a) {
    const int n = a.dim();
    int sign = 1;
    double log_abs = 0.0;
    cplx phase = 1.0; // accumulated complex phase of the determinant
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return {0, -std::numeric_limits<double>::infinity()};
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        const cplx akk = a.at(k, k);
        log_abs += std::log(std::abs(akk));
        phase *= akk / std::abs(akk);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = a.at(i, k) / akk;
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    // For real-valued inputs phase is +-1; fold it into the sign.
    if (phase.real() < 0) sign = -sign;
    return {sign, log_abs};
}

} // namespace

cplx det_complex(const ComplexMatrix& m) {
    const int n = m.dim();
    if (n == 1) return m.at(0, 0);
    ComplexMatrix a = m;
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            det = -det;
        }
        const cplx akk = a.at(k, k);
        det *= akk;
        for (int i = k + 1; i < n; ++i) {
            const cplx f = a.at(i, k) / akk;
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return det;
}

std::pair<int, double> det_sign_log(const ComplexMatrix& m) {
    const DetResult r = lu_det(m);
    return {r.sign, r.log_abs};
}

double vandermonde(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) return 1.0;
    // evaluate over sorted values in a fixed order and put the sorting
    // parity back, so permuting the input flips only the sign (exactly)
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
    std::vector<bool> visited(n, false);
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
        if (visited[i]) continue;
        int len = 0;
        for (int j = i; !visited[j]; j = order[j]) {
            visited[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    double p = (transpositions % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= x[order[i]] - x[order[j]];
    return p;
}

double frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw DomainError("frobenius_inner: dimension mismatch");
    const int n = a.dim();
    cplx tr = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) tr += a.at(i, k) * b.at(k, i);
    const double scale = std::max(1.0, n * a.matrix().max_abs() * b.matrix().max_abs());
    if (std::abs(tr.imag()) > 1e-12 * scale)
        throw NumericalError("frobenius_inner: imaginary residual above tolerance");
    return tr.real();
}

} // namespace orbitkit
