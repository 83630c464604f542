#include "orbitkit/hciz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "orbitkit/divided_difference.hpp"
#include "orbitkit/errors.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/quadrature.hpp"

namespace orbitkit {

InterlacingVector::InterlacingVector(std::vector<double> values, Spectrum parent)
    : v_(std::move(values)), parent_(std::move(parent)) {
    if (!interlaces(v_, parent_))
        throw DomainError("InterlacingVector: values do not interlace the parent spectrum");
}

bool interlaces(const std::vector<double>& a, const Spectrum& lam) {
    const int n = lam.size();
    if (static_cast<int>(a.size()) != n - 1) throw DomainError("interlaces: length mismatch");
    const double slack =
        1e-12 * std::max(1.0, std::max(std::abs(lam[0]), std::abs(lam[n - 1])));
    for (int i = 0; i + 1 < n; ++i)
        if (a[i] < lam[i] - slack || a[i] > lam[i + 1] + slack) return false;
    return true;
}

namespace {

double log_superfactorial(int n) {
    double s = 0.0;
    for (int p = 2; p <= n - 1; ++p) s += std::lgamma(p + 1.0);
    return s;
}

int half_pair_sign(int n) { return (n * (n - 1) / 2) % 2 == 0 ? 1 : -1; }

struct LogValue {
    double log_abs;
    int sign;
};

// Plain determinant-ratio path on shifted (min = 0), strictly gapped
// spectra. Returns nothing when elimination loses the sign, which sends
// the caller to the confluent path.
std::optional<LogValue> plain_log_ratio(const std::vector<double>& y,
                                        const std::vector<double>& lam) {
    const int n = static_cast<int>(y.size());
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = std::exp(-y[i] * lam[j]);
    const auto [dsign, dlog] = det_sign_log(m);
    if (dsign == 0 || !std::isfinite(dlog)) return std::nullopt;
    double log_denom = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            log_denom += std::log(y[j] - y[i]) + std::log(lam[j] - lam[i]);
    const int denom_sign = half_pair_sign(n); // sign of prod_{i<j} -(y_i-y_j)(lam_i-lam_j)
    const int sign = dsign * denom_sign;
    if (sign <= 0) return std::nullopt; // cancellation artifact: value must be positive
    return LogValue{log_superfactorial(n) + dlog - log_denom, sign};
}

// Two-direction divided-difference matrix
//   H[i][j] = dd over y_0..y_i of ( dd over lam_0..lam_j of exp(-u x) )
// built column-direction first; y-direction cluster cells use the Taylor
// derivative limit, whose u-derivatives come from the divided-difference
// Leibniz rule against the polynomial (-x)^q / q!.
class ConfluentBuilder {
public:
    ConfluentBuilder(std::vector<double> y, std::vector<double> lam)
        : y_(std::move(y)), mu_(std::move(lam)), n_(static_cast<int>(y_.size())) {
        double yscale = 1.0;
        for (double v : y_) yscale = std::max(yscale, std::abs(v));
        ygap_ = dd::kConfluentRelGap * yscale;
    }

    // rows of H, i = 0..n-1
    std::vector<std::vector<double>> build() {
        // V[a][b] = vector over j; dd over y_a..y_b of Phi(u)[j]
        std::vector<std::vector<std::vector<double>>> v(
            n_, std::vector<std::vector<double>>(n_));
        for (int a = 0; a < n_; ++a) v[a][a] = stage_a(y_[a], 0);
        for (int len = 1; len < n_; ++len) {
            for (int a = 0; a + len < n_; ++a) {
                const int b = a + len;
                const double span = y_[b] - y_[a];
                if (span >= ygap_) {
                    v[a][b].resize(n_);
                    for (int j = 0; j < n_; ++j)
                        v[a][b][j] = (v[a + 1][b][j] - v[a][b - 1][j]) / span;
                } else {
                    v[a][b] = taylor_cell(a, b);
                }
            }
        }
        std::vector<std::vector<double>> h(n_);
        for (int i = 0; i < n_; ++i) h[i] = v[0][i];
        return h;
    }

private:
    // A_q(u)[j] = dd over lam_0..lam_j of (-x)^q/q! * exp(-u x)
    std::vector<double> stage_a(double u, int q) const {
        const dd::ExpDDTable table(mu_, u);
        if (q == 0) return table.leading();
        const std::vector<double> p = dd::poly_dd_leading(mu_, q);
        std::vector<double> a(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            const int smax = std::min(j, q);
            double s = 0.0;
            for (int t = 0; t <= smax; ++t) s += p[t] * table.cell(t, j);
            a[j] = s;
        }
        return a;
    }

    std::vector<double> taylor_cell(int a, int b) const {
        const int p = b - a;
        const double c = 0.5 * (y_[a] + y_[b]);
        std::vector<double> shifted(y_.begin() + a, y_.begin() + b + 1);
        for (double& x : shifted) x -= c;
        const std::vector<double> h = dd::complete_homogeneous(shifted, dd::kTaylorTerms - 1);
        std::vector<double> out(n_, 0.0);
        for (int m = 0; m < dd::kTaylorTerms; ++m) {
            if (h[m] == 0.0 && m > 0) continue;
            const std::vector<double> aq = stage_a(c, p + m);
            for (int j = 0; j < n_; ++j) out[j] += aq[j] * h[m];
        }
        return out;
    }

    std::vector<double> y_;
    std::vector<double> mu_;
    int n_;
    double ygap_;
};

LogValue confluent_log_ratio(const std::vector<double>& y, const std::vector<double>& lam) {
    const int n = static_cast<int>(y.size());
    ConfluentBuilder builder(y, lam);
    const std::vector<std::vector<double>> h = builder.build();
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = h[i][j];
    const auto [dsign, dlog] = det_sign_log(m);
    const int sign = dsign * half_pair_sign(n);
    if (sign <= 0 || !std::isfinite(dlog))
        throw NumericalError("hciz_det: confluent determinant lost positivity");
    return LogValue{log_superfactorial(n) + dlog, sign};
}

struct ShiftedProblem {
    std::vector<double> y;
    std::vector<double> lam;
    double log_pref;
};

ShiftedProblem shift_to_origin(const Spectrum& y, const Spectrum& lam) {
    ShiftedProblem s;
    s.y = y.values();
    s.lam = lam.values();
    const double a = s.y.front();
    const double b = s.lam.front();
    for (double& v : s.y) v -= a;
    double ysum = 0.0;
    for (double v : s.y) ysum += v;
    s.log_pref = -(a * lam.sum() + b * ysum);
    for (double& v : s.lam) v -= b;
    if (std::abs(s.log_pref) > 700.0) {
        std::ostringstream os;
        os << "exponent " << s.log_pref << " overflows exp(); shift the spectra and use "
           << "hciz(y + c, lam) = exp(-c * sum(lam)) * hciz(y, lam)";
        throw OverflowError(os.str());
    }
    return s;
}

} // namespace

double hciz_det(const Spectrum& y, const Spectrum& lam) {
    const int n = y.size();
    if (lam.size() != n) throw DomainError("hciz_det: spectra must have equal length");
    if (n == 1) {
        const double e = -y[0] * lam[0];
        if (std::abs(e) > 700.0)
            throw OverflowError("hciz_det: exponent overflows exp(); use the shift identity");
        return std::exp(e);
    }
    // constant spectra give the integrand exactly; this also makes
    // hciz_det(0, lam) == 1 bit-exact
    if (y.spread() == 0.0) {
        const double e = -y[0] * lam.sum();
        if (std::abs(e) > 700.0)
            throw OverflowError("hciz_det: exponent overflows exp(); use the shift identity");
        return std::exp(e);
    }
    if (lam.spread() == 0.0) {
        const double e = -lam[0] * y.sum();
        if (std::abs(e) > 700.0)
            throw OverflowError("hciz_det: exponent overflows exp(); use the shift identity");
        return std::exp(e);
    }

    const ShiftedProblem s = shift_to_origin(y, lam);
    const bool gapped = y.min_gap() >= dd::kConfluentRelGap * y.spread() &&
                        lam.min_gap() >= dd::kConfluentRelGap * lam.spread();
    LogValue lv{0.0, 0};
    if (gapped) {
        const std::optional<LogValue> plain = plain_log_ratio(s.y, s.lam);
        if (plain)
            lv = *plain;
        else
            lv = confluent_log_ratio(s.y, s.lam); // cancellation fallback, never surfaced
    } else {
        lv = confluent_log_ratio(s.y, s.lam);
    }
    const double value = std::exp(s.log_pref + lv.log_abs);
    if (!(value > 0.0) || !std::isfinite(value))
        throw NumericalError("hciz_det: value left the double range");
    return value;
}

double hciz_weyl_sum(const Spectrum& y, const Spectrum& lam) {
    const int n = y.size();
    if (lam.size() != n) throw DomainError("hciz_weyl_sum: spectra must have equal length");
    if (!y.distinct() || !lam.distinct())
        throw DomainError("hciz_weyl_sum: repeated spectrum; use hciz_det, whose confluent "
                          "path handles coincident eigenvalues");
    if (n > 9) throw SizeError("hciz_weyl_sum: n > 9 means more than 9! terms; use hciz_det");
    if (n == 1) return hciz_det(y, lam);

    const ShiftedProblem s = shift_to_origin(y, lam);

    // signed exponents over S_n via Heap's algorithm (each swap flips sign)
    std::vector<double> exps;
    std::vector<int> signs;
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> ctr(n, 0);
        int sign = 1;
        auto emit = [&]() {
            double e = 0.0;
            for (int i = 0; i < n; ++i) e -= s.y[i] * s.lam[perm[i]];
            exps.push_back(e);
            signs.push_back(sign);
        };
        emit();
        int i = 0;
        while (i < n) {
            if (ctr[i] < i) {
                std::swap(perm[i % 2 == 0 ? 0 : ctr[i]], perm[i]);
                sign = -sign;
                emit();
                ++ctr[i];
                i = 0;
            } else {
                ctr[i] = 0;
                ++i;
            }
        }
    }
    const double m = *std::max_element(exps.begin(), exps.end());
    double acc = 0.0;
    for (size_t k = 0; k < exps.size(); ++k) acc += signs[k] * std::exp(exps[k] - m);

    double log_denom = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            log_denom += std::log(s.y[j] - s.y[i]) + std::log(s.lam[j] - s.lam[i]);
    const int sign = (acc > 0 ? 1 : acc < 0 ? -1 : 0) * half_pair_sign(n);
    if (sign <= 0)
        throw NumericalError("hciz_weyl_sum: alternating sum cancelled below double "
                             "precision; use hciz_det");
    const double log_value =
        log_superfactorial(n) + m + std::log(std::abs(acc)) - log_denom;
    const double value = std::exp(s.log_pref + log_value);
    if (!(value > 0.0) || !std::isfinite(value))
        throw NumericalError("hciz_weyl_sum: value left the double range");
    return value;
}

double baryshnikov_density(const InterlacingVector& a, const Spectrum& lam) {
    const int n = lam.size();
    if (a.size() != n - 1) throw DomainError("baryshnikov_density: length mismatch");
    if (!lam.distinct())
        throw DomainError("baryshnikov_density: repeated parent eigenvalues degenerate "
                          "the density");
    if (!interlaces(a.values(), lam))
        throw DomainError("baryshnikov_density: point is outside the interlacing box");
    double fact = 1.0;
    for (int k = 2; k <= n - 1; ++k) fact *= k;
    return fact * std::abs(vandermonde(a.values())) / std::abs(vandermonde(lam.values()));
}

namespace {

double induction_recurse(const std::vector<double>& y, const std::vector<double>& lam, int q) {
    const int n = static_cast<int>(y.size());
    if (n == 1) return std::exp(-y[0] * lam[0]);

    const double y_last = y.back();
    const std::vector<double> y_rest(y.begin(), y.end() - 1);
    double lam_sum = 0.0;
    for (double v : lam) lam_sum += v;

    double fact = 1.0;
    for (int k = 2; k <= n - 1; ++k) fact *= k;
    double vn = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) vn *= lam[j] - lam[i];

    const quad::GaussLegendreRule& rule = quad::gauss_legendre(q);
    // tensor-product Gauss-Legendre over the interlacing box
    std::vector<double> a(n - 1);
    double total = 0.0;
    std::vector<int> idx(n - 1, 0);
    for (;;) {
        double w = 1.0;
        for (int d = 0; d < n - 1; ++d) {
            const double lo = lam[d], hi = lam[d + 1];
            a[d] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[idx[d]];
            w *= 0.5 * (hi - lo) * rule.weights[idx[d]];
        }
        double vmin = 1.0;
        for (int i = 0; i < n - 1; ++i)
            for (int j = i + 1; j < n - 1; ++j) vmin *= a[j] - a[i];
        double a_sum = 0.0;
        for (double v : a) a_sum += v;
        const double inner = induction_recurse(y_rest, a, q);
        total += w * inner * std::exp(y_last * (a_sum - lam_sum)) * vmin;

        int d = 0;
        while (d < n - 1 && ++idx[d] == q) {
            idx[d] = 0;
            ++d;
        }
        if (d == n - 1) break;
    }
    return fact * total / vn;
}

} // namespace

double hciz_via_induction(const Spectrum& y, const Spectrum& lam, int quad_points) {
    const int n = y.size();
    if (lam.size() != n) throw DomainError("hciz_via_induction: spectra must have equal length");
    if (n > 3)
        throw SizeError("hciz_via_induction: cost grows as quad_points^(n(n-1)/2); n <= 3 only");
    if (quad_points < 1) throw DomainError("hciz_via_induction: quad_points must be >= 1");
    if (n > 1 && (!y.distinct() || !lam.distinct()))
        throw DomainError("hciz_via_induction: spectra must be strictly distinct");
    return induction_recurse(y.values(), lam.values(), quad_points);
}

} // namespace orbitkit
