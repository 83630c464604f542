#include "orbitkit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "orbitkit/errors.hpp"

namespace orbitkit::quad {

namespace {

GaussLegendreRule build_rule(int q) {
    GaussLegendreRule r;
    r.nodes.resize(q);
    r.weights.resize(q);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_q
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.nodes[i] = -x;
        r.weights[i] = w;
        r.nodes[q - 1 - i] = x;
        r.weights[q - 1 - i] = w;
    }
    if (q % 2 == 1) r.nodes[q / 2] = 0.0;
    return r;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int q) {
    if (q < 1) throw DomainError("gauss_legendre: need q >= 1");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, build_rule(q)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int q) {
    const GaussLegendreRule& r = gauss_legendre(q);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < q; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

namespace {

double simpson(double fa, double fm, double fb, double h) { return h * (fa + 4.0 * fm + fb) / 6.0; }

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace orbitkit::quad
