#include "morseval/bump.hpp"

#include "morseval/errors.hpp"
#include "morseval/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace morseval {

namespace {

// Normalization making the squared kernel a probability density: with
// rho = C exp(-cot^2(pi x))/sin(pi x), substituting u = cot(pi x) gives
// int rho^2 = C^2/sqrt(2 pi), so C = (2 pi)^(1/4).
const double kKernelC = std::pow(2.0 * M_PI, 0.25);

bool in_support(double x) { return x > 0.0 && x < 1.0; }

} // namespace

double kernel(double x) {
    if (!in_support(x)) return 0.0;
    double s = std::sin(M_PI * x);
    double u = std::cos(M_PI * x) / s;
    double w = u * u;
    if (w > 700.0) return 0.0;
    return kKernelC * std::exp(-w) / s;
}

double kernel_deriv(double x) {
    if (!in_support(x)) return 0.0;
    double s = std::sin(M_PI * x);
    double u = std::cos(M_PI * x) / s;
    double w = u * u;
    if (w > 700.0) return 0.0;
    return M_PI * kKernelC * std::exp(-w) * u * (1.0 + 2.0 * w) * std::sqrt(1.0 + w);
}

namespace {

double rho2(double x) {
    double r = kernel(x);
    return r * r;
}

double rho2_deriv(double x) { return 2.0 * kernel(x) * kernel_deriv(x); }

// 16-point Gauss-Legendre on [a,b]
double gauss16(double (*f)(double), double a, double b) {
    static const double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                 0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
    static const double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                 0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 8; ++i) s += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
    return s * half;
}

struct BetaTable {
    static constexpr int kKnots = 1025; // 1024 intervals
    std::vector<double> y;              // cumulative integral, scaled to [0,1]
    std::vector<double> m;              // tangents (scaled rho^2 at knots)
    double h = 1.0 / (kKnots - 1);

    BetaTable() {
        y.resize(kKnots);
        m.resize(kKnots);
        double acc = 0.0;
        y[0] = 0.0;
        for (int i = 1; i < kKnots; ++i) {
            double a = (i - 1) * h, b = i * h;
            acc += gauss16(&rho2, a, b);
            y[static_cast<std::size_t>(i)] = acc;
        }
        double total = acc;
        for (int i = 0; i < kKnots; ++i) {
            y[static_cast<std::size_t>(i)] /= total;
            m[static_cast<std::size_t>(i)] = rho2(i * h) / total;
        }
        y[kKnots - 1] = 1.0;
        // Fritsch-Carlson clamp so interpolation stays monotone
        for (int i = 0; i + 1 < kKnots; ++i) {
            double d = (y[static_cast<std::size_t>(i + 1)] - y[static_cast<std::size_t>(i)]) / h;
            if (d <= 0) {
                m[static_cast<std::size_t>(i)] = 0;
                m[static_cast<std::size_t>(i + 1)] = 0;
                continue;
            }
            double al = m[static_cast<std::size_t>(i)] / d;
            double be = m[static_cast<std::size_t>(i + 1)] / d;
            double r2 = al * al + be * be;
            if (r2 > 9.0) {
                double tau = 3.0 / std::sqrt(r2);
                m[static_cast<std::size_t>(i)] = tau * al * d;
                m[static_cast<std::size_t>(i + 1)] = tau * be * d;
            }
        }
    }

    double eval(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        int i = std::min(static_cast<int>(x / h), kKnots - 2);
        double t = (x - i * h) / h;
        double y0 = y[static_cast<std::size_t>(i)], y1 = y[static_cast<std::size_t>(i + 1)];
        double m0 = m[static_cast<std::size_t>(i)] * h, m1 = m[static_cast<std::size_t>(i + 1)] * h;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * m1;
    }
};

const BetaTable& beta_table() {
    static BetaTable table;
    return table;
}

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth > 40 || std::fabs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

} // namespace

double beta(double x) { return beta_table().eval(x); }

double beta_inv(double yv) {
    if (yv <= 0.0) return 0.0;
    if (yv >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (beta(mid) < yv) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double kernel_mass_quadrature(double tol) {
    double fa = rho2(0.0), fb = rho2(1.0), fm = rho2(0.5);
    double whole = 1.0 / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(&rho2, 0.0, 1.0, fa, fm, fb, whole, tol, 0);
}

double cutoff(const CutoffSpec& spec, double x) {
    switch (spec.kind) {
    case CutoffKind::beta_inc: return beta((x - spec.a) / spec.eps);
    case CutoffKind::alpha_dec: return beta((spec.a - x) / spec.eps);
    case CutoffKind::alpha_comp: return 1.0 - beta((x - spec.a) / spec.eps);
    case CutoffKind::beta_comp: return 1.0 - beta((spec.a - x) / spec.eps);
    }
    return 0.0;
}

double cutoff_deriv(const CutoffSpec& spec, double x) {
    switch (spec.kind) {
    case CutoffKind::beta_inc: return rho2((x - spec.a) / spec.eps) / spec.eps;
    case CutoffKind::alpha_dec: return -rho2((spec.a - x) / spec.eps) / spec.eps;
    case CutoffKind::alpha_comp: return -rho2((x - spec.a) / spec.eps) / spec.eps;
    case CutoffKind::beta_comp: return rho2((spec.a - x) / spec.eps) / spec.eps;
    }
    return 0.0;
}

double cutoff_deriv2(const CutoffSpec& spec, double x) {
    double e2 = spec.eps * spec.eps;
    switch (spec.kind) {
    case CutoffKind::beta_inc: return rho2_deriv((x - spec.a) / spec.eps) / e2;
    case CutoffKind::alpha_dec: return rho2_deriv((spec.a - x) / spec.eps) / e2;
    case CutoffKind::alpha_comp: return -rho2_deriv((x - spec.a) / spec.eps) / e2;
    case CutoffKind::beta_comp: return -rho2_deriv((spec.a - x) / spec.eps) / e2;
    }
    return 0.0;
}

namespace {

// V == 0 on a half-line containing x
bool on_fixed_halfline(const CutoffSpec& s, double x) {
    switch (s.kind) {
    case CutoffKind::beta_inc: return x <= s.a;
    case CutoffKind::alpha_dec: return x >= s.a;
    case CutoffKind::alpha_comp: return x >= s.a + s.eps;
    case CutoffKind::beta_comp: return x <= s.a - s.eps;
    }
    return false;
}

// [lo,hi] entirely inside the V == 1 plateau
bool in_plateau(const CutoffSpec& s, double lo, double hi) {
    switch (s.kind) {
    case CutoffKind::beta_inc: return lo >= s.a + s.eps;
    case CutoffKind::alpha_dec: return hi <= s.a - s.eps;
    case CutoffKind::alpha_comp: return hi <= s.a;
    case CutoffKind::beta_comp: return lo >= s.a;
    }
    return false;
}

} // namespace

double cutoff_flow(const CutoffSpec& spec, double t, double x) {
    if (spec.eps <= 0) throw precondition_error("cutoff requires eps > 0");
    if (t == 0.0) return x;
    if (on_fixed_halfline(spec, x)) return x;
    double lo = std::min(x, x + t), hi = std::max(x, x + t);
    if (in_plateau(spec, lo, hi)) return x + t;
    OdeRhs rhs = [&spec](double, const std::array<double, 3>& y, std::array<double, 3>& dy) {
        dy[0] = cutoff(spec, y[0]);
    };
    std::array<double, 3> y0{x, 0, 0};
    return ode_integrate(rhs, 1, y0, 0.0, t)[0];
}

double cutoff_flow_dx(const CutoffSpec& spec, double t, double x) {
    if (t == 0.0) return 1.0;
    if (on_fixed_halfline(spec, x)) return 1.0;
    double vx = cutoff(spec, x);
    if (std::fabs(vx) < 1e-250) return 1.0;
    double phi = cutoff_flow(spec, t, x);
    return cutoff(spec, phi) / vx;
}

double cutoff_flow_dxx(const CutoffSpec& spec, double t, double x) {
    if (t == 0.0) return 0.0;
    if (on_fixed_halfline(spec, x)) return 0.0;
    double vx = cutoff(spec, x);
    if (std::fabs(vx) < 1e-250) return 0.0;
    double phi = cutoff_flow(spec, t, x);
    double dphi = cutoff(spec, phi) / vx;
    return dphi * (cutoff_deriv(spec, phi) - cutoff_deriv(spec, x)) / vx;
}

} // namespace morseval
