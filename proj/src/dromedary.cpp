#include "morseval/dromedary.hpp"

#include "morseval/bump.hpp"
#include "morseval/errors.hpp"
#include "morseval/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace morseval {

DromedaryFrame DromedaryFrame::rescaled(double center, double scale) const {
    DromedaryFrame f;
    auto m = [&](double x) { return (x - center) / scale; };
    f.b_prime = m(b_prime);
    f.b = m(b);
    f.c_prime = m(c_prime);
    f.c = m(c);
    f.d = m(d);
    f.d_prime = m(d_prime);
    f.n = m(n);
    f.n_prime = m(n_prime);
    f.i_lo = m(i_lo);
    f.i_hi = m(i_hi);
    return f;
}

double Rahla::eval(double x) const {
    double u = x - d;
    return 2.0 * flavor * u - 3.0 * (c - d) * u * u + 2.0 * u * u * u;
}

double Rahla::deriv(double x) const {
    double u = x - d;
    return 2.0 * flavor - 6.0 * (c - d) * u + 6.0 * u * u;
}

double Rahla::deriv2(double x) const {
    double u = x - d;
    return -6.0 * (c - d) + 12.0 * u;
}

void Rahla::validate(double n) const {
    if (std::fabs(eval(d)) > 1e-14)
        throw precondition_error("rahla clause p(d) = 0 failed", "rahla");
    if (!(deriv(n) > 0)) throw precondition_error("rahla clause p'(n) > 0 failed", "rahla");
    // p'(x) = 2 flavor - 6(c-d)(x-d) + 6(x-d)^2; discriminant of the zero set
    double disc = 36.0 * (c - d) * (c - d) - 48.0 * flavor;
    if (flavor == 0) {
        // zeros must be exactly {c, d}
        if (std::fabs(deriv(c)) > 1e-12 || std::fabs(deriv(d)) > 1e-12)
            throw precondition_error("rahla clause p'^-1(0) = {c,d} failed", "rahla");
    } else {
        if (disc >= 0)
            throw precondition_error(
                "rahla clause p'^-1(0) = {} failed: requires d - c < 2/sqrt(3)", "rahla");
    }
}

Rahla make_rahla(const DromedaryFrame& frame, int flavor) {
    if (flavor != 0 && flavor != 1)
        throw precondition_error("rahla flavor must be 0 or 1", "rahla");
    Rahla r;
    r.flavor = flavor;
    r.c = frame.c;
    r.d = frame.d;
    r.validate(frame.n);
    return r;
}

namespace {

constexpr int kDenseGrid = 10000;
constexpr double kStrictMargin = 1e-9;

struct DerivScan {
    double c = 0, d = 0;
    int sign_changes = 0;
    int negative_intervals = 0;
};

// locates the nonpositive-derivative interval and counts structure
DerivScan scan_derivative(const Fn1D& k, double lo, double hi) {
    DerivScan s;
    double h = (hi - lo) / kDenseGrid;
    bool in_neg = false;
    double prev = k.df(lo + h * 0.5);
    int changes = 0;
    for (int i = 1; i < kDenseGrid; ++i) {
        double x = lo + h * (i + 0.5);
        double cur = k.df(x);
        if ((prev < 0) != (cur < 0)) ++changes;
        if (cur < 0 && !in_neg) {
            in_neg = true;
            s.negative_intervals++;
        }
        if (cur >= 0) in_neg = false;
        prev = cur;
    }
    s.sign_changes = changes;
    return s;
}

double newton_on_df(const Fn1D& k, double x0, double lo, double hi, double tol) {
    double z = x0;
    for (int it = 0; it < 60; ++it) {
        double g = k.df(z);
        if (std::fabs(g) <= tol) return z;
        double d2 = k.d2f(z);
        if (std::fabs(d2) < 1e-300) break;
        double znext = z - g / d2;
        if (znext < lo || znext > hi) break;
        z = znext;
    }
    return z;
}

double gauss16_fn(const std::function<double(double)>& f, double a, double b) {
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

// cumulative integral table with Hermite interpolation between knots
struct CumTable {
    double lo = 0, hi = 0, h = 0;
    std::vector<double> y;
    std::vector<double> m;

    CumTable(const std::function<double(double)>& f, double a, double b, int knots) {
        lo = a;
        hi = b;
        h = (b - a) / (knots - 1);
        y.resize(static_cast<std::size_t>(knots));
        m.resize(static_cast<std::size_t>(knots));
        y[0] = 0;
        m[0] = f(a);
        for (int i = 1; i < knots; ++i) {
            y[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i - 1)] + gauss16_fn(f, a + (i - 1) * h, a + i * h);
            m[static_cast<std::size_t>(i)] = f(a + i * h);
        }
    }

    double eval(double x) const {
        if (x <= lo) return 0.0;
        if (x >= hi) return y.back();
        int i = std::min(static_cast<int>((x - lo) / h), static_cast<int>(y.size()) - 2);
        double t = (x - lo - i * h) / h;
        double y0 = y[static_cast<std::size_t>(i)], y1 = y[static_cast<std::size_t>(i + 1)];
        double m0 = m[static_cast<std::size_t>(i)] * h, m1 = m[static_cast<std::size_t>(i + 1)] * h;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * m1;
    }

    double total() const { return y.back(); }
};

} // namespace

DromedaryFrame detect(const Fn1D& k, double lo, double hi, double tol) {
    if (!(lo < hi)) throw precondition_error("empty interval", "dromedary");
    auto scan = scan_derivative(k, lo, hi);
    if (scan.negative_intervals == 0)
        throw precondition_error("no nonpositive-derivative interval: k is monotone",
                                  "dromedary");
    if (scan.negative_intervals > 1 || scan.sign_changes > 2)
        throw precondition_error("{k' <= 0} is disconnected: hypothesis (D) fails", "dromedary");

    auto census = census_1d(k, lo, hi, kDenseGrid, tol);
    if (census.size() != 2)
        throw precondition_error("expected exactly two critical points", "dromedary");
    double c = census[0].location[0];
    double d = census[1].location[0];
    c = newton_on_df(k, c, lo, hi, 1e-14);
    d = newton_on_df(k, d, lo, hi, 1e-14);
    if (!(k.d2f(c) < 0 && k.d2f(d) > 0))
        throw precondition_error("critical pair is not a hump followed by a dip", "dromedary");

    DromedaryFrame f;
    f.i_lo = lo;
    f.i_hi = hi;
    f.c = c;
    f.d = d;
    double gap = d - c;

    // left trio: fractions of the gap, shrunk to fit the interval
    double room = c - lo;
    double off = std::min(0.75 * gap, 0.9 * room);
    f.b_prime = c - off;
    f.b = c - off * 2.0 / 3.0;
    f.c_prime = c - off / 3.0;

    // d' close enough to d that k(d') < k(c) and p0(d') < p0(c)
    double t = 0.4;
    Rahla p0;
    p0.flavor = 0;
    p0.c = c;
    p0.d = d;
    for (;;) {
        f.d_prime = d + t * gap;
        if (f.d_prime < hi && k.f(f.d_prime) < k.f(c) && p0.eval(f.d_prime) < p0.eval(c)) break;
        t *= 0.5;
        if (t < 1e-6)
            throw precondition_error("could not place d' with k(d') < k(c)", "dromedary");
    }

    // nape: first point beyond d' rising visibly above k(c)
    double kc = k.f(c);
    double kmax = -1e300;
    double h = (hi - f.d_prime) / 2000.0;
    for (int i = 1; i < 2000; ++i) kmax = std::max(kmax, k.f(f.d_prime + h * i));
    if (!(kmax > kc))
        throw precondition_error("missing nape point n with k(n) > k(c)", "dromedary");
    double rise = 0.1 * (kmax - kc);
    f.n = 0;
    bool found = false;
    for (int i = 1; i < 2000; ++i) {
        double x = f.d_prime + h * i;
        if (k.f(x) >= kc + rise) {
            f.n = x;
            found = true;
            break;
        }
    }
    if (!found) throw precondition_error("missing nape point n with k(n) > k(c)", "dromedary");
    f.n_prime = f.n + 0.5 * (hi - f.n);

    verify_frame(k, f, tol);
    return f;
}

void verify_frame(const Fn1D& k, const DromedaryFrame& f, double tol) {
    const double pts[8] = {f.b_prime, f.b, f.c_prime, f.c, f.d, f.d_prime, f.n, f.n_prime};
    for (int i = 0; i + 1 < 8; ++i)
        if (!(pts[i] < pts[i + 1]))
            throw precondition_error("frame points must be strictly ordered", "dromedary");
    if (!(f.i_lo < f.b_prime && f.n_prime < f.i_hi))
        throw precondition_error("frame must lie inside the interval", "dromedary");
    if (!(k.f(f.n) > k.f(f.c)))
        throw precondition_error("frame requires k(c) < k(n)", "dromedary");
    if (!(k.f(f.d_prime) < k.f(f.c)))
        throw precondition_error("frame requires k(d') < k(c)", "dromedary");
    // k' <= 0 exactly on [c,d], zeros only at c and d
    double h = (f.i_hi - f.i_lo) / kDenseGrid;
    for (int i = 1; i < kDenseGrid; ++i) {
        double x = f.i_lo + h * i;
        double g = k.df(x);
        bool inside = x >= f.c && x <= f.d;
        if (inside) {
            if (g > tol)
                throw precondition_error("k' must be <= 0 on [c,d]", "dromedary");
        } else {
            double dist = std::min(std::fabs(x - f.c), std::fabs(x - f.d));
            if (g <= 0 && dist > h)
                throw precondition_error("k' must be positive off [c,d]", "dromedary");
        }
    }
}

ScolieResult scolie(const Fn1D& k, const DromedaryFrame& frame, const Rahla& q) {
    const double kc = k.f(frame.c);
    const double delta = 0.5 * (frame.c_prime - frame.b);
    if (!(delta > 0)) throw precondition_error("frame has no room between b and c'", "scolie");

    const int cond_grid = 4001;
    auto grid_pts = [](double a, double b, int n, int i) {
        return a + (b - a) * static_cast<double>(i) / (n - 1);
    };

    for (double eta = 1.0; eta > 1e-10; eta *= 0.5) {
        auto q1 = [&](double x) { return kc + eta * (1.0 + q.eval(x)); };
        auto q1d = [&](double x) { return eta * q.deriv(x); };

        bool ok = true;
        for (int i = 0; i < cond_grid && ok; ++i) {
            double x = grid_pts(frame.b_prime, frame.d_prime, cond_grid, i);
            if (!(k.f(x) < q1(x) - kStrictMargin)) ok = false;
        }
        for (int i = 0; i < cond_grid && ok; ++i) {
            double x = grid_pts(frame.d_prime, frame.n_prime, cond_grid, i);
            double qd = q1d(x);
            if (!(qd > kStrictMargin) || !(qd < k.df(x) - kStrictMargin)) ok = false;
        }
        if (ok && !(k.f(frame.n) > q1(frame.n) + kStrictMargin)) ok = false;
        if (!ok) continue;

        // crossing e of k and q1 in (d', n)
        double elo = frame.d_prime, ehi = frame.n;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (elo + ehi);
            if (k.f(mid) - q1(mid) < 0) elo = mid;
            else ehi = mid;
        }
        const double e = 0.5 * (elo + ehi);

        // size the blend width so the constant offset A0 (bounded by
        // delta1 max(k'-q1')) stays below half the margin min(q1 - k)
        double margin = 1e300, max_slope = 0;
        for (int i = 0; i < cond_grid; ++i) {
            double xa = grid_pts(frame.b_prime, frame.d_prime, cond_grid, i);
            margin = std::min(margin, q1(xa) - k.f(xa));
            double xb = grid_pts(frame.d_prime, e, cond_grid, i);
            max_slope = std::max(max_slope, k.df(xb) - q1d(xb));
        }
        double delta1_init =
            std::min(0.5 * (e - frame.d_prime), 0.4 * margin / std::max(max_slope, 1e-12));

        for (double delta1 = delta1_init; delta1 > (e - frame.d_prime) * 1e-15; delta1 *= 0.5) {
            CutoffSpec alpha_e{CutoffKind::alpha_dec, delta1, e};
            CutoffSpec beta_b{CutoffKind::beta_inc, delta, frame.b};
            auto blend_integrand = [&](double x) {
                return cutoff(alpha_e, x) * (k.df(x) - q1d(x));
            };
            auto table = std::make_shared<CumTable>(blend_integrand, e - delta1, e, 1025);
            const double ftot = table->total();
            // seam-exact constant: g~1 = q1 + A0 left of the blend zone
            const double A0 = ftot - (q1(e - delta1) - k.f(e - delta1));

            Fn1D kk = k;
            Rahla qq = q;
            double b_pt = frame.b;
            auto gt1 = [kk, qq, eta, kc, e, delta1, A0, ftot, table, alpha_e](double x) {
                if (x >= e) return kk.f(x);
                if (x <= e - delta1) return kc + eta * (1.0 + qq.eval(x)) + A0;
                return kk.f(x) + (ftot - table->eval(x));
            };
            auto gt1d = [kk, qq, eta, e, delta1, alpha_e](double x) {
                if (x >= e) return kk.df(x);
                if (x <= e - delta1) return eta * qq.deriv(x);
                double a = cutoff(alpha_e, x);
                return a * eta * qq.deriv(x) + (1.0 - a) * kk.df(x);
            };
            auto gt1dd = [kk, qq, eta, e, delta1, alpha_e](double x) {
                if (x >= e) return kk.d2f(x);
                if (x <= e - delta1) return eta * qq.deriv2(x);
                double a = cutoff(alpha_e, x);
                double ad = cutoff_deriv(alpha_e, x);
                return ad * (eta * qq.deriv(x) - kk.df(x)) + a * eta * qq.deriv2(x) +
                       (1.0 - a) * kk.d2f(x);
            };

            Fn1D g1;
            g1.f = [kk, gt1, beta_b, b_pt, delta](double x) {
                if (x <= b_pt) return kk.f(x);
                double bb = cutoff(beta_b, x);
                if (bb >= 1.0) return gt1(x);
                return (1.0 - bb) * kk.f(x) + bb * gt1(x);
            };
            g1.df = [kk, gt1, gt1d, beta_b, b_pt, delta](double x) {
                if (x <= b_pt) return kk.df(x);
                double bb = cutoff(beta_b, x);
                if (bb >= 1.0) return gt1d(x);
                double bd = cutoff_deriv(beta_b, x);
                return (1.0 - bb) * kk.df(x) + bb * gt1d(x) + bd * (gt1(x) - kk.f(x));
            };
            g1.d2f = [kk, gt1, gt1d, gt1dd, beta_b, b_pt, delta](double x) {
                if (x <= b_pt) return kk.d2f(x);
                double bb = cutoff(beta_b, x);
                if (bb >= 1.0) return gt1dd(x);
                double bd = cutoff_deriv(beta_b, x);
                double bdd = cutoff_deriv2(beta_b, x);
                return (1.0 - bb) * kk.d2f(x) + bb * gt1dd(x) + 2.0 * bd * (gt1d(x) - kk.df(x)) +
                       bdd * (gt1(x) - kk.f(x));
            };

            // verify the four Scolie conclusions on a dense grid
            bool pass = true;
            const int vg = 4001;
            // (2): k <= g1 on [b', n'], equality outside (b, n)
            for (int i = 0; i < vg && pass; ++i) {
                double x = grid_pts(frame.b_prime, frame.n_prime, vg, i);
                if (g1.f(x) < k.f(x) - 1e-12) pass = false;
            }
            for (int i = 0; i < 200 && pass; ++i) {
                double x = grid_pts(frame.i_lo, frame.b, 200, i);
                if (std::fabs(g1.f(x) - k.f(x)) > 1e-12) pass = false;
            }
            for (int i = 0; i < 200 && pass; ++i) {
                double x = grid_pts(frame.n, frame.i_hi, 200, i);
                if (std::fabs(g1.f(x) - k.f(x)) > 1e-12) pass = false;
            }
            // (3): g1' > 0 off [c, d]
            for (int i = 0; i < vg && pass; ++i) {
                double x = grid_pts(frame.i_lo + 1e-9, frame.i_hi - 1e-9, vg, i);
                if (x >= frame.c - 1e-12 && x <= frame.d + 1e-12) continue;
                if (!(g1.df(x) > 0)) pass = false;
            }
            // (4)
            if (pass && !(g1.f(frame.c) < g1.f(frame.n))) pass = false;
            // (1): cubic window equals A + eta q up to 1e-8
            double A = 0;
            if (pass) {
                A = g1.f(frame.c_prime) - (kc + eta + eta * q.eval(frame.c_prime));
                for (int i = 0; i < vg && pass; ++i) {
                    double x = grid_pts(frame.c_prime, frame.d_prime, vg, i);
                    double model = A + kc + eta + eta * q.eval(x);
                    if (std::fabs(g1.f(x) - model) > 1e-8) pass = false;
                }
            }
            if (!pass) continue;

            ScolieResult res;
            res.eta = eta;
            res.e = e;
            res.delta1 = delta1;
            res.delta = delta;
            res.offset = A;
            res.g1 = g1;
            return res;
        }
    }
    throw certification_error("eta underflow before the Scolie conditions hold", "scolie");
}

Fn1D DromedaryPath::at(double s) const {
    Fn1D f;
    auto ev = eval, dx = deriv_x, dxx = deriv2_x;
    f.f = [ev, s](double x) { return ev(s, x); };
    f.df = [dx, s](double x) { return dx(s, x); };
    f.d2f = [dxx, s](double x) { return dxx(s, x); };
    return f;
}

DromedaryPath dromedary_path(const Fn1D& k, const DromedaryFrame& frame) {
    // rescale so the (c,d) gap becomes 1/2; the printed rahla p1 is
    // nonsingular only below 2/sqrt(3) and the second Scolie stage needs
    // 1 + p1(c) > 0, i.e. gap below (sqrt(5)-1)/2, so 1/2 leaves margin
    const double target_gap = 0.5;
    const double L = (frame.d - frame.c) / target_gap;
    const double ctr = frame.d;
    DromedaryFrame hf = frame.rescaled(ctr, L);

    Rahla p0 = make_rahla(hf, 0);
    if (!(p0.eval(hf.d_prime) < p0.eval(hf.c)))
        throw precondition_error(
            "frame places d' too far right: stage two needs p0(d') < p0(c)", "dromedary");
    Rahla p1 = make_rahla(hf, 1);

    Fn1D kh;
    {
        Fn1D kk = k;
        kh.f = [kk, ctr, L](double y) { return kk.f(ctr + L * y); };
        kh.df = [kk, ctr, L](double y) { return L * kk.df(ctr + L * y); };
        kh.d2f = [kk, ctr, L](double y) { return L * L * kk.d2f(ctr + L * y); };
    }

    ScolieResult s1 = scolie(kh, hf, p0);
    ScolieResult s2 = scolie(s1.g1, hf, p1);

    DromedaryPath path;
    path.frame = frame;
    path.center = ctr;
    path.scale = L;
    path.eta1 = s1.eta;
    path.eta2 = s2.eta;
    path.e1 = s1.e;
    path.e2 = s2.e;
    path.offset1 = s1.offset;
    path.offset2 = s2.offset;

    Fn1D k1h = s1.g1, k2h = s2.g1;
    Fn1D kk = k;
    path.k1.f = [k1h, ctr, L](double x) { return k1h.f((x - ctr) / L); };
    path.k1.df = [k1h, ctr, L](double x) { return k1h.df((x - ctr) / L) / L; };
    path.k1.d2f = [k1h, ctr, L](double x) { return k1h.d2f((x - ctr) / L) / (L * L); };
    path.k2.f = [k2h, ctr, L](double x) { return k2h.f((x - ctr) / L); };
    path.k2.df = [k2h, ctr, L](double x) { return k2h.df((x - ctr) / L) / L; };
    path.k2.d2f = [k2h, ctr, L](double x) { return k2h.d2f((x - ctr) / L) / (L * L); };

    // outside (b, n) every stage equals k; branching there makes the support
    // equality exact instead of rounding-level
    auto blend = [](double w, double a, double b) { return (1.0 - w) * a + w * b; };
    double yb = hf.b, yn = hf.n;
    Fn1D khc = kh;
    path.eval = [khc, k1h, k2h, ctr, L, blend, yb, yn](double s, double x) {
        double y = (x - ctr) / L;
        if (s <= 0 || y <= yb || y >= yn) return khc.f(y);
        if (s < 1) return blend(beta(s), khc.f(y), k1h.f(y));
        if (s < 2) return blend(beta(s - 1), k1h.f(y), k2h.f(y));
        return k2h.f(y);
    };
    path.deriv_x = [khc, k1h, k2h, ctr, L, blend, yb, yn](double s, double x) {
        double y = (x - ctr) / L;
        double v;
        if (s <= 0 || y <= yb || y >= yn) v = khc.df(y);
        else if (s < 1) v = blend(beta(s), khc.df(y), k1h.df(y));
        else if (s < 2) v = blend(beta(s - 1), k1h.df(y), k2h.df(y));
        else v = k2h.df(y);
        return v / L;
    };
    path.deriv2_x = [khc, k1h, k2h, ctr, L, blend, yb, yn](double s, double x) {
        double y = (x - ctr) / L;
        double v;
        if (s <= 0 || y <= yb || y >= yn) v = khc.d2f(y);
        else if (s < 1) v = blend(beta(s), khc.d2f(y), k1h.d2f(y));
        else if (s < 2) v = blend(beta(s - 1), k1h.d2f(y), k2h.d2f(y));
        else v = k2h.d2f(y);
        return v / (L * L);
    };

    // degenerate landmark: bisection on "no k_s' <= 0 left in the window";
    // the window minimum is refined to the vertex (zero of the blended second
    // derivative) so the landmark is resolved to machine precision
    auto min_deriv = [&](double s) {
        double w = beta(s - 1);
        auto dv = [&](double x) { return blend(w, k1h.df(x), k2h.df(x)); };
        auto d2v = [&](double x) { return blend(w, k1h.d2f(x), k2h.d2f(x)); };
        double m = 1e300, argmin = hf.c_prime;
        for (int i = 0; i <= 2000; ++i) {
            double x = hf.c_prime + (hf.d_prime - hf.c_prime) * i / 2000.0;
            double v = dv(x);
            if (v < m) {
                m = v;
                argmin = x;
            }
        }
        double step = (hf.d_prime - hf.c_prime) / 2000.0;
        double a = std::max(hf.c_prime, argmin - step), b = std::min(hf.d_prime, argmin + step);
        if (d2v(a) < 0 && d2v(b) > 0) {
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (a + b);
                if (d2v(mid) < 0) a = mid;
                else b = mid;
            }
            m = std::min(m, dv(0.5 * (a + b)));
        }
        return m;
    };
    double lo = 1.0, hi = 2.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (min_deriv(mid) <= 0) lo = mid;
        else hi = mid;
    }
    path.t0 = 0.5 * (lo + hi);

    double gap2 = (hf.d - hf.c) * (hf.d - hf.c);
    path.sigma0 =
        1.5 * gap2 * s1.eta / (2.0 * s2.eta + 1.5 * gap2 * (s1.eta - s2.eta));
    path.t0_closed = 1.0 + beta_inv(path.sigma0);
    return path;
}

std::vector<std::pair<double, std::vector<CriticalPoint>>> census_sweep(
    const DromedaryPath& path, std::span<const double> svals, int grid, double tol) {
    std::vector<std::pair<double, std::vector<CriticalPoint>>> out;
    for (double s : svals)
        out.emplace_back(s, census_1d(path.at(s), path.frame.i_lo, path.frame.i_hi, grid, tol));
    return out;
}

} // namespace morseval
