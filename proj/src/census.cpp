#include "morseval/census.hpp"

#include "morseval/errors.hpp"

#include <algorithm>
#include <cmath>

namespace morseval {

namespace {

double grad_norm(const Jet2& j) {
    double s = 0;
    for (int i = 0; i < j.n; ++i) s += j.g[static_cast<std::size_t>(i)] * j.g[static_cast<std::size_t>(i)];
    return std::sqrt(s);
}

SymMat hessian_of(const Jet2& j) {
    SymMat h = SymMat::zero(j.n);
    for (int i = 0; i < j.n; ++i)
        for (int k = 0; k < j.n; ++k)
            h.at(i, k) = j.h[static_cast<std::size_t>(Jet2::hidx(i, k, j.n))];
    return h;
}

// Damped Newton on grad f = 0; returns refined point or nullopt.
std::optional<std::array<double, 3>> newton_refine(const JetFn& f, int dim,
                                                   std::array<double, 3> x, const Box& box,
                                                   double tol) {
    std::span<const double> xs(x.data(), static_cast<std::size_t>(dim));
    for (int it = 0; it < 40; ++it) {
        Jet2 j;
        try {
            j = f(xs, 2);
        } catch (const domain_error&) {
            return std::nullopt;
        }
        double gn = grad_norm(j);
        if (gn <= tol) return x;
        SymMat h = hessian_of(j);
        std::array<double, 9> A = h.a;
        std::array<double, 3> rhs{};
        for (int i = 0; i < dim; ++i) rhs[static_cast<std::size_t>(i)] = -j.g[static_cast<std::size_t>(i)];
        std::array<double, 3> step{};
        if (!solve_linear(dim, A, rhs, step)) return std::nullopt;
        double lambda = 1.0;
        bool improved = false;
        for (int halve = 0; halve < 20; ++halve) {
            std::array<double, 3> trial = x;
            for (int i = 0; i < dim; ++i)
                trial[static_cast<std::size_t>(i)] += lambda * step[static_cast<std::size_t>(i)];
            if (!box.contains(std::span<const double>(trial.data(), static_cast<std::size_t>(dim)))) {
                lambda *= 0.5;
                continue;
            }
            Jet2 tj;
            try {
                tj = f(std::span<const double>(trial.data(), static_cast<std::size_t>(dim)), 1);
            } catch (const domain_error&) {
                lambda *= 0.5;
                continue;
            }
            if (grad_norm(tj) < gn || lambda < 1e-6) {
                x = trial;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) return std::nullopt;
    }
    Jet2 j = f(xs, 1);
    if (grad_norm(j) <= tol) return x;
    return std::nullopt;
}

} // namespace

std::vector<CriticalPoint> critical_census(const JetFn& f, int dim, const Box& box,
                                           const Grid& grid, double tol) {
    box.validate();
    grid.validate(dim);
    std::array<int, 3> counts{1, 1, 1};
    for (int i = 0; i < dim; ++i) counts[static_cast<std::size_t>(i)] = grid.counts[static_cast<std::size_t>(i)];
    std::array<double, 3> step{};
    for (int i = 0; i < dim; ++i)
        step[static_cast<std::size_t>(i)] =
            (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]) /
            counts[static_cast<std::size_t>(i)];

    // gradient samples at the grid nodes
    std::array<int, 3> nodes{counts[0] + 1, counts[1] + 1, counts[2] + 1};
    for (int i = dim; i < 3; ++i) nodes[static_cast<std::size_t>(i)] = 1;
    auto node_index = [&](int i, int j, int k) {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(nodes[1]) +
                static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(nodes[0]) +
               static_cast<std::size_t>(i);
    };
    std::vector<std::array<double, 3>> grads(
        static_cast<std::size_t>(nodes[0]) * static_cast<std::size_t>(nodes[1]) *
        static_cast<std::size_t>(nodes[2]));
    std::vector<char> valid(grads.size(), 1);
    for (int k = 0; k < nodes[2]; ++k)
        for (int j = 0; j < nodes[1]; ++j)
            for (int i = 0; i < nodes[0]; ++i) {
                std::array<double, 3> p{};
                std::array<int, 3> idx{i, j, k};
                for (int d = 0; d < dim; ++d)
                    p[static_cast<std::size_t>(d)] =
                        box.lo[static_cast<std::size_t>(d)] +
                        step[static_cast<std::size_t>(d)] * idx[static_cast<std::size_t>(d)];
                try {
                    Jet2 jet = f(std::span<const double>(p.data(), static_cast<std::size_t>(dim)), 1);
                    grads[node_index(i, j, k)] = {jet.g[0], jet.g[1], jet.g[2]};
                } catch (const domain_error&) {
                    valid[node_index(i, j, k)] = 0;
                }
            }

    // seed cells where every gradient component straddles zero on the corners
    std::vector<std::array<double, 3>> seeds;
    std::array<int, 3> cells{counts[0], dim > 1 ? counts[1] : 1, dim > 2 ? counts[2] : 1};
    for (int k = 0; k < cells[2]; ++k)
        for (int j = 0; j < cells[1]; ++j)
            for (int i = 0; i < cells[0]; ++i) {
                bool all_straddle = true;
                for (int d = 0; d < dim && all_straddle; ++d) {
                    double mn = 1e300, mx = -1e300;
                    bool ok = true;
                    int cn = 1 << dim;
                    for (int corner = 0; corner < cn; ++corner) {
                        int ci = i + (corner & 1);
                        int cj = j + ((corner >> 1) & 1);
                        int ck = k + ((corner >> 2) & 1);
                        std::size_t ni = node_index(ci, dim > 1 ? cj : 0, dim > 2 ? ck : 0);
                        if (!valid[ni]) {
                            ok = false;
                            break;
                        }
                        double g = grads[ni][static_cast<std::size_t>(d)];
                        mn = std::min(mn, g);
                        mx = std::max(mx, g);
                    }
                    if (!ok || mn > 0.0 || mx < 0.0) all_straddle = false;
                }
                if (all_straddle) {
                    std::array<double, 3> c{};
                    std::array<int, 3> idx{i, j, k};
                    for (int d = 0; d < dim; ++d)
                        c[static_cast<std::size_t>(d)] =
                            box.lo[static_cast<std::size_t>(d)] +
                            step[static_cast<std::size_t>(d)] *
                                (idx[static_cast<std::size_t>(d)] + 0.5);
                    seeds.push_back(c);
                }
            }

    std::vector<CriticalPoint> out;
    for (const auto& s : seeds) {
        auto refined = newton_refine(f, dim, s, box, tol);
        if (!refined) continue;
        std::span<const double> rp(refined->data(), static_cast<std::size_t>(dim));
        if (!box.contains(rp)) continue;
        bool dup = false;
        for (const auto& q : out) {
            double d2 = 0;
            for (int d = 0; d < dim; ++d) {
                double dd = q.location[static_cast<std::size_t>(d)] -
                            (*refined)[static_cast<std::size_t>(d)];
                d2 += dd * dd;
            }
            if (std::sqrt(d2) <= 10 * tol) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        Jet2 j = f(rp, 2);
        CriticalPoint cp;
        cp.dim = dim;
        cp.location = *refined;
        cp.value = j.v;
        SymMat h = hessian_of(j);
        cp.hessian_eigenvalues = sym_eigenvalues(h);
        double hnorm = h.norm_inf();
        double minabs = 1e300;
        for (double ev : cp.hessian_eigenvalues) {
            minabs = std::min(minabs, std::fabs(ev));
            if (ev < 0) cp.index++;
            if (ev > 0) cp.coindex++;
        }
        cp.nondegenerate = minabs > tol * (1.0 + hnorm);
        out.push_back(cp);
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return std::lexicographical_compare(a.location.begin(), a.location.end(),
                                            b.location.begin(), b.location.end());
    });
    return out;
}

std::vector<CriticalPoint> critical_census(const ScalarField& f, const Box& box,
                                           const Grid& grid, double tol) {
    return critical_census(f.jetfn(), f.dim(), box, grid, tol);
}

namespace {

void census_1d_insert(const Fn1D& k, double z, double tol, double merge_radius,
                      std::vector<CriticalPoint>& out) {
    if (std::fabs(k.df(z)) > tol) return;
    for (const auto& q : out)
        if (std::fabs(q.location[0] - z) <= merge_radius) return;
    CriticalPoint cp;
    cp.dim = 1;
    cp.location[0] = z;
    cp.value = k.f(z);
    double d2 = k.d2f(z);
    cp.hessian_eigenvalues = {d2};
    cp.index = d2 < 0 ? 1 : 0;
    cp.coindex = d2 > 0 ? 1 : 0;
    cp.nondegenerate = std::fabs(d2) > tol * (1.0 + std::fabs(d2));
    out.push_back(cp);
}

} // namespace

std::vector<CriticalPoint> census_1d(const Fn1D& k, double lo, double hi, int grid, double tol) {
    if (!(lo < hi) || grid < 2) throw precondition_error("census_1d: bad interval or grid");
    std::vector<CriticalPoint> out;
    double h = (hi - lo) / grid;
    double prev = k.df(lo);
    for (int i = 1; i <= grid; ++i) {
        double x = lo + h * i;
        double cur = k.df(x);
        bool straddle = (prev <= 0 && cur >= 0) || (prev >= 0 && cur <= 0);
        if (straddle && !(prev == 0 && cur == 0)) {
            // damped Newton on k'; push well below the acceptance threshold
            // so seeds of one root collapse to the same location
            double z = x - h / 2;
            for (int it = 0; it < 80; ++it) {
                double g = k.df(z);
                if (std::fabs(g) <= 1e-13) break;
                double d2 = k.d2f(z);
                if (std::fabs(d2) < 1e-300) break;
                double step = -g / d2;
                double lambda = 1.0;
                bool moved = false;
                for (int halve = 0; halve < 20; ++halve) {
                    double trial = z + lambda * step;
                    if (trial >= lo && trial <= hi && std::fabs(k.df(trial)) < std::fabs(g)) {
                        z = trial;
                        moved = true;
                        break;
                    }
                    lambda *= 0.5;
                }
                if (!moved) break;
            }
            if (std::fabs(k.df(z)) > tol) {
                // fall back to bisection on the sign change
                double a = x - h, b = x;
                double fa = k.df(a);
                for (int it = 0; it < 200; ++it) {
                    double m = 0.5 * (a + b);
                    double fm = k.df(m);
                    if ((fa <= 0) == (fm <= 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                z = 0.5 * (a + b);
            }
            census_1d_insert(k, z, tol, std::max(10 * tol, h), out);
        }
        prev = cur;
    }
    // tangential zeros of k' (degenerate critical points) produce no sign
    // change; seed from small local minima of |k'| as well
    double thresh = std::sqrt(tol);
    double am = std::fabs(k.df(lo)), bm = std::fabs(k.df(lo + h));
    for (int i = 1; i < grid; ++i) {
        double cm = std::fabs(k.df(lo + h * (i + 1)));
        if (bm <= am && bm <= cm && bm <= thresh) {
            double z = lo + h * i;
            for (int it = 0; it < 80; ++it) {
                double g = k.df(z);
                if (std::fabs(g) <= 1e-13) break;
                double d2 = k.d2f(z);
                if (std::fabs(d2) < 1e-300) break;
                double znext = z - g / d2;
                if (znext < lo || znext > hi) break;
                if (std::fabs(k.df(znext)) >= std::fabs(g)) break;
                z = znext;
            }
            census_1d_insert(k, z, tol, std::max(10 * tol, h), out);
        }
        am = bm;
        bm = cm;
    }
    std::sort(out.begin(), out.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.location[0] < b.location[0]; });
    return out;
}

PgfReport verify_pgf(const std::vector<FieldFn>& Z, const JetFn& f, int dim, const Box& box,
                     const Grid& grid, double tol) {
    box.validate();
    grid.validate(dim);
    PgfReport rep;
    rep.min_value = 1e300;
    std::array<int, 3> counts{1, 1, 1};
    for (int i = 0; i < dim; ++i) counts[static_cast<std::size_t>(i)] = grid.counts[static_cast<std::size_t>(i)];
    for (int k = 0; k <= (dim > 2 ? counts[2] : 0); ++k)
        for (int j = 0; j <= (dim > 1 ? counts[1] : 0); ++j)
            for (int i = 0; i <= counts[0]; ++i) {
                std::array<double, 3> p{};
                std::array<int, 3> idx{i, j, k};
                for (int d = 0; d < dim; ++d)
                    p[static_cast<std::size_t>(d)] =
                        box.lo[static_cast<std::size_t>(d)] +
                        (box.hi[static_cast<std::size_t>(d)] - box.lo[static_cast<std::size_t>(d)]) *
                            idx[static_cast<std::size_t>(d)] / counts[static_cast<std::size_t>(d)];
                std::span<const double> ps(p.data(), static_cast<std::size_t>(dim));
                Jet2 jet;
                try {
                    jet = f(ps, 1);
                } catch (const domain_error&) {
                    continue;
                }
                double gn = grad_norm(jet);
                if (gn <= tol) continue;
                double zf = 0;
                for (int d = 0; d < dim; ++d) zf += Z[static_cast<std::size_t>(d)](ps) * jet.g[static_cast<std::size_t>(d)];
                rep.regular_points++;
                if (zf < rep.min_value) {
                    rep.min_value = zf;
                    rep.min_point = p;
                }
            }
    rep.pass = rep.regular_points > 0 && rep.min_value > 0;
    return rep;
}

} // namespace morseval
