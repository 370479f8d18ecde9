#include "morseval/normal_form.hpp"

#include "morseval/errors.hpp"

#include <algorithm>
#include <cmath>

namespace morseval {

namespace {

SymMat hessian_at(const ScalarField& f, std::span<const double> p) {
    Jet2 j = f.jet(p, 2);
    SymMat h = SymMat::zero(f.dim());
    for (int i = 0; i < h.n; ++i)
        for (int k = 0; k < h.n; ++k)
            h.at(i, k) = j.h[static_cast<std::size_t>(Jet2::hidx(i, k, h.n))];
    return h;
}

} // namespace

QuadFormField quadratic_remainder(const ScalarField& f, std::span<const double> c,
                                  double quad_tol) {
    (void)quad_tol;
    int n = f.dim();
    Jet2 j0 = f.jet(c, 1);
    double gn = 0;
    for (int i = 0; i < n; ++i) gn += j0.g[static_cast<std::size_t>(i)] * j0.g[static_cast<std::size_t>(i)];
    if (std::sqrt(gn) > 1e-8)
        throw precondition_error("quadratic_remainder requires a critical center",
                                  "normal_form");
    QuadFormField qf;
    qf.dim = n;
    for (int i = 0; i < n; ++i) qf.center[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    ScalarField fc = f;
    std::array<double, 3> cc = qf.center;
    // Composite Simpson (16 intervals) of (1-t) H(c + t(x-c)). A fixed rule
    // is exact on the polynomial examples and keeps the remaining error a
    // smooth power of |x-c|, which the chart-residual order checks rely on.
    qf.b = [fc, cc, n](std::span<const double> x) {
        constexpr int kIntervals = 16;
        auto eval = [&](double t) {
            std::array<double, 3> p{};
            for (int i = 0; i < n; ++i)
                p[static_cast<std::size_t>(i)] =
                    cc[static_cast<std::size_t>(i)] +
                    t * (x[static_cast<std::size_t>(i)] - cc[static_cast<std::size_t>(i)]);
            SymMat h = hessian_at(fc, std::span<const double>(p.data(), static_cast<std::size_t>(n)));
            for (int i = 0; i < n * n; ++i) h.a[static_cast<std::size_t>(i)] *= (1.0 - t);
            return h;
        };
        SymMat acc = SymMat::zero(n);
        double h = 1.0 / kIntervals;
        for (int seg = 0; seg < kIntervals; ++seg) {
            SymMat g0 = eval(seg * h), gm = eval((seg + 0.5) * h), g1 = eval((seg + 1) * h);
            for (int i = 0; i < n * n; ++i)
                acc.a[static_cast<std::size_t>(i)] +=
                    h / 6 *
                    (g0.a[static_cast<std::size_t>(i)] + 4 * gm.a[static_cast<std::size_t>(i)] +
                     g1.a[static_cast<std::size_t>(i)]);
        }
        return acc;
    };
    return qf;
}

namespace {

// One congruence step: y_k = sqrt(|M_kk|) (z_k + sum_{i>k} M_ki/M_kk z_i),
// then the Schur update on rows/columns > k. Step-local pre-maps (variable
// swap or the two-variable rotation when the diagonal vanishes at c) are
// constant linear maps fixed from b at the center.
struct StepOp {
    int swap_with = -1;   // swap variable k with this index before eliminating
    bool rotate = false;  // x_k = u+v, x_j = u-v with partner j
    int rot_partner = -1;
    double sign = 1.0;
};

struct LagrangeChart {
    int n = 0;
    QuadFormField qf;
    std::vector<StepOp> steps;
    std::vector<int> perm; // chart axis i reads eliminated variable perm[i]

    // applies the step pre-maps to coordinates z (in place), step k only
    static void apply_premap(const StepOp& op, int k, std::array<double, 3>& z) {
        if (op.swap_with >= 0) std::swap(z[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(op.swap_with)]);
        if (op.rotate) {
            // substitution x_k = u+v, x_j = u-v; new coordinates of the point
            double zk = z[static_cast<std::size_t>(k)], zj = z[static_cast<std::size_t>(op.rot_partner)];
            z[static_cast<std::size_t>(k)] = 0.5 * (zk + zj);
            z[static_cast<std::size_t>(op.rot_partner)] = 0.5 * (zk - zj);
        }
    }

    static void apply_premap_mat(const StepOp& op, int k, SymMat& M) {
        int n = M.n;
        if (op.swap_with >= 0) {
            int j = op.swap_with;
            for (int i = 0; i < n; ++i) std::swap(M.at(k, i), M.at(j, i));
            for (int i = 0; i < n; ++i) std::swap(M.at(i, k), M.at(i, j));
        }
        if (op.rotate) {
            // congruence by x_k = u+v, x_j = u-v acting on the form
            int j = op.rot_partner;
            SymMat R = M;
            for (int i = 0; i < n; ++i) {
                if (i == k || i == j) continue;
                double mik = M.at(i, k), mij = M.at(i, j);
                R.at(i, k) = mik + mij;
                R.at(k, i) = R.at(i, k);
                R.at(i, j) = mik - mij;
                R.at(j, i) = R.at(i, j);
            }
            double kk = M.at(k, k), jj = M.at(j, j), kj = M.at(k, j);
            R.at(k, k) = kk + 2 * kj + jj;
            R.at(j, j) = kk - 2 * kj + jj;
            R.at(k, j) = kk - jj;
            R.at(j, k) = kk - jj;
            M = R;
        }
    }

    // z must be relative to the center; returns raw eliminated coords y
    std::array<double, 3> eliminate(std::span<const double> x_abs, bool* ok) const {
        std::array<double, 3> p{};
        std::array<double, 3> z{};
        for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] = x_abs[static_cast<std::size_t>(i)];
            z[static_cast<std::size_t>(i)] =
                x_abs[static_cast<std::size_t>(i)] - qf.center[static_cast<std::size_t>(i)];
        }
        SymMat M = qf.at(std::span<const double>(p.data(), static_cast<std::size_t>(n)));
        std::array<double, 3> y{};
        if (ok) *ok = true;
        for (int k = 0; k < n; ++k) {
            const StepOp& op = steps[static_cast<std::size_t>(k)];
            apply_premap(op, k, z);
            apply_premap_mat(op, k, M);
            double piv = M.at(k, k);
            if (std::fabs(piv) < 1e-14) {
                if (ok) *ok = false;
                return y;
            }
            double acc = z[static_cast<std::size_t>(k)];
            for (int i = k + 1; i < n; ++i)
                acc += M.at(k, i) / piv * z[static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(k)] = std::sqrt(std::fabs(piv)) * acc;
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j < n; ++j)
                    M.at(i, j) -= M.at(k, i) * M.at(k, j) / piv;
        }
        return y;
    }
};

} // namespace

MorseChart morse_chart(const ScalarField& f, std::span<const double> c, double radius) {
    int n = f.dim();
    SymMat H = hessian_at(f, c);
    auto ev = sym_eigenvalues(H);
    double hnorm = H.norm_inf();
    double minabs = 1e300;
    for (double e : ev) minabs = std::min(minabs, std::fabs(e));
    if (minabs <= 1e-8 * (1 + hnorm))
        throw precondition_error("degenerate Hessian at chart center", "normal_form");

    LagrangeChart chart;
    chart.n = n;
    chart.qf = quadratic_remainder(f, c);

    // fix swap/rotation choices and signs from the reduction at the center
    {
        std::array<double, 3> cc{};
        for (int i = 0; i < n; ++i) cc[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
        SymMat M = chart.qf.at(std::span<const double>(cc.data(), static_cast<std::size_t>(n)));
        for (int k = 0; k < n; ++k) {
            StepOp op;
            int best = k;
            for (int i = k; i < n; ++i)
                if (std::fabs(M.at(i, i)) > std::fabs(M.at(best, best))) best = i;
            if (std::fabs(M.at(best, best)) <= 1e-10 * (1 + hnorm)) {
                // all remaining diagonal entries vanish: rotate the largest
                // off-diagonal pair into the diagonal
                int bi = k, bj = k + 1;
                for (int i = k; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (std::fabs(M.at(i, j)) > std::fabs(M.at(bi, bj))) {
                            bi = i;
                            bj = j;
                        }
                if (bi != k) op.swap_with = bi;
                LagrangeChart::apply_premap_mat(op, k, M);
                op.rotate = true;
                op.rot_partner = bj;
                SymMat tmp = M;
                LagrangeChart::apply_premap_mat(StepOp{-1, true, bj, 1.0}, k, tmp);
                M = tmp;
            } else {
                if (best != k) {
                    op.swap_with = best;
                    LagrangeChart::apply_premap_mat(op, k, M);
                }
            }
            double piv = M.at(k, k);
            op.sign = piv < 0 ? -1.0 : 1.0;
            chart.steps.push_back(op);
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j < n; ++j)
                    M.at(i, j) -= M.at(k, i) * M.at(k, j) / piv;
        }
    }

    // chart axis order: negative signs first
    chart.perm.clear();
    for (std::size_t k = 0; k < chart.steps.size(); ++k)
        if (chart.steps[k].sign < 0) chart.perm.push_back(static_cast<int>(k));
    int index = static_cast<int>(chart.perm.size());
    for (std::size_t k = 0; k < chart.steps.size(); ++k)
        if (chart.steps[k].sign >= 0) chart.perm.push_back(static_cast<int>(k));

    // shrink the source ball until every pivot keeps its sign and magnitude
    double r = radius;
    auto pivots_ok = [&](double rr) {
        const int dirs = n == 1 ? 2 : (n == 2 ? 16 : 26);
        for (int d = 0; d < dirs; ++d) {
            std::array<double, 3> x{};
            if (n == 1) {
                x[0] = c[0] + (d == 0 ? rr : -rr);
            } else {
                double ang = 2 * M_PI * d / dirs;
                x[0] = c[0] + rr * std::cos(ang);
                x[1] = c[1] + rr * std::sin(ang);
                if (n == 3) x[2] = c[2] + rr * std::sin(2 * ang) * 0.7;
            }
            for (double scale : {0.25, 0.5, 0.75, 1.0}) {
                std::array<double, 3> xs{};
                for (int i = 0; i < n; ++i)
                    xs[static_cast<std::size_t>(i)] =
                        c[static_cast<std::size_t>(i)] +
                        scale * (x[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]);
                bool ok = true;
                chart.eliminate(std::span<const double>(xs.data(), static_cast<std::size_t>(n)), &ok);
                if (!ok) return false;
            }
        }
        return true;
    };
    while (!pivots_ok(r)) {
        r *= 0.7;
        if (r < 1e-6)
            throw precondition_error("chart radius collapsed below 1e-6", "normal_form");
    }

    MorseChart out;
    out.dim = n;
    for (int i = 0; i < n; ++i) out.center[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    out.index = index;
    out.coindex = n - index;
    out.radius_used = r;

    LagrangeChart ch = chart;
    std::vector<int> perm = chart.perm;
    out.inverse = [ch, perm, n](std::span<const double> src, std::span<double> outv) {
        bool ok = true;
        auto y = ch.eliminate(src, &ok);
        if (!ok) throw certification_error("pivot collapse inside chart", "normal_form");
        for (int i = 0; i < n; ++i)
            outv[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    };

    // chart ball: inscribed radius of the image of the source sphere
    {
        double rmin = 1e300;
        const int dirs = n == 1 ? 2 : (n == 2 ? 32 : 64);
        for (int d = 0; d < dirs; ++d) {
            std::array<double, 3> x{};
            if (n == 1) x[0] = c[0] + (d == 0 ? r : -r);
            else {
                double ang = 2 * M_PI * d / dirs;
                double z = n == 3 ? std::cos(ang * 1.7) * 0.6 : 0.0;
                double xy = std::sqrt(1 - z * z);
                x[0] = c[0] + r * xy * std::cos(ang);
                x[1] = c[1] + r * xy * std::sin(ang);
                if (n == 3) x[2] = c[2] + r * z;
            }
            bool ok = true;
            auto y = ch.eliminate(std::span<const double>(x.data(), static_cast<std::size_t>(n)), &ok);
            double norm = 0;
            for (int i = 0; i < n; ++i) norm += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
            rmin = std::min(rmin, std::sqrt(norm));
        }
        out.chart_radius = 0.95 * rmin;
    }

    // forward map by damped Newton on the eliminate map
    MorseChart tmp = out;
    ScalarField fc = f;
    auto inverse_fn = out.inverse;
    std::array<double, 3> center = out.center;
    double rr = r;
    out.forward = [ch, inverse_fn, center, n, rr](std::span<const double> chart_pt,
                                                  std::span<double> outv) {
        std::array<double, 3> x = center;
        std::array<double, 3> target{};
        for (int i = 0; i < n; ++i) target[static_cast<std::size_t>(i)] = chart_pt[static_cast<std::size_t>(i)];
        for (int it = 0; it < 80; ++it) {
            std::array<double, 3> y{};
            inverse_fn(std::span<const double>(x.data(), static_cast<std::size_t>(n)),
                       std::span<double>(y.data(), static_cast<std::size_t>(n)));
            double err = 0;
            std::array<double, 3> res{};
            for (int i = 0; i < n; ++i) {
                res[static_cast<std::size_t>(i)] =
                    target[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
                err = std::max(err, std::fabs(res[static_cast<std::size_t>(i)]));
            }
            if (err < 1e-13) break;
            // FD Jacobian of the inverse map
            std::array<double, 9> J{};
            double h = 1e-7 * (1 + rr);
            for (int j = 0; j < n; ++j) {
                std::array<double, 3> xp = x, xm = x;
                xp[static_cast<std::size_t>(j)] += h;
                xm[static_cast<std::size_t>(j)] -= h;
                std::array<double, 3> yp{}, ym{};
                inverse_fn(std::span<const double>(xp.data(), static_cast<std::size_t>(n)),
                           std::span<double>(yp.data(), static_cast<std::size_t>(n)));
                inverse_fn(std::span<const double>(xm.data(), static_cast<std::size_t>(n)),
                           std::span<double>(ym.data(), static_cast<std::size_t>(n)));
                for (int i = 0; i < n; ++i)
                    J[static_cast<std::size_t>(i * n + j)] =
                        (yp[static_cast<std::size_t>(i)] - ym[static_cast<std::size_t>(i)]) / (2 * h);
            }
            std::array<double, 3> step{};
            if (!solve_linear(n, J, res, step))
                throw certification_error("chart inversion Jacobian is singular", "normal_form");
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += step[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) outv[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    };

    // residual over the chart ball
    {
        double fc0 = f.value(c);
        double bound = 0;
        unsigned long long state = 88172645463325252ULL;
        auto rnd = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return static_cast<double>(state % 1000000ULL) / 1000000.0;
        };
        for (int s = 0; s < 1000; ++s) {
            std::array<double, 3> xt{};
            double norm2 = 0;
            for (int i = 0; i < n; ++i) {
                xt[static_cast<std::size_t>(i)] = 2 * rnd() - 1;
                norm2 += xt[static_cast<std::size_t>(i)] * xt[static_cast<std::size_t>(i)];
            }
            double scale = out.chart_radius * std::pow(rnd(), 1.0 / n) / std::max(1e-12, std::sqrt(norm2));
            for (int i = 0; i < n; ++i) xt[static_cast<std::size_t>(i)] *= scale;
            std::array<double, 3> src{};
            out.forward(std::span<const double>(xt.data(), static_cast<std::size_t>(n)),
                        std::span<double>(src.data(), static_cast<std::size_t>(n)));
            double q = 0;
            for (int i = 0; i < n; ++i) {
                double sgn = i < out.index ? -1.0 : 1.0;
                q += sgn * xt[static_cast<std::size_t>(i)] * xt[static_cast<std::size_t>(i)];
            }
            double val = f.value(std::span<const double>(src.data(), static_cast<std::size_t>(n)));
            bound = std::max(bound, std::fabs(val - fc0 - q));
        }
        out.residual_bound = bound;
        if (bound > 1e-6 * std::max(1.0, std::fabs(fc0)))
            throw certification_error("Morse chart residual above tolerance", "normal_form");
    }
    return out;
}

NegativeGraph negative_graph(const SymMat& B, const std::vector<std::array<double, 3>>& N,
                             const std::vector<std::array<double, 3>>& Nprime) {
    int n = B.n;
    int k = static_cast<int>(N.size());
    int m = n - k;
    if (static_cast<int>(Nprime.size()) != k)
        throw precondition_error("N and N' must have the same dimension", "negative_graph");

    auto mul = [&](const std::array<double, 3>& v) {
        std::array<double, 3> r{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r[static_cast<std::size_t>(i)] += B.at(i, j) * v[static_cast<std::size_t>(j)];
        return r;
    };
    auto bform = [&](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        auto Bb = mul(b);
        double s = 0;
        for (int i = 0; i < n; ++i) s += a[static_cast<std::size_t>(i)] * Bb[static_cast<std::size_t>(i)];
        return s;
    };

    // maximal-negativity checks: Gram matrices of N and N' must be negative
    // definite and dim N must equal the negative index of B
    auto check_negative = [&](const std::vector<std::array<double, 3>>& basis, const char* name) {
        SymMat gram = SymMat::zero(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                gram.at(i, j) = bform(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
        auto evs = sym_eigenvalues(gram);
        if (evs.back() >= 0)
            throw precondition_error(std::string(name) + " is not B-negative definite",
                                      "negative_graph", name);
    };
    check_negative(N, "N");
    check_negative(Nprime, "N'");
    {
        auto evb = sym_eigenvalues(B);
        int negs = 0;
        for (double e : evb) {
            if (std::fabs(e) < 1e-12) throw precondition_error("B is degenerate", "negative_graph");
            if (e < 0) negs++;
        }
        if (negs != k)
            throw precondition_error("N is not maximal negative for B", "negative_graph");
    }

    // P = B-orthogonal complement of N: nullspace of the k x n matrix (B n_i)
    std::vector<std::array<double, 3>> rows;
    for (const auto& v : N) rows.push_back(mul(v));
    std::vector<std::array<double, 3>> P;
    {
        // Gaussian elimination for the nullspace, n <= 3
        std::vector<std::array<double, 3>> R = rows;
        std::vector<int> pivot_col;
        int rrows = static_cast<int>(R.size());
        int prow = 0;
        for (int col = 0; col < n && prow < rrows; ++col) {
            int sel = -1;
            for (int r2 = prow; r2 < rrows; ++r2)
                if (std::fabs(R[static_cast<std::size_t>(r2)][static_cast<std::size_t>(col)]) > 1e-12) {
                    sel = r2;
                    break;
                }
            if (sel < 0) continue;
            std::swap(R[static_cast<std::size_t>(sel)], R[static_cast<std::size_t>(prow)]);
            double pv = R[static_cast<std::size_t>(prow)][static_cast<std::size_t>(col)];
            for (int c2 = 0; c2 < n; ++c2) R[static_cast<std::size_t>(prow)][static_cast<std::size_t>(c2)] /= pv;
            for (int r2 = 0; r2 < rrows; ++r2) {
                if (r2 == prow) continue;
                double fm = R[static_cast<std::size_t>(r2)][static_cast<std::size_t>(col)];
                for (int c2 = 0; c2 < n; ++c2)
                    R[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)] -=
                        fm * R[static_cast<std::size_t>(prow)][static_cast<std::size_t>(c2)];
            }
            pivot_col.push_back(col);
            ++prow;
        }
        for (int col = 0; col < n; ++col) {
            bool is_pivot = false;
            for (int pc : pivot_col)
                if (pc == col) is_pivot = true;
            if (is_pivot) continue;
            std::array<double, 3> v{};
            v[static_cast<std::size_t>(col)] = 1.0;
            for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2)
                v[static_cast<std::size_t>(pivot_col[r2])] = -R[r2][static_cast<std::size_t>(col)];
            P.push_back(v);
        }
    }
    if (static_cast<int>(P.size()) != m)
        throw precondition_error("failed to build B-orthogonal complement", "negative_graph");

    // coordinates of N' vectors in the [N P] basis
    NegativeGraph out;
    out.n_dim = k;
    out.p_dim = m;
    for (int i = 0; i < m; ++i) out.p_basis[static_cast<std::size_t>(i)] = P[static_cast<std::size_t>(i)];

    // alpha solves [N P] alpha = w
    auto coords = [&](const std::array<double, 3>& w) {
        std::array<double, 9> A{};
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j)
                A[static_cast<std::size_t>(i * n + j)] = N[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            for (int j = 0; j < m; ++j)
                A[static_cast<std::size_t>(i * n + k + j)] = P[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        std::array<double, 3> rhs{};
        for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
        std::array<double, 3> alpha{};
        if (!solve_linear(n, A, rhs, alpha))
            throw precondition_error("degenerate basis in negative_graph", "negative_graph");
        return alpha;
    };

    // M maps N'-coefficients to their N-parts; invert against each e_i
    std::array<double, 9> Mmat{};
    std::vector<std::array<double, 3>> alphas;
    for (int j = 0; j < k; ++j) alphas.push_back(coords(Nprime[static_cast<std::size_t>(j)]));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            Mmat[static_cast<std::size_t>(i * k + j)] = alphas[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    for (int i = 0; i < k; ++i) {
        std::array<double, 3> e{};
        e[static_cast<std::size_t>(i)] = 1.0;
        std::array<double, 3> cvec{};
        if (!solve_linear(k, Mmat, e, cvec))
            throw precondition_error("N' does not project onto N", "negative_graph");
        // P-part of N' c
        std::array<double, 3> w{};
        for (int j = 0; j < k; ++j)
            for (int d = 0; d < n; ++d)
                w[static_cast<std::size_t>(d)] +=
                    cvec[static_cast<std::size_t>(j)] * Nprime[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
        auto alpha = coords(w);
        for (int j = 0; j < m; ++j)
            out.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                alpha[static_cast<std::size_t>(k + j)];
    }

    // certification: q|P(g(x)) < -q|N(x) on sampled unit vectors of N
    out.certified = true;
    unsigned long long state = 123456789ULL;
    auto rnd = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state % 1000000ULL) / 1000000.0 * 2.0 - 1.0;
    };
    for (int s = 0; s < 200 && out.certified; ++s) {
        std::array<double, 3> xc{};
        double norm = 0;
        for (int i = 0; i < k; ++i) {
            xc[static_cast<std::size_t>(i)] = rnd();
            norm += xc[static_cast<std::size_t>(i)] * xc[static_cast<std::size_t>(i)];
        }
        if (norm < 1e-6) continue;
        norm = std::sqrt(norm);
        for (int i = 0; i < k; ++i) xc[static_cast<std::size_t>(i)] /= norm;
        std::array<double, 3> nvec{}, gvec{};
        for (int i = 0; i < k; ++i)
            for (int d = 0; d < n; ++d)
                nvec[static_cast<std::size_t>(d)] +=
                    xc[static_cast<std::size_t>(i)] * N[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
        for (int j = 0; j < m; ++j) {
            double gc = 0;
            for (int i = 0; i < k; ++i)
                gc += out.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * xc[static_cast<std::size_t>(i)];
            for (int d = 0; d < n; ++d)
                gvec[static_cast<std::size_t>(d)] += gc * P[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
        }
        if (!(bform(gvec, gvec) < -bform(nvec, nvec) + 1e-12)) out.certified = false;
    }
    return out;
}

std::array<double, 3> negative_graph_point(const NegativeGraph& gr,
                                           const std::vector<std::array<double, 3>>& N,
                                           std::span<const double> n_coords) {
    std::array<double, 3> v{};
    for (int i = 0; i < gr.n_dim; ++i)
        for (int d = 0; d < 3; ++d)
            v[static_cast<std::size_t>(d)] +=
                n_coords[static_cast<std::size_t>(i)] * N[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
    for (int j = 0; j < gr.p_dim; ++j) {
        double gc = 0;
        for (int i = 0; i < gr.n_dim; ++i)
            gc += gr.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                  n_coords[static_cast<std::size_t>(i)];
        for (int d = 0; d < 3; ++d)
            v[static_cast<std::size_t>(d)] += gc * gr.p_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
    }
    return v;
}

} // namespace morseval
