#include "morseval/moser.hpp"

#include "morseval/errors.hpp"
#include "morseval/ode.hpp"

#include <cmath>
#include <cstdio>

namespace morseval {

ScalarField MoserProblem::d() const {
    ExprAst ast;
    // rebuild h - k over h's variable list (k must share it)
    ExprAst hh = h.ast();
    ExprAst kk = k.ast();
    ast = hh;
    int kroot_offset = static_cast<int>(ast.nodes.size());
    for (const auto& node : kk.nodes) {
        ExprNode m = node;
        if (m.a >= 0) m.a += kroot_offset;
        if (m.b >= 0) m.b += kroot_offset;
        ast.nodes.push_back(m);
    }
    int kroot = kk.root + kroot_offset;
    ast.root = ast.add_node({NodeKind::Sub, 0.0, -1, 0, hh.root, kroot});
    return ScalarField(ast, h.vars(), h.domain());
}

void MoserProblem::validate() const {
    if (h.dim() != k.dim() || h.dim() != box.dim)
        throw precondition_error("h, k and box must share a dimension", "moser");
    ScalarField diff = d();
    for (const auto& w : w_points) {
        std::span<const double> ws(w.data(), static_cast<std::size_t>(box.dim));
        if (std::fabs(diff.value(ws)) > 1e-10)
            throw precondition_error("d = h - k must vanish on W", "moser");
    }
}

namespace {

// value of the j-th symbolic derivative at x, 1D
double nth_deriv(const ScalarField& f, int j, double x) {
    ScalarField g = f;
    for (int i = 0; i < j; ++i) g = g.deriv(0);
    return g.value(std::span<const double>(&x, 1));
}

} // namespace

std::array<double, 3> moser_field(const MoserProblem& p, double t, std::span<const double> x) {
    int dim = p.box.dim;
    std::array<double, 3> out{};
    if (dim == 1) {
        // Z_t = -d / (k + t d)'
        ScalarField d = p.d();
        double xv = x[0];
        double dv = d.value(x);
        Jet2 kj = p.k.jet(x, 1);
        Jet2 dj = d.jet(x, 1);
        double denom = kj.g[0] + t * dj.g[0];
        double num = -dv;
        const double thresh = 1e-8;
        if (std::fabs(denom) > thresh) {
            out[0] = num / denom;
            return out;
        }
        // removable singularity: quotient of matching higher derivatives
        for (int depth = 1; depth <= 3; ++depth) {
            double num_j = -nth_deriv(d, depth, xv);
            double den_j = nth_deriv(p.k, depth + 1, xv) + t * nth_deriv(d, depth + 1, xv);
            if (std::fabs(den_j) > thresh) return {num_j / den_j, 0, 0};
        }
        if (std::fabs(num) <= 1e-12) return {0, 0, 0};
        throw certification_error(
            "Moser field singular: denominator vanishes with nonvanishing numerator (MJ^2 surrogate failure)",
            "moser_field");
    }
    // 2D gradient-quotient field
    ScalarField d = p.d();
    double dv = d.value(x);
    Jet2 kj = p.k.jet(x, 1);
    Jet2 dj = d.jet(x, 1);
    double g0 = kj.g[0] + t * dj.g[0];
    double g1 = kj.g[1] + t * dj.g[1];
    double norm2 = g0 * g0 + g1 * g1;
    if (norm2 <= 1e-16) {
        if (std::fabs(dv) <= 1e-12) return {0, 0, 0};
        throw certification_error(
            "Moser field singular: gradient vanishes with nonvanishing numerator", "moser_field");
    }
    out[0] = -dv * g0 / norm2;
    out[1] = -dv * g1 / norm2;
    return out;
}

Isotopy moser_isotopy(const MoserProblem& p, const Box& sub_box, int seeds_per_axis,
                      double ode_tol) {
    p.validate();
    int dim = p.box.dim;
    MoserProblem pc = p;
    OdeSettings settings;
    settings.abs_tol = ode_tol;
    settings.rel_tol = ode_tol;

    Isotopy iso;
    iso.sub_box = sub_box;
    Box domain = p.box;
    iso.flow = [pc, settings, dim, domain](double t, std::span<const double> x0) {
        OdeRhs rhs = [&pc, dim, &domain](double tt, const std::array<double, 3>& y,
                                         std::array<double, 3>& dy) {
            std::span<const double> ys(y.data(), static_cast<std::size_t>(dim));
            if (!domain.contains(ys))
                throw certification_error("Moser trajectory escaped the problem box",
                                          "moser_isotopy");
            dy = moser_field(pc, tt, ys);
        };
        std::array<double, 3> y0{};
        for (int i = 0; i < dim; ++i) y0[static_cast<std::size_t>(i)] = x0[static_cast<std::size_t>(i)];
        return ode_integrate(rhs, dim, y0, 0.0, t, settings);
    };

    // certify sup |h o phi_1 - k| over seed points
    double worst = 0;
    std::array<int, 3> counts{1, 1, 1};
    for (int i = 0; i < dim; ++i) counts[static_cast<std::size_t>(i)] = seeds_per_axis;
    for (int j = 0; j < counts[1]; ++j)
        for (int i = 0; i < counts[0]; ++i) {
            std::array<double, 3> seed{};
            std::array<int, 3> idx{i, j, 0};
            for (int d = 0; d < dim; ++d) {
                int c = counts[static_cast<std::size_t>(d)];
                seed[static_cast<std::size_t>(d)] =
                    sub_box.lo[static_cast<std::size_t>(d)] +
                    (sub_box.hi[static_cast<std::size_t>(d)] - sub_box.lo[static_cast<std::size_t>(d)]) *
                        (c == 1 ? 0.5 : static_cast<double>(idx[static_cast<std::size_t>(d)]) / (c - 1));
            }
            std::span<const double> ss(seed.data(), static_cast<std::size_t>(dim));
            auto end = iso.flow(1.0, ss);
            double hv = p.h.value(std::span<const double>(end.data(), static_cast<std::size_t>(dim)));
            double kv = p.k.value(ss);
            worst = std::max(worst, std::fabs(hv - kv));
        }
    iso.conjugacy_residual = worst;

    double wworst = 0;
    for (const auto& w : p.w_points)
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
            auto end = iso.flow(t, std::span<const double>(w.data(), static_cast<std::size_t>(dim)));
            double dist = 0;
            for (int i = 0; i < dim; ++i)
                dist = std::max(dist, std::fabs(end[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(i)]));
            wworst = std::max(wworst, dist);
        }
    iso.w_fix_residual = wworst;
    return iso;
}

int vanishing_order(const ScalarField& f, double w, int max_order) {
    if (max_order > 8) throw precondition_error("vanishing_order limited to order 8", "moser");
    ScalarField g = f;
    for (int j = 0; j <= max_order; ++j) {
        if (std::fabs(g.value(std::span<const double>(&w, 1))) > 1e-7) return j;
        g = g.deriv(0);
    }
    return max_order + 1;
}

OrderCheck mj2_surrogate(const ScalarField& h, const ScalarField& k, double w, int max_order) {
    OrderCheck oc;
    MoserProblem p;
    p.h = h;
    p.k = k;
    p.box = h.domain();
    ScalarField d = p.d();
    oc.ord_d = vanishing_order(d, w, max_order);
    oc.ord_dh = vanishing_order(h.deriv(0), w, max_order);
    oc.pass = oc.ord_d >= 1 + 2 * oc.ord_dh;
    return oc;
}

} // namespace morseval
