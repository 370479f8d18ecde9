#include "morseval/val.hpp"

#include "morseval/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace morseval {

namespace {

ScalarField constant_field(double v) {
    ExprAst ast;
    ast.root = ast.add_node({NodeKind::Constant, v, -1, 0, -1, -1});
    return ScalarField(ast, {}, Box::interval(-1, 1));
}

ScalarField sum_of_squares(int nvars) {
    std::vector<std::string> vars;
    for (int i = 0; i < nvars; ++i) vars.push_back("f" + std::to_string(i));
    std::string src;
    for (int i = 0; i < nvars; ++i) {
        if (i) src += " + ";
        src += vars[static_cast<std::size_t>(i)] + "^2";
    }
    if (nvars == 0) return constant_field(0.0);
    return ScalarField::parse(src, vars);
}

std::string point_str(std::span<const double> p) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", p[i]);
        if (i) s += ", ";
        s += buf;
    }
    return s + ")";
}

// uniform sample points over a box, about `per_axis` per axis
std::vector<std::array<double, 3>> box_samples(const Box& box, int per_axis) {
    std::vector<std::array<double, 3>> pts;
    std::array<int, 3> counts{1, 1, 1};
    for (int i = 0; i < box.dim; ++i) counts[static_cast<std::size_t>(i)] = per_axis;
    for (int k = 0; k < counts[2]; ++k)
        for (int j = 0; j < counts[1]; ++j)
            for (int i = 0; i < counts[0]; ++i) {
                std::array<double, 3> p{};
                std::array<int, 3> idx{i, j, k};
                for (int d = 0; d < box.dim; ++d) {
                    int c = counts[static_cast<std::size_t>(d)];
                    p[static_cast<std::size_t>(d)] =
                        box.lo[static_cast<std::size_t>(d)] +
                        (box.hi[static_cast<std::size_t>(d)] - box.lo[static_cast<std::size_t>(d)]) *
                            (c == 1 ? 0.5 : static_cast<double>(idx[static_cast<std::size_t>(d)]) / (c - 1));
                }
                pts.push_back(p);
            }
    return pts;
}

} // namespace

double TubeChart::base_value(std::span<const double> p) const {
    return f_on_base.value(p.first(static_cast<std::size_t>(base_dim)));
}

double TubeChart::fiber_metric(std::span<const double> p) const {
    if (fiber_dim() == 0) return 0.0;
    return q.value(p.subspan(static_cast<std::size_t>(base_dim)));
}

double TubeChart::size(std::span<const double> p) const {
    return r_w.value(p.first(static_cast<std::size_t>(base_dim)));
}

double TubeChart::crest(std::span<const double> p) const {
    return base_value(p) + size(p);
}

void TubeChart::validate(const FieldFn& f, int samples, double tol) const {
    int per_axis = std::max(2, static_cast<int>(std::pow(samples, 1.0 / total_dim)));
    std::vector<std::array<double, 3>> base_pts;
    if (base_dim == 0) base_pts.push_back({});
    else base_pts = box_samples(base_box, per_axis);
    for (const auto& bp : base_pts) {
        std::span<const double> bs(bp.data(), static_cast<std::size_t>(base_dim));
        double r = r_w.value(bs);
        if (!(r > 0)) throw precondition_error("tube size r_W must be positive", "tube", point_str(bs));
        double half = std::sqrt(r);
        // sample the fiber ball through the bounding cube of radius sqrt(r)
        Box fiber_box;
        fiber_box.dim = fiber_dim();
        for (int i = 0; i < fiber_dim(); ++i) {
            fiber_box.lo[static_cast<std::size_t>(i)] = -half;
            fiber_box.hi[static_cast<std::size_t>(i)] = half;
        }
        std::vector<std::array<double, 3>> fiber_pts;
        if (fiber_dim() == 0) fiber_pts.push_back({});
        else fiber_pts = box_samples(fiber_box, per_axis);
        for (const auto& fp : fiber_pts) {
            double qv = fiber_dim() ? q.value(std::span<const double>(fp.data(), static_cast<std::size_t>(fiber_dim()))) : 0.0;
            if (qv > r) continue;
            std::array<double, 3> v{};
            for (int i = 0; i < base_dim; ++i) v[static_cast<std::size_t>(i)] = bp[static_cast<std::size_t>(i)];
            for (int i = 0; i < fiber_dim(); ++i)
                v[static_cast<std::size_t>(base_dim + i)] = fp[static_cast<std::size_t>(i)];
            std::span<const double> vs(v.data(), static_cast<std::size_t>(total_dim));
            double fv = f(vs);
            double model = f_on_base.value(bs) + qv;
            if (std::fabs(fv - model) > tol * (1.0 + std::fabs(fv)))
                throw precondition_error("tube invariant f = f|W o pi + q violated", "tube",
                                          point_str(vs));
        }
    }
}

TubeChart TubeChart::point_base(int total_dim, double f_value, double r) {
    TubeChart t;
    t.base_dim = 0;
    t.total_dim = total_dim;
    t.f_on_base = constant_field(f_value);
    t.q = sum_of_squares(total_dim);
    t.r_w = constant_field(r);
    t.base_box = Box::interval(-1, 1);
    return t;
}

TubeChart TubeChart::line_base(int total_dim, ScalarField f_on_base, ScalarField r_w, Box base_box) {
    TubeChart t;
    t.base_dim = 1;
    t.total_dim = total_dim;
    t.f_on_base = std::move(f_on_base);
    t.q = sum_of_squares(total_dim - 1);
    t.r_w = std::move(r_w);
    t.base_box = base_box;
    return t;
}

namespace {

void check_elevator_hypothesis(const TubeChart& tube, const FieldFn& e_on_base) {
    std::vector<std::array<double, 3>> base_pts;
    if (tube.base_dim == 0) base_pts.push_back({});
    else base_pts = box_samples(tube.base_box, 257);
    double worst = -1e300;
    std::array<double, 3> worst_pt{};
    for (const auto& bp : base_pts) {
        std::span<const double> bs(bp.data(), static_cast<std::size_t>(tube.base_dim));
        double fw = tube.f_on_base.value(bs);
        double h = fw + tube.r_w.value(bs);
        double bound = (h + 2 * fw) / 3.0;
        double excess = e_on_base(bs) - bound;
        if (excess > worst) {
            worst = excess;
            worst_pt = bp;
        }
    }
    if (worst > 1e-12)
        throw precondition_error("elevator hypothesis e <= (h_W + 2 f|W)/3 violated", "elevate",
                                  point_str(std::span<const double>(worst_pt.data(),
                                                                    static_cast<std::size_t>(tube.base_dim))));
}

} // namespace

FieldFn elevate(const FieldFn& f, const TubeChart& tube, const FieldFn& e_on_base, double s) {
    tube.validate(f);
    check_elevator_hypothesis(tube, e_on_base);
    TubeChart t = tube;
    FieldFn fc = f;
    FieldFn ec = e_on_base;
    return [t, fc, ec, s](std::span<const double> v) {
        double fv = fc(v);
        double qv = t.fiber_metric(v);
        double rv = t.size(v);
        if (qv >= rv) return fv; // outside the closed tube (boundary is fixed anyway)
        std::span<const double> bs = v.first(static_cast<std::size_t>(t.base_dim));
        double fw = t.f_on_base.value(bs);
        double a = fw + rv;
        double tbar = ec(bs) - fw;
        if (tbar == 0.0) return fv;
        CutoffSpec spec{CutoffKind::alpha_dec, rv / 3.0, a};
        return cutoff_flow(spec, s * tbar, fv);
    };
}

DeformationPath elevate_path(const FieldFn& f, const TubeChart& tube, const FieldFn& e_on_base) {
    FieldFn at1 = elevate(f, tube, e_on_base, 1.0); // runs the hypothesis check once
    (void)at1;
    TubeChart t = tube;
    FieldFn fc = f;
    FieldFn ec = e_on_base;
    DeformationPath path;
    path.dim = tube.total_dim;
    path.s_min = 0.0;
    path.s_max = 1.0;
    path.eval = [t, fc, ec](double s, std::span<const double> v) {
        double sc = std::clamp(s, 0.0, 1.0);
        double fv = fc(v);
        double qv = t.fiber_metric(v);
        double rv = t.size(v);
        if (qv >= rv) return fv;
        std::span<const double> bs = v.first(static_cast<std::size_t>(t.base_dim));
        double fw = t.f_on_base.value(bs);
        double tbar = ec(bs) - fw;
        if (tbar == 0.0) return fv;
        CutoffSpec spec{CutoffKind::alpha_dec, rv / 3.0, fw + rv};
        return cutoff_flow(spec, sc * tbar, fv);
    };
    // support: the tube, bounded by the fiber ball of the largest size sample
    Box support;
    support.dim = tube.total_dim;
    double rmax = 0;
    std::vector<std::array<double, 3>> base_pts;
    if (tube.base_dim == 0) base_pts.push_back({});
    else base_pts = box_samples(tube.base_box, 64);
    for (const auto& bp : base_pts)
        rmax = std::max(rmax, tube.r_w.value(std::span<const double>(
                                   bp.data(), static_cast<std::size_t>(tube.base_dim))));
    for (int i = 0; i < tube.base_dim; ++i) {
        support.lo[static_cast<std::size_t>(i)] = tube.base_box.lo[static_cast<std::size_t>(i)];
        support.hi[static_cast<std::size_t>(i)] = tube.base_box.hi[static_cast<std::size_t>(i)];
    }
    for (int i = tube.base_dim; i < tube.total_dim; ++i) {
        support.lo[static_cast<std::size_t>(i)] = -std::sqrt(rmax);
        support.hi[static_cast<std::size_t>(i)] = std::sqrt(rmax);
    }
    path.support = support;
    return path;
}

DeformationPath lower_value(const FieldFn& f, const TubeChart& tube, double kappa, double u,
                            double u_prime, LowerReport* report) {
    if (!(u_prime < u && u < kappa))
        throw precondition_error("lower_value requires u' < u < kappa", "lower_value");
    tube.validate(f);
    // properness surrogate: the truncated set {f|W >= u'} must stay away
    // from the base-box frontier
    if (tube.base_dim >= 1) {
        int per_axis = 513;
        auto pts = box_samples(tube.base_box, per_axis);
        for (const auto& bp : pts) {
            std::span<const double> bs(bp.data(), static_cast<std::size_t>(tube.base_dim));
            if (tube.f_on_base.value(bs) < u_prime) continue;
            for (int d = 0; d < tube.base_dim; ++d) {
                double lo = tube.base_box.lo[static_cast<std::size_t>(d)];
                double hi = tube.base_box.hi[static_cast<std::size_t>(d)];
                double margin = 2.0 * (hi - lo) / (per_axis - 1);
                if (bp[static_cast<std::size_t>(d)] < lo + margin ||
                    bp[static_cast<std::size_t>(d)] > hi - margin)
                    throw precondition_error(
                        "properness check failed: {f|W >= u'} touches the base frontier",
                        "lower_value", point_str(bs));
            }
        }
    }

    double a_hat = (2 * u_prime + u) / 3.0;
    double eps_hat = (u - u_prime) / 3.0;
    if (report) {
        report->kappa = kappa;
        report->u = u;
        report->u_prime = u_prime;
        report->a_hat = a_hat;
        report->eps_hat = eps_hat;
        report->c_thresh = (u_prime + 2 * u) / 3.0 + (kappa - u);
        double rmin = 1e300;
        std::vector<std::array<double, 3>> base_pts;
        if (tube.base_dim == 0) base_pts.push_back({});
        else base_pts = box_samples(tube.base_box, 64);
        for (const auto& bp : base_pts)
            rmin = std::min(rmin, tube.r_w.value(std::span<const double>(
                                       bp.data(), static_cast<std::size_t>(tube.base_dim))));
        report->q_thresh = 2.0 * rmin / 3.0;
    }

    TubeChart t = tube;
    FieldFn fc = f;
    DeformationPath path;
    path.dim = tube.total_dim;
    path.s_min = 0.0;
    path.s_max = 1.0;
    path.eval = [t, fc, a_hat, eps_hat, u, kappa](double sigma, std::span<const double> v) {
        double fv = fc(v);
        double qv = t.fiber_metric(v);
        double rv = t.size(v);
        if (qv >= rv) return fv;
        std::span<const double> bs = v.first(static_cast<std::size_t>(t.base_dim));
        double fw = t.f_on_base.value(bs);
        double time = beta(sigma) * (u - kappa);
        if (time == 0.0) return fv;
        CutoffSpec base_spec{CutoffKind::beta_inc, eps_hat, a_hat};
        double ew = cutoff_flow(base_spec, time, fw);
        double tbar = ew - fw;
        if (tbar == 0.0) return fv;
        CutoffSpec fiber_spec{CutoffKind::alpha_dec, rv / 3.0, fw + rv};
        return cutoff_flow(fiber_spec, tbar, fv);
    };
    path.support = elevate_path(f, tube, [&t](std::span<const double> bs) {
                       return t.f_on_base.value(bs);
                   }).support;
    return path;
}

Lower1DResult lower_value_1d(const Fn1D& k, double w_lo, double w_hi, double kappa, double u,
                             double u_prime, int grid) {
    if (!(u_prime < u && u < kappa))
        throw precondition_error("lower_value requires u' < u < kappa", "lower_value");
    double h = (w_hi - w_lo) / grid;
    double first = 1e300, last = -1e300;
    for (int i = 0; i <= grid; ++i) {
        double x = w_lo + h * i;
        if (k.f(x) >= u_prime) {
            first = std::min(first, x);
            last = std::max(last, x);
        }
    }
    if (first < w_lo + 2 * h || last > w_hi - 2 * h)
        throw precondition_error("properness check failed: {k >= u'} touches the basin frontier",
                                  "lower_value");

    double a_hat = (2 * u_prime + u) / 3.0;
    double eps_hat = (u - u_prime) / 3.0;
    CutoffSpec spec{CutoffKind::beta_inc, eps_hat, a_hat};

    Lower1DResult res;
    res.report.kappa = kappa;
    res.report.u = u;
    res.report.u_prime = u_prime;
    res.report.a_hat = a_hat;
    res.report.eps_hat = eps_hat;
    res.report.c_thresh = (u_prime + 2 * u) / 3.0 + (kappa - u);
    res.report.q_thresh = 0.0;

    // support = {k > a_hat} within the basin, padded by a grid step
    res.support_lo = w_hi;
    res.support_hi = w_lo;
    for (int i = 0; i <= grid; ++i) {
        double x = w_lo + h * i;
        if (k.f(x) > a_hat) {
            res.support_lo = std::min(res.support_lo, x - h);
            res.support_hi = std::max(res.support_hi, x + h);
        }
    }

    Fn1D kf = k;
    res.eval = [kf, spec, u, kappa, w_lo, w_hi](double sigma, double x) {
        if (x <= w_lo || x >= w_hi) return kf.f(x);
        double time = beta(sigma) * (u - kappa);
        return cutoff_flow(spec, time, kf.f(x));
    };
    double t_full = u - kappa;
    res.at_sigma1.f = [kf, spec, t_full, w_lo, w_hi](double x) {
        if (x <= w_lo || x >= w_hi) return kf.f(x);
        return cutoff_flow(spec, t_full, kf.f(x));
    };
    res.at_sigma1.df = [kf, spec, t_full, w_lo, w_hi](double x) {
        if (x <= w_lo || x >= w_hi) return kf.df(x);
        return cutoff_flow_dx(spec, t_full, kf.f(x)) * kf.df(x);
    };
    res.at_sigma1.d2f = [kf, spec, t_full, w_lo, w_hi](double x) {
        if (x <= w_lo || x >= w_hi) return kf.d2f(x);
        double kx = kf.f(x), dx = kf.df(x);
        return cutoff_flow_dxx(spec, t_full, kx) * dx * dx +
               cutoff_flow_dx(spec, t_full, kx) * kf.d2f(x);
    };
    return res;
}

DeformationPath move_values_1d(const ScalarField& k, const Box& interval,
                               const std::vector<MoveTarget>& targets, double tol) {
    if (k.dim() != 1) throw precondition_error("move_values_1d requires a 1D field");
    Fn1D kf = Fn1D::from_field(k);
    double lo = interval.lo[0], hi = interval.hi[0];
    auto census = census_1d(kf, lo, hi, 4096, tol);
    if (census.empty()) throw precondition_error("no critical points to move", "move_values");
    for (const auto& cp : census)
        if (!cp.nondegenerate)
            throw precondition_error("k must be Morse on the interval", "move_values");

    struct Move {
        double loc = 0, value = 0, target = 0;
        double sign = 1; // +1 for a local min (elevated directly), -1 for a max (via -k)
        double radius = 0, crest = 0, eps = 0, tbar = 0;
    };
    std::vector<Move> moves;
    std::vector<double> final_values;
    for (const auto& cp : census) final_values.push_back(cp.value);
    for (const auto& tgt : targets) {
        std::size_t best = 0;
        double bestd = 1e300;
        for (std::size_t i = 0; i < census.size(); ++i) {
            double d = std::fabs(census[i].location[0] - tgt.location);
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        }
        if (bestd > (hi - lo) / 64.0)
            throw precondition_error("no critical point near requested location", "move_values");
        final_values[best] = tgt.value;
        if (std::fabs(tgt.value - census[best].value) < 1e-12) continue;
        Move m;
        m.loc = census[best].location[0];
        m.value = census[best].value;
        m.target = tgt.value;
        m.sign = census[best].index == 0 ? 1.0 : -1.0;
        moves.push_back(m);
    }

    // order safety: each adjacent (min, max) pair must stay strictly ordered
    for (std::size_t i = 0; i + 1 < census.size(); ++i) {
        double a = final_values[i], b = final_values[i + 1];
        bool i_min = census[i].index == 0;
        if (i_min ? !(a < b) : !(b < a))
            throw precondition_error("order violation: a min may not cross its neighboring max",
                                      "move_values");
    }

    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) { return a.value < b.value; });

    // resolve radii, crests and capacities sequentially; crest boundary values
    // are taken on the function with all earlier moves completed
    std::vector<Move> done;
    auto cur_eval = [&kf, &done](double x) {
        double val = kf.f(x);
        for (const auto& m : done) {
            if (x <= m.loc - m.radius || x >= m.loc + m.radius) continue;
            CutoffSpec spec{CutoffKind::alpha_dec, m.eps, m.crest};
            val = m.sign * cutoff_flow(spec, m.tbar, m.sign * val);
        }
        return val;
    };
    for (auto& m : moves) {
        double dist = 1e300;
        for (const auto& cp : census) {
            double d = std::fabs(cp.location[0] - m.loc);
            if (d > 1e-12) dist = std::min(dist, d);
        }
        dist = std::min({dist, m.loc - lo, hi - m.loc});
        m.radius = 0.9 * dist;
        double bl = cur_eval(m.loc - m.radius), br = cur_eval(m.loc + m.radius);
        m.crest = std::min(m.sign * bl, m.sign * br);
        double v = m.sign * m.value;
        if (!(m.crest > v))
            throw precondition_error("sub-tube has no depth at critical point", "move_values");
        m.eps = (m.crest - v) / 3.0;
        double e = m.sign * m.target;
        if (e > (m.crest + 2 * v) / 3.0 + 1e-12)
            throw precondition_error("target exceeds the elevator budget (h_W + 2 f|W)/3",
                                      "move_values");
        m.tbar = e - v;
        // no other critical point may sit inside this move's support
        for (const auto& cp : census) {
            double x = cp.location[0];
            if (std::fabs(x - m.loc) < 1e-12) continue;
            if (x > m.loc - m.radius && x < m.loc + m.radius &&
                m.sign * cur_eval(x) < m.crest)
                throw precondition_error("overlapping supports between moved critical points",
                                          "move_values");
        }
        done.push_back(m);
    }

    DeformationPath path;
    path.dim = 1;
    path.s_min = 0.0;
    path.s_max = 1.0;
    path.support = interval;
    if (!moves.empty()) {
        double slo = 1e300, shi = -1e300;
        for (const auto& m : moves) {
            slo = std::min(slo, m.loc - m.radius);
            shi = std::max(shi, m.loc + m.radius);
        }
        path.support = Box::interval(slo, shi);
    }
    std::size_t nmoves = moves.size();
    path.eval = [kf, moves, nmoves](double s, std::span<const double> p) {
        double x = p[0];
        double val = kf.f(x);
        if (nmoves == 0) return val;
        double sc = std::clamp(s, 0.0, 1.0);
        for (std::size_t j = 0; j < nmoves; ++j) {
            const Move& m = moves[j];
            double sigma = std::clamp(sc * static_cast<double>(nmoves) - static_cast<double>(j), 0.0, 1.0);
            if (sigma == 0.0) break;
            if (x <= m.loc - m.radius || x >= m.loc + m.radius) continue;
            CutoffSpec spec{CutoffKind::alpha_dec, m.eps, m.crest};
            val = m.sign * cutoff_flow(spec, sigma * m.tbar, m.sign * val);
        }
        return val;
    };
    return path;
}

} // namespace morseval
