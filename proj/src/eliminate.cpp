#include "morseval/eliminate.hpp"

#include "morseval/bump.hpp"
#include "morseval/errors.hpp"

#include <algorithm>
#include <cmath>

namespace morseval {

void ProductModel::validate() const {
    if (k.dim() != 1) throw precondition_error("product model needs a 1D factor", "eliminate");
    if (neg_dim < 0 || pos_dim < 0 || dim() > 3)
        throw precondition_error("fiber dims out of range (total dim <= 3)", "eliminate");
    if (!(radius > 0)) throw precondition_error("tube radius must be positive", "eliminate");
    if (box.dim != dim()) throw precondition_error("box dim mismatch", "eliminate");
}

double ProductModel::eval(std::span<const double> p) const {
    double v = k.value(p.first(1));
    for (int i = 0; i < neg_dim; ++i) {
        double y = p[static_cast<std::size_t>(1 + i)];
        v -= y * y;
    }
    for (int i = 0; i < pos_dim; ++i) {
        double z = p[static_cast<std::size_t>(1 + neg_dim + i)];
        v += z * z;
    }
    return v;
}

ScalarField ProductModel::as_field() const {
    std::vector<std::string> vars{"u"};
    std::string src = "(" + print_expr(k.ast(), {"u"}) + ")";
    for (int i = 0; i < neg_dim; ++i) {
        std::string y = "y" + std::to_string(i);
        vars.push_back(y);
        src += " - " + y + "^2";
    }
    for (int i = 0; i < pos_dim; ++i) {
        std::string z = "z" + std::to_string(i);
        vars.push_back(z);
        src += " + " + z + "^2";
    }
    return ScalarField::parse(src, vars, box);
}

namespace {

double fiber_neg(const ProductModel& m, std::span<const double> p) {
    double v = 0;
    for (int i = 0; i < m.neg_dim; ++i) {
        double y = p[static_cast<std::size_t>(1 + i)];
        v += y * y;
    }
    return v;
}

double fiber_pos(const ProductModel& m, std::span<const double> p) {
    double v = 0;
    for (int i = 0; i < m.pos_dim; ++i) {
        double z = p[static_cast<std::size_t>(1 + m.neg_dim + i)];
        v += z * z;
    }
    return v;
}

} // namespace

EliminationResult eliminate_pair(const ProductModel& model) {
    model.validate();
    const double lo = model.box.lo[0], hi = model.box.hi[0];
    Fn1D kf = Fn1D::from_field(model.k);

    auto base_census = census_1d(kf, lo, hi, 10000, 1e-10);
    if (base_census.size() != 2)
        throw precondition_error("1D factor must have exactly the hump-dip pair",
                                  "eliminate/detect");
    double c_h = base_census[0].location[0];
    double d_m = base_census[1].location[0];
    if (!(base_census[0].index == 1 && base_census[1].index == 0))
        throw precondition_error("1D factor must be a hump followed by a dip",
                                  "eliminate/detect");

    EliminationReport rep;

    // stage 1: lower the hump below the nape level when needed
    double kmax_right = -1e300, arg_right = d_m;
    {
        double h = (hi - d_m) / 2000.0;
        for (int i = 1; i < 2000; ++i) {
            double x = d_m + h * i;
            double v = kf.f(x);
            if (v > kmax_right) {
                kmax_right = v;
                arg_right = x;
            }
        }
    }
    double kc = kf.f(c_h), kd = kf.f(d_m);
    if (!(kmax_right > kd))
        throw precondition_error("no rising branch right of the dip", "eliminate/stage1");

    bool need_lower = !(kc < kmax_right - 1e-9);
    std::function<double(double, double)> stage1_eval; // (sigma, u)
    Fn1D ktilde = kf;
    double stage1_lo = 0, stage1_hi = 0;
    if (need_lower) {
        // nape value: highest available point on the rising branch
        double kn = kmax_right;
        (void)arg_right;
        double u = (kd + 2 * kn) / 3.0;
        double u_prime = (2 * kd + kn) / 3.0;
        if (!(u < kc))
            throw precondition_error("hump already below the stage-1 target", "eliminate/stage1");
        auto lowered = lower_value_1d(kf, lo, d_m, kc, u, u_prime);
        rep.lowered = true;
        rep.kappa = kc;
        rep.u = u;
        rep.u_prime = u_prime;
        stage1_eval = lowered.eval;
        ktilde = lowered.at_sigma1;
        stage1_lo = lowered.support_lo;
        stage1_hi = lowered.support_hi;
    }

    DromedaryFrame frame = detect(ktilde, lo, hi, 1e-10);
    rep.frame = frame;

    // crest headroom of the f-side val over the restricted arc: the crest
    // f|W + r must clear 3 f(n) - 2 f(c) along [b', n']
    if (model.pos_dim > 0) {
        double fn = ktilde.f(frame.n);
        double fc = ktilde.f(frame.d);
        double need = 3 * fn - 2 * fc;
        double kmin_arc = 1e300;
        for (int i = 0; i <= 200; ++i)
            kmin_arc = std::min(
                kmin_arc, ktilde.f(frame.b_prime + (frame.n_prime - frame.b_prime) * i / 200.0));
        if (!(kmin_arc + model.radius > need))
            throw precondition_error("tube radius too small: crest must clear 3 f(n) - 2 f(c)",
                                      "eliminate/model");
    }
    DromedaryPath dpath = dromedary_path(ktilde, frame);
    rep.eta1 = dpath.eta1;
    rep.eta2 = dpath.eta2;
    rep.t0 = 1.0 + dpath.t0; // global parameter: elevator stage starts at s = 1

    // full path on the product
    ProductModel m = model;
    Fn1D kt = ktilde;
    auto dpeval = dpath.eval;
    double r = model.radius;
    bool lowered = need_lower;
    auto s1 = stage1_eval;
    DeformationPath path;
    path.dim = model.dim();
    path.s_min = 0.0;
    path.s_max = 3.0;
    path.eval = [m, kt, dpeval, r, lowered, s1](double s, std::span<const double> p) {
        double u = p[0];
        double qy = fiber_neg(m, p);
        double qz = fiber_pos(m, p);
        if (s <= 0) return m.eval(p);
        if (s <= 1.0) {
            double kv = lowered ? s1(s, u) : kt.f(u);
            return kv - qy + qz;
        }
        // elevator stage on -F restricted to the z = 0 slab
        double ktu = kt.f(u);
        if (qy >= r) return ktu - qy + qz;
        double ks = dpeval(std::min(s - 1.0, 2.0), u);
        double tbar = ktu - ks;
        if (tbar == 0.0) return ktu - qy + qz;
        CutoffSpec spec{CutoffKind::alpha_dec, r / 3.0, -ktu + r};
        double g = cutoff_flow(spec, tbar, -ktu + qy);
        return -g + qz;
    };
    path.landmarks["t0"] = rep.t0;
    path.landmarks["t0_closed"] = 1.0 + dpath.t0_closed;
    path.landmarks["sigma0"] = dpath.sigma0;

    // support: cylinder over the union of the stage supports
    double su_lo = frame.b, su_hi = frame.n;
    if (need_lower) {
        su_lo = std::min(su_lo, stage1_lo);
        su_hi = std::max(su_hi, stage1_hi);
    }
    Box support;
    support.dim = model.dim();
    support.lo[0] = su_lo;
    support.hi[0] = su_hi;
    for (int i = 1; i < model.dim(); ++i) {
        support.lo[static_cast<std::size_t>(i)] = model.box.lo[static_cast<std::size_t>(i)];
        support.hi[static_cast<std::size_t>(i)] = model.box.hi[static_cast<std::size_t>(i)];
    }
    path.support = support;
    rep.support = support;

    // exactness outside the support cylinder
    {
        double worst = 0;
        for (double s : {0.5, 1.0, 1.7, 2.3, 3.0})
            for (int i = 0; i <= 40; ++i) {
                double u = lo + (hi - lo) * i / 40.0;
                if (u > su_lo && u < su_hi) continue;
                std::array<double, 3> p{u, 0, 0};
                if (model.dim() >= 2) p[1] = 0.3;
                if (model.dim() >= 3) p[2] = -0.2;
                std::span<const double> ps(p.data(), static_cast<std::size_t>(model.dim()));
                worst = std::max(worst, std::fabs(path.eval(s, ps) - model.eval(ps)));
            }
        rep.max_outside = worst;
    }

    // census timeline along the 1D axis, lifted to the product
    {
        double t0g = rep.t0;
        std::vector<double> svals{0.0, 0.5, 1.0, 1.5, 2.0, t0g - 0.05, t0g, t0g + 0.05, 3.0};
        std::sort(svals.begin(), svals.end());
        for (double s : svals) {
            Fn1D prof;
            auto pe = path.eval;
            int dim = model.dim();
            prof.f = [pe, s, dim](double u) {
                std::array<double, 3> p{u, 0, 0};
                return pe(s, std::span<const double>(p.data(), static_cast<std::size_t>(dim)));
            };
            // exact axis derivatives: stage 1 via the flow identity, the
            // elevator stage rides the dromedary path exactly on the axis
            if (s <= 1.0 && lowered) {
                auto s1c = s1;
                Fn1D kfc = kf;
                double alo = stage1_lo, ahi = stage1_hi;
                prof.df = [s1c, kfc, s, alo, ahi](double u) {
                    const double h = 1e-6;
                    return (s1c(s, u + h) - s1c(s, u - h)) / (2 * h);
                };
                prof.d2f = [s1c, kfc, s](double u) {
                    const double h = 1e-5;
                    return (s1c(s, u + h) - 2 * s1c(s, u) + s1c(s, u - h)) / (h * h);
                };
            } else if (s <= 1.0) {
                prof.df = kf.df;
                prof.d2f = kf.d2f;
            } else {
                double sd = std::min(s - 1.0, 2.0);
                auto dx = dpath.deriv_x;
                auto dxx = dpath.deriv2_x;
                prof.df = [dx, sd](double u) { return dx(sd, u); };
                prof.d2f = [dxx, sd](double u) { return dxx(sd, u); };
            }
            auto pts1d = census_1d(prof, lo, hi, 8192, 1e-5);
            std::vector<CriticalPoint> lifted;
            for (const auto& cp : pts1d) {
                CriticalPoint q = cp;
                q.dim = model.dim();
                q.index = cp.index + model.neg_dim;
                q.coindex = cp.coindex + model.pos_dim;
                for (int i = 1; i < model.dim(); ++i) q.location[static_cast<std::size_t>(i)] = 0;
                for (int i = 0; i < model.neg_dim; ++i) q.hessian_eigenvalues.push_back(-2.0);
                for (int i = 0; i < model.pos_dim; ++i) q.hessian_eigenvalues.push_back(2.0);
                std::sort(q.hessian_eigenvalues.begin(), q.hessian_eigenvalues.end());
                lifted.push_back(q);
            }
            rep.timeline.emplace_back(s, lifted);
        }
    }

    // pseudo-gradient blend checks at regular parameters
    {
        ScalarField F = model.as_field();
        std::vector<FieldFn> Zorig;
        for (int i = 0; i < model.dim(); ++i) Zorig.push_back(F.deriv(i).fn());
        for (double s : {0.5, 1.5, 2.5, 3.0}) {
            FieldFn fs = path.at(s);
            auto Zb = blend_pg(Zorig, fs, model.dim(), model.radius);
            Grid g;
            g.counts = {24, 12, 12};
            auto pr = verify_pgf(Zb, fd_jetfn(fs, model.dim(), 1e-6), model.dim(), model.box, g,
                                 1e-4);
            rep.pgf.emplace_back(s, pr);
        }
    }

    EliminationResult res;
    res.path = std::move(path);
    res.report = std::move(rep);
    return res;
}

std::vector<FieldFn> blend_pg(const std::vector<FieldFn>& Z, const FieldFn& f_t, int dim,
                              double r) {
    if (!(r > 0)) throw precondition_error("blend_pg requires r > 0", "eliminate");
    std::vector<FieldFn> out;
    for (int i = 0; i < dim; ++i) {
        FieldFn zi = Z[static_cast<std::size_t>(i)];
        FieldFn ft = f_t;
        out.push_back([zi, ft, r, i, dim](std::span<const double> p) {
            double w = beta(ft(p) / r);
            double gradi = 0;
            {
                const double h = 1e-6;
                std::array<double, 3> pp{}, pm{};
                for (int d2 = 0; d2 < dim; ++d2) {
                    pp[static_cast<std::size_t>(d2)] = p[static_cast<std::size_t>(d2)];
                    pm[static_cast<std::size_t>(d2)] = p[static_cast<std::size_t>(d2)];
                }
                pp[static_cast<std::size_t>(i)] += h;
                pm[static_cast<std::size_t>(i)] -= h;
                gradi = (ft(std::span<const double>(pp.data(), static_cast<std::size_t>(dim))) -
                         ft(std::span<const double>(pm.data(), static_cast<std::size_t>(dim)))) /
                        (2 * h);
            }
            return (1.0 - w) * gradi + w * zi(p);
        });
    }
    return out;
}

} // namespace morseval
