#include "morseval/bump.hpp"
#include "morseval/census.hpp"
#include "morseval/dromedary.hpp"
#include "morseval/eliminate.hpp"
#include "morseval/errors.hpp"
#include "morseval/field.hpp"
#include "morseval/moser.hpp"
#include "morseval/normal_form.hpp"
#include "morseval/report.hpp"
#include "morseval/transverse.hpp"
#include "morseval/val.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace morseval;

namespace {

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split_list(s)) out.push_back(std::stod(tok));
    return out;
}

Box parse_box(const std::string& s, int dim) {
    auto v = parse_doubles(s);
    if (static_cast<int>(v.size()) != 2 * dim)
        throw usage_error("box needs " + std::to_string(2 * dim) + " numbers, got '" + s + "'");
    Box b;
    b.dim = dim;
    for (int i = 0; i < dim; ++i) {
        b.lo[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(2 * i)];
        b.hi[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(2 * i + 1)];
    }
    b.validate();
    return b;
}

void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
    if (out_dir.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir + "/" + name);
    f << content;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

void write_path_outputs(const std::string& out_dir, const std::string& format,
                        std::span<const double> svals, std::span<const double> xs,
                        const std::function<double(double, double)>& f) {
    if (format == "csv" || !out_dir.empty()) emit(out_dir, "frames.csv", csv_frames_1d(svals, xs, f));
    if (format == "svg" || !out_dir.empty()) emit(out_dir, "strip.svg", svg_filmstrip(svals, xs, f));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"morseval: executable Morse lemmas on explicit smooth functions"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    std::string out_dir, format = "json", config_path;
    int grid = 64;
    double tol = 1e-8;
    unsigned seed = 1;
    app.add_option("--out", out_dir, "output directory (default: stdout)");
    app.add_option("--format", format, "json|csv|svg");
    app.add_option("--grid", grid, "grid resolution per axis");
    app.add_option("--tol", tol, "numerical tolerance");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--config", config_path, "JSON config file; flags take precedence");

    std::string expr, vars_s = "x", box_s, point_s, targets_s;
    double radius = 1.0;

    auto* cmd_parse = app.add_subcommand("parse", "parse an expression and round-trip it");
    cmd_parse->add_option("--expr", expr)->required();
    cmd_parse->add_option("--vars", vars_s);

    auto* cmd_census = app.add_subcommand("census", "critical-point census on a box");
    cmd_census->add_option("--expr", expr)->required();
    cmd_census->add_option("--vars", vars_s);
    cmd_census->add_option("--box", box_s)->required();

    auto* cmd_bump = app.add_subcommand("bump", "kernel and cutoff reports");
    bool plot = false;
    int samples = 512;
    cmd_bump->add_flag("--plot", plot, "emit CSV (x, rho, beta)");
    cmd_bump->add_option("--samples", samples);

    auto* cmd_nf = app.add_subcommand("normal-form", "Morse canonical chart at a point");
    cmd_nf->add_option("--expr", expr)->required();
    cmd_nf->add_option("--vars", vars_s);
    cmd_nf->add_option("--point", point_s)->required();
    cmd_nf->add_option("--radius", radius)->required();

    auto* cmd_lower = app.add_subcommand("lower", "critical-value lowering path");
    double kappa = 0, uu = 0, uprime = 0, tube_r = 9.0;
    std::string base_expr, base_box_s;
    cmd_lower->add_option("--expr", expr)->required();
    cmd_lower->add_option("--vars", vars_s);
    cmd_lower->add_option("--kappa", kappa)->required();
    cmd_lower->add_option("--u", uu)->required();
    cmd_lower->add_option("--uprime", uprime)->required();
    cmd_lower->add_option("--tube-r", tube_r, "tube size r_W");
    cmd_lower->add_option("--base-expr", base_expr, "f|W for a 1D base (default: point base)");
    cmd_lower->add_option("--base-box", base_box_s);

    auto* cmd_move = app.add_subcommand("move", "move 1D critical values");
    cmd_move->add_option("--expr", expr)->required();
    cmd_move->add_option("--box", box_s)->required();
    cmd_move->add_option("--targets", targets_s, "loc=value;loc=value")->required();

    auto* cmd_moser = app.add_subcommand("moser", "path-method conjugacy");
    cmd_moser->set_help_flag("--help", "print help");
    std::string h_s, k_s, domain_s, w_s = "0";
    cmd_moser->add_option("--h", h_s)->required();
    cmd_moser->add_option("--k", k_s)->required();
    cmd_moser->add_option("--domain", domain_s)->required();
    cmd_moser->add_option("--w", w_s, "fixed points, comma separated");

    auto* cmd_drom = app.add_subcommand("dromedary", "hump-dip cancellation path for a 1D function");
    std::string interval_s;
    int frames = 9;
    cmd_drom->add_option("--expr", expr)->required();
    cmd_drom->add_option("--interval", interval_s)->required();
    cmd_drom->add_option("--frames", frames);

    auto* cmd_trans = app.add_subcommand("transverse", "transverse-sheet extension checks");
    std::string theta_s = "0", dims_s = "1,1";
    double tv_s = 1.0, tv_nu = 0.5, tv_rho = 0.5, tv_delta = 0.3;
    bool reflected = false;
    cmd_trans->add_option("--theta", theta_s, "graph expression in n (or 0)");
    cmd_trans->add_option("--dims", dims_s, "nN,nR");
    cmd_trans->add_option("--s", tv_s);
    cmd_trans->add_option("--nu", tv_nu);
    cmd_trans->add_option("--rho", tv_rho);
    cmd_trans->add_option("--delta", tv_delta);
    cmd_trans->add_flag("--reflected-ray", reflected, "add a reflected intersection ray (embedding counterexample)");

    auto* cmd_elim = app.add_subcommand("eliminate", "eliminate the hump-dip pair in the product model");
    std::string fiber_dims_s = "0,1", fiber_box_s = "-5,5";
    cmd_elim->add_option("--k", expr)->required();
    cmd_elim->add_option("--interval", interval_s)->required();
    cmd_elim->add_option("--fiber-dims", fiber_dims_s, "a,b");
    cmd_elim->add_option("--radius", radius, "arc tube radius");
    cmd_elim->add_option("--fiber-box", fiber_box_s, "lo,hi per fiber axis");
    cmd_elim->add_option("--frames", frames);

    for (auto* sc : {cmd_parse, cmd_census, cmd_bump, cmd_nf, cmd_lower, cmd_move, cmd_moser,
                     cmd_drom, cmd_trans, cmd_elim})
        sc->fallthrough();

    // config file: inject values for options not present on the command line
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    if (!config_path.empty()) {
        std::ifstream cf(config_path);
        if (!cf) {
            std::cerr << "{\"error\":\"cannot open config\",\"stage\":\"cli\",\"witness\":\""
                      << config_path << "\"}\n";
            return 1;
        }
        nlohmann::json j = nlohmann::json::parse(cf, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            std::cerr << "{\"error\":\"config is not a JSON object\",\"stage\":\"cli\",\"witness\":\""
                      << config_path << "\"}\n";
            return 1;
        }
        for (auto& [key, val] : j.items()) {
            std::string flag = "--" + key;
            bool present = false;
            for (const auto& a : args)
                if (a == flag) present = true;
            if (present) continue;
            args.push_back(flag);
            if (!val.is_boolean())
                args.push_back(val.is_string() ? val.get<std::string>() : nlohmann::to_string(val));
        }
    }

    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"cli\",\"witness\":\"\"}\n";
        return 1;
    }

    try {
        auto vars = split_list(vars_s);

        if (*cmd_parse) {
            auto f = ScalarField::parse(expr, vars);
            std::string printed = f.print();
            bool roundtrip = ast_equal(parse_expr(printed, vars), f.ast());
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("parse"));
            w.key("expr").value(printed);
            w.key("roundtrip").value(roundtrip);
            w.end_object();
            emit(out_dir, "report.json", w.str());
        } else if (*cmd_census) {
            Box box = parse_box(box_s, static_cast<int>(vars.size()));
            auto f = ScalarField::parse(expr, vars, box);
            Grid g = Grid::uniform(grid);
            auto pts = critical_census(f, box, g, tol);
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("census"));
            w.key("points");
            write_census_json(w, pts);
            w.end_object();
            emit(out_dir, "report.json", w.str());
        } else if (*cmd_bump) {
            if (plot || format == "csv") {
                std::string csv = "x,rho,beta\n";
                for (int i = 0; i <= samples; ++i) {
                    double x = -0.25 + 1.5 * i / samples;
                    csv += fmt17(x) + "," + fmt17(kernel(x)) + "," + fmt17(beta(x)) + "\n";
                }
                emit(out_dir, "bump.csv", csv);
            } else {
                JsonWriter w;
                w.begin_object();
                w.key("schema").value(1);
                w.key("command").value(std::string("bump"));
                w.key("mass_quadrature").value(kernel_mass_quadrature());
                w.key("beta_half").value(beta(0.5));
                w.end_object();
                emit(out_dir, "report.json", w.str());
            }
        } else if (*cmd_nf) {
            auto f = ScalarField::parse(expr, vars);
            auto pt = parse_doubles(point_s);
            if (static_cast<int>(pt.size()) != f.dim())
                throw usage_error("--point arity mismatch");
            auto chart = morse_chart(f, std::span<const double>(pt.data(), pt.size()), radius);
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("normal-form"));
            w.key("index").value(chart.index);
            w.key("coindex").value(chart.coindex);
            w.key("residual_bound").value(chart.residual_bound);
            w.key("radius_used").value(chart.radius_used);
            w.end_object();
            emit(out_dir, "report.json", w.str());
        } else if (*cmd_lower) {
            auto f = ScalarField::parse(expr, vars);
            TubeChart tube;
            if (base_expr.empty()) {
                std::vector<double> origin(static_cast<std::size_t>(f.dim()), 0.0);
                tube = TubeChart::point_base(
                    f.dim(), f.value(std::span<const double>(origin.data(), origin.size())),
                    tube_r);
            } else {
                Box bb = parse_box(base_box_s.empty() ? "-2,2" : base_box_s, 1);
                auto fb = ScalarField::parse(base_expr, {vars[0]}, bb);
                auto rw = ScalarField::parse(fmt17(tube_r) + " + 0*" + vars[0], {vars[0]}, bb);
                tube = TubeChart::line_base(f.dim(), fb, rw, bb);
                tube.validate(f.fn());
            }
            LowerReport lr;
            auto path = lower_value(f.fn(), tube, kappa, uu, uprime, &lr);
            // censuses before/after on the domain box
            Grid g = Grid::uniform(grid);
            auto before = critical_census(f, f.domain(), g, tol);
            auto after = critical_census(fd_jetfn(path.at(1.0), f.dim(), 1e-5), f.dim(),
                                         f.domain(), g, std::max(tol, 1e-6));
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("lower"));
            w.key("landmarks").begin_object();
            w.key("kappa").value(lr.kappa);
            w.key("u").value(lr.u);
            w.key("u_prime").value(lr.u_prime);
            w.key("c_thresh").value(lr.c_thresh);
            w.end_object();
            w.key("census_before");
            write_census_json(w, before);
            w.key("census_after");
            write_census_json(w, after);
            w.key("support").begin_object();
            w.key("lo").value_span(std::span<const double>(path.support.lo.data(),
                                                           static_cast<std::size_t>(path.support.dim)));
            w.key("hi").value_span(std::span<const double>(path.support.hi.data(),
                                                           static_cast<std::size_t>(path.support.dim)));
            w.end_object();
            w.end_object();
            if (!out_dir.empty() || format == "json") emit(out_dir, "report.json", w.str());
            if (f.dim() == 1) {
                auto svals = linspace(0, 1, 9);
                auto xs = linspace(f.domain().lo[0], f.domain().hi[0], 201);
                auto pe = path.eval;
                write_path_outputs(out_dir, format, svals, xs, [pe](double s, double x) {
                    return pe(s, std::span<const double>(&x, 1));
                });
            }
        } else if (*cmd_move) {
            Box box = parse_box(box_s, 1);
            auto f = ScalarField::parse(expr, {vars[0]}, box);
            std::vector<MoveTarget> targets;
            for (const auto& item : split_list(targets_s, ';')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) throw usage_error("targets need loc=value");
                targets.push_back({std::stod(item.substr(0, eq)), std::stod(item.substr(eq + 1))});
            }
            Fn1D kf = Fn1D::from_field(f);
            auto before = census_1d(kf, box.lo[0], box.hi[0], 8192, tol);
            auto path = move_values_1d(f, box, targets, tol);
            auto pe = path.eval;
            Fn1D after_fn;
            after_fn.f = [pe](double x) { return pe(1.0, std::span<const double>(&x, 1)); };
            after_fn.df = [pe](double x) {
                const double h = 1e-6;
                double xp = x + h, xm = x - h;
                return (pe(1.0, std::span<const double>(&xp, 1)) -
                        pe(1.0, std::span<const double>(&xm, 1))) /
                       (2 * h);
            };
            after_fn.d2f = [pe](double x) {
                const double h = 1e-5;
                double xp = x + h, xm = x - h;
                return (pe(1.0, std::span<const double>(&xp, 1)) -
                        2 * pe(1.0, std::span<const double>(&x, 1)) +
                        pe(1.0, std::span<const double>(&xm, 1))) /
                       (h * h);
            };
            auto after = census_1d(after_fn, box.lo[0], box.hi[0], 8192, std::max(tol, 1e-6));
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("move"));
            w.key("landmarks").begin_object().end_object();
            w.key("census_before");
            write_census_json(w, before);
            w.key("census_after");
            write_census_json(w, after);
            w.key("support").begin_object();
            w.key("lo").value(path.support.lo[0]);
            w.key("hi").value(path.support.hi[0]);
            w.end_object();
            w.end_object();
            if (!out_dir.empty() || format == "json") emit(out_dir, "report.json", w.str());
            auto svals = linspace(0, 1, 9);
            auto xs = linspace(box.lo[0], box.hi[0], 201);
            write_path_outputs(out_dir, format, svals, xs, [pe](double s, double x) {
                return pe(s, std::span<const double>(&x, 1));
            });
        } else if (*cmd_moser) {
            auto dom = parse_doubles(domain_s);
            if (dom.size() != 2) throw usage_error("--domain needs lo,hi");
            Box box = Box::interval(dom[0], dom[1]);
            MoserProblem p;
            p.h = ScalarField::parse(h_s, {"x"}, Box::interval(dom[0] * 2 - 1, dom[1] * 2 + 1));
            p.k = ScalarField::parse(k_s, {"x"}, p.h.domain());
            for (double wv : parse_doubles(w_s)) p.w_points.push_back({wv, 0, 0});
            p.box = p.h.domain();
            p.validate();
            // MJ^2 surrogate gate
            for (const auto& wpt : p.w_points) {
                auto oc = mj2_surrogate(p.h, p.k, wpt[0]);
                if (!oc.pass)
                    throw precondition_error("MJ^2 surrogate failed: ord(d) < 1 + 2 ord(h')",
                                              "moser", "w=" + fmt17(wpt[0]) + " ord_d=" +
                                                           std::to_string(oc.ord_d) + " ord_dh=" +
                                                           std::to_string(oc.ord_dh));
            }
            auto iso = moser_isotopy(p, box);
            if (iso.conjugacy_residual > std::max(tol, 1e-6))
                throw certification_error("conjugacy residual above tolerance", "moser",
                                          fmt17(iso.conjugacy_residual));
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("moser"));
            w.key("residual").value(iso.conjugacy_residual);
            w.key("w_fix_residual").value(iso.w_fix_residual);
            w.key("sub_box").begin_object();
            w.key("lo").value(box.lo[0]);
            w.key("hi").value(box.hi[0]);
            w.end_object();
            w.key("order_check").begin_array();
            for (const auto& wpt : p.w_points) {
                auto oc = mj2_surrogate(p.h, p.k, wpt[0]);
                w.begin_object();
                w.key("w").value(wpt[0]);
                w.key("ord_d").value(oc.ord_d);
                w.key("ord_dh").value(oc.ord_dh);
                w.key("pass").value(oc.pass);
                w.end_object();
            }
            w.end_array();
            w.end_object();
            emit(out_dir, "report.json", w.str());
        } else if (*cmd_drom) {
            auto iv = parse_doubles(interval_s);
            if (iv.size() != 2) throw usage_error("--interval needs lo,hi");
            auto k = ScalarField::parse(expr, {vars[0]}, Box::interval(iv[0], iv[1]));
            Fn1D kf = Fn1D::from_field(k);
            auto frame = detect(kf, iv[0], iv[1], tol);
            auto path = dromedary_path(kf, frame);
            std::vector<double> svals = linspace(0, 2, frames);
            auto sweep = census_sweep(path, svals);
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("dromedary"));
            w.key("frame").begin_object();
            w.key("b_prime").value(frame.b_prime);
            w.key("b").value(frame.b);
            w.key("c_prime").value(frame.c_prime);
            w.key("c").value(frame.c);
            w.key("d").value(frame.d);
            w.key("d_prime").value(frame.d_prime);
            w.key("n").value(frame.n);
            w.key("n_prime").value(frame.n_prime);
            w.end_object();
            w.key("eta").begin_array().value(path.eta1).value(path.eta2).end_array();
            w.key("e").begin_array().value(path.e1).value(path.e2).end_array();
            w.key("t0").value(path.t0);
            w.key("t0_closed").value(path.t0_closed);
            w.key("sigma0").value(path.sigma0);
            w.key("census_sweep").begin_array();
            for (const auto& [s, pts] : sweep) {
                w.begin_object();
                w.key("s").value(s);
                w.key("census");
                write_census_json(w, pts);
                w.end_object();
            }
            w.end_array();
            w.end_object();
            if (!out_dir.empty() || format == "json") emit(out_dir, "report.json", w.str());
            auto xs = linspace(iv[0], iv[1], 241);
            auto pe = path.eval;
            write_path_outputs(out_dir, format, svals, xs,
                               [pe](double s, double x) { return pe(s, x); });
        } else if (*cmd_trans) {
            auto dims = parse_doubles(dims_s);
            if (dims.size() != 2) throw usage_error("--dims needs nN,nR");
            SplitModel m;
            m.n_n = static_cast<int>(dims[0]);
            m.n_r = static_cast<int>(dims[1]);
            m.s = tv_s;
            m.nu = tv_nu;
            m.rho = tv_rho;
            m.delta = tv_delta;
            GraphSheet sheet = (theta_s == "0" || m.n_r == 0)
                                   ? GraphSheet::flat(m.n_r)
                                   : GraphSheet::from_field(ScalarField::parse(
                                         theta_s, {"n"}, Box::interval(-m.nu, m.nu)));
            std::vector<double> rays;
            if (reflected) rays = {1.0, -1.0};
            auto rep = verify_extension(m, sheet, 1000, seed, rays);
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("transverse"));
            auto clause = [&](const char* name, const ClauseReport& c) {
                w.key(name).begin_object();
                w.key("pass").value(c.pass);
                w.key("worst").value(c.worst);
                w.key("witness").value_span(std::span<const double>(c.witness.data(), 3));
                w.key("note").value(c.note);
                w.end_object();
            };
            clause("tangency", rep.tangency);
            clause("cone_inclusion", rep.cone_inclusion);
            clause("q_positivity", rep.q_positivity);
            clause("census", rep.census);
            clause("p_intersection", rep.p_intersection);
            w.key("census_points");
            write_census_json(w, rep.census_points);
            w.end_object();
            emit(out_dir, "report.json", w.str());
        } else if (*cmd_elim) {
            auto iv = parse_doubles(interval_s);
            if (iv.size() != 2) throw usage_error("--interval needs lo,hi");
            auto fd = parse_doubles(fiber_dims_s);
            if (fd.size() != 2) throw usage_error("--fiber-dims needs a,b");
            auto fb = parse_doubles(fiber_box_s);
            ProductModel m;
            m.k = ScalarField::parse(expr, {"u"}, Box::interval(iv[0], iv[1]));
            m.neg_dim = static_cast<int>(fd[0]);
            m.pos_dim = static_cast<int>(fd[1]);
            m.radius = radius;
            m.box.dim = m.dim();
            m.box.lo[0] = iv[0];
            m.box.hi[0] = iv[1];
            for (int i = 1; i < m.dim(); ++i) {
                m.box.lo[static_cast<std::size_t>(i)] = fb.size() >= 2 ? fb[0] : -5.0;
                m.box.hi[static_cast<std::size_t>(i)] = fb.size() >= 2 ? fb[1] : 5.0;
            }
            auto res = eliminate_pair(m);
            JsonWriter w;
            w.begin_object();
            w.key("schema").value(1);
            w.key("command").value(std::string("eliminate"));
            w.key("lowered").value(res.report.lowered);
            w.key("t0").value(res.report.t0);
            w.key("eta").begin_array().value(res.report.eta1).value(res.report.eta2).end_array();
            w.key("max_outside").value(res.report.max_outside);
            w.key("support").begin_object();
            w.key("lo").value_span(std::span<const double>(res.report.support.lo.data(),
                                                           static_cast<std::size_t>(m.dim())));
            w.key("hi").value_span(std::span<const double>(res.report.support.hi.data(),
                                                           static_cast<std::size_t>(m.dim())));
            w.end_object();
            w.key("timeline").begin_array();
            for (const auto& [s, pts] : res.report.timeline) {
                w.begin_object();
                w.key("s").value(s);
                w.key("census");
                write_census_json(w, pts);
                w.end_object();
            }
            w.end_array();
            w.key("pgf").begin_array();
            for (const auto& [s, pg] : res.report.pgf) {
                w.begin_object();
                w.key("s").value(s);
                w.key("pass").value(pg.pass);
                w.key("min").value(pg.min_value);
                w.end_object();
            }
            w.end_array();
            w.end_object();
            if (!out_dir.empty() || format == "json") emit(out_dir, "report.json", w.str());
            auto svals = linspace(0, 3, frames);
            auto xs = linspace(iv[0], iv[1], 241);
            auto pe = res.path.eval;
            int dm = m.dim();
            write_path_outputs(out_dir, format, svals, xs, [pe, dm](double s, double u) {
                std::array<double, 3> p{u, 0, 0};
                return pe(s, std::span<const double>(p.data(), static_cast<std::size_t>(dm)));
            });
        }
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"cli\",\"witness\":\"\"}\n";
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"parse\",\"witness\":\"offset "
                  << e.offset << "\"}\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"" << e.stage
                  << "\",\"witness\":\"" << e.witness << "\"}\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"eval\",\"witness\":\"\"}\n";
        return 2;
    } catch (const certification_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"" << e.stage
                  << "\",\"witness\":\"" << e.witness << "\"}\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\",\"stage\":\"internal\",\"witness\":\"\"}\n";
        return 3;
    }
}
