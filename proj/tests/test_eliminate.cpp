#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morseval/eliminate.hpp"
#include "morseval/errors.hpp"

#include <cmath>

using namespace morseval;

namespace {

ProductModel model_01() {
    ProductModel m;
    m.k = ScalarField::parse("x^3 - 3*x", {"x"}, Box::interval(-3, 3));
    m.neg_dim = 0;
    m.pos_dim = 1;
    m.radius = 30.0;
    m.box = Box::make(std::array{-3.0, -5.0}, std::array{3.0, 5.0});
    return m;
}

ProductModel model_10() {
    ProductModel m;
    m.k = ScalarField::parse("x^3 - 3*x", {"x"}, Box::interval(-3, 3));
    m.neg_dim = 1;
    m.pos_dim = 0;
    m.radius = 30.0;
    m.box = Box::make(std::array{-3.0, -5.0}, std::array{3.0, 5.0});
    return m;
}

} // namespace

TEST_CASE("product model censuses lift the 1D census with index + a") {
    SUBCASE("(a,b) = (0,1): indices 1 and 0 in dimension 2") {
        auto m = model_01();
        auto F = m.as_field();
        auto pts = critical_census(F, m.box, Grid::uniform(48), 1e-9);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0].location[0] == doctest::Approx(-1.0).epsilon(1e-7));
        CHECK(pts[0].index == 1);
        CHECK(pts[1].index == 0);
    }
    SUBCASE("(a,b) = (1,0): indices 2 and 1 in dimension 2") {
        auto m = model_10();
        auto F = m.as_field();
        auto pts = critical_census(F, m.box, Grid::uniform(48), 1e-9);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0].index == 2);
        CHECK(pts[1].index == 1);
    }
}

TEST_CASE("eliminate_pair removes both model points") {
    for (bool neg : {false, true}) {
        auto m = neg ? model_10() : model_01();
        CAPTURE(neg);
        auto res = eliminate_pair(m);
        const auto& rep = res.report;

        // timeline: two nondegenerate points before t0, none after
        bool seen_two = false, seen_zero_after = false, seen_degenerate = false;
        for (const auto& [s, cs] : rep.timeline) {
            if (s < rep.t0 - 1e-3) {
                CHECK(cs.size() == 2);
                if (cs.size() == 2) {
                    seen_two = true;
                    CHECK(cs[0].index == m.neg_dim + 1);
                    CHECK(cs[1].index == m.neg_dim);
                    CHECK(cs[0].nondegenerate);
                    CHECK(cs[1].nondegenerate);
                }
            }
            if (s > rep.t0 + 1e-3) {
                CHECK(cs.empty());
                if (cs.empty()) seen_zero_after = true;
            }
            if (std::fabs(s - rep.t0) <= 1e-9) {
                REQUIRE(cs.size() == 1);
                CHECK_FALSE(cs[0].nondegenerate);
                seen_degenerate = true;
            }
        }
        CHECK(seen_two);
        CHECK(seen_zero_after);
        CHECK(seen_degenerate);

        // support containment is exact
        CHECK(rep.max_outside == 0.0);
        CHECK(rep.support.lo[0] > m.box.lo[0]);
        CHECK(rep.support.hi[0] < m.box.hi[0]);

        // pseudo-gradient blend passes at the sampled parameters
        for (const auto& [s, pg] : rep.pgf) {
            CAPTURE(s);
            CHECK(pg.pass);
        }

        // path endpoints: s = 0 is F exactly
        for (double u : {-2.0, -1.0, 0.3, 1.4, 2.6}) {
            std::array<double, 3> p{u, 0.7, 0};
            std::span<const double> ps(p.data(), static_cast<std::size_t>(m.dim()));
            CHECK(res.path.eval(0.0, ps) == m.eval(ps));
        }
    }
}

TEST_CASE("no critical points appear off the axis mid-path") {
    auto m = model_01();
    auto res = eliminate_pair(m);
    double s = 2.5; // strictly between the landmarks, still two axis points
    auto fs = res.path.at(s);
    Box narrow = Box::make(std::array{-2.5, -2.0}, std::array{2.5, 2.0});
    auto pts = critical_census(fd_jetfn(fs, 2, 1e-5), 2, narrow, Grid::uniform(32), 1e-5);
    // every 2D census point must sit on the axis, matching the 1D lift
    for (const auto& cp : pts) CHECK(std::fabs(cp.location[1]) <= 1e-5);
    bool timeline_has_match = false;
    for (const auto& [ts, cs] : res.report.timeline)
        if (std::fabs(ts - s) < 0.2 && cs.size() == pts.size()) timeline_has_match = true;
    CHECK(pts.size() == 2);
    CHECK(timeline_has_match);
}

TEST_CASE("monotone raising in the elevator stage") {
    auto m = model_01();
    auto res = eliminate_pair(m);
    double worst = 0;
    for (int i = 0; i <= 60; ++i) {
        double s0 = 1.0 + 2.0 * i / 60.0;
        double s1 = std::min(3.0, s0 + 0.03);
        for (int j = 0; j <= 80; ++j) {
            double u = -3.0 + 6.0 * j / 80.0;
            for (double y : {0.0, 0.9}) {
                std::array<double, 2> p{u, y};
                std::span<const double> ps(p.data(), 2);
                worst = std::max(worst, res.path.eval(s0, ps) - res.path.eval(s1, ps));
            }
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("stage 1 lowering engages when the hump tops the nape") {
    // restrict the interval so the rising branch stays below k(c) = 2
    ProductModel m;
    m.k = ScalarField::parse("x^3 - 3*x", {"x"}, Box::interval(-3, 1.9));
    m.neg_dim = 0;
    m.pos_dim = 1;
    m.radius = 30.0;
    m.box = Box::make(std::array{-3.0, -5.0}, std::array{1.9, 5.0});
    auto res = eliminate_pair(m);
    CHECK(res.report.lowered);
    CHECK(res.report.u < res.report.kappa);
    CHECK(res.report.u_prime < res.report.u);
    // final census is empty
    const auto& last = res.report.timeline.back();
    CHECK(last.second.empty());
    // stage-1 end: hump value lowered to u exactly
    std::array<double, 2> hump{-1.0, 0.0};
    std::span<const double> hs(hump.data(), 2);
    CHECK(res.path.eval(1.0, hs) == doctest::Approx(res.report.u).epsilon(1e-10));
}

TEST_CASE("blend_pg plateaus") {
    auto m = model_01();
    auto F = m.as_field();
    FieldFn f = F.fn();
    std::vector<FieldFn> Z{F.deriv(0).fn(), F.deriv(1).fn()};
    SUBCASE("beta argument <= 0 gives the pure gradient") {
        auto Zb = blend_pg(Z, f, 2, 1000.0); // f/r <= 0 wherever f <= 0
        std::array<double, 2> p{1.0, 0.5}; // f = -2 + 0.25 < 0
        std::span<const double> ps(p.data(), 2);
        Jet2 j = F.jet(ps, 1);
        CHECK(Zb[0](ps) == doctest::Approx(j.g[0]).epsilon(1e-8));
        CHECK(Zb[1](ps) == doctest::Approx(j.g[1]).epsilon(1e-8));
    }
    SUBCASE("beta argument >= 1 gives pure Z") {
        std::vector<FieldFn> Zc{[](std::span<const double>) { return 7.0; },
                                [](std::span<const double>) { return -3.0; }};
        auto Zb = blend_pg(Zc, f, 2, 0.001); // f/r >= 1 wherever f >= 0.001
        std::array<double, 2> p{0.0, 2.0}; // f = 4
        std::span<const double> ps(p.data(), 2);
        CHECK(Zb[0](ps) == 7.0);
        CHECK(Zb[1](ps) == -3.0);
    }
    SUBCASE("r <= 0 rejected") {
        CHECK_THROWS_AS(blend_pg(Z, f, 2, 0.0), precondition_error);
    }
}

TEST_CASE("model validation") {
    auto m = model_01();
    m.radius = -1;
    CHECK_THROWS_AS(m.validate(), precondition_error);
    auto m2 = model_01();
    m2.box.dim = 3;
    CHECK_THROWS_AS(m2.validate(), precondition_error);
}
