#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morseval/errors.hpp"
#include "morseval/moser.hpp"

#include <cmath>

using namespace morseval;

namespace {

MoserProblem cubic_problem() {
    MoserProblem p;
    p.h = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
    p.k = ScalarField::parse("x^2 + x^3", {"x"}, Box::interval(-1, 1));
    p.w_points = {{0, 0, 0}};
    p.box = Box::interval(-1, 1);
    return p;
}

MoserProblem quintic_problem() {
    MoserProblem p;
    p.h = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
    p.k = ScalarField::parse("x^2 + x^5", {"x"}, Box::interval(-1, 1));
    p.w_points = {{0, 0, 0}};
    p.box = Box::interval(-1, 1);
    return p;
}

} // namespace

TEST_CASE("moser field closed forms") {
    SUBCASE("x^3 example: Z_t = x^2/(2 + 3(1-t)x)") {
        auto p = cubic_problem();
        for (double t : {0.0, 0.4, 1.0})
            for (double x : {-0.25, -0.1, 0.08, 0.3}) {
                auto z = moser_field(p, t, std::span<const double>(&x, 1));
                double expect = x * x / (2 + 3 * (1 - t) * x);
                CHECK(z[0] == doctest::Approx(expect).epsilon(1e-12));
            }
    }
    SUBCASE("x^5 example: Z_t = x^4/(2 + 5(1-t)x^3)") {
        auto p = quintic_problem();
        for (double t : {0.0, 0.7})
            for (double x : {-0.2, 0.15, 0.3}) {
                auto z = moser_field(p, t, std::span<const double>(&x, 1));
                double expect = std::pow(x, 4) / (2 + 5 * (1 - t) * std::pow(x, 3));
                CHECK(z[0] == doctest::Approx(expect).epsilon(1e-12));
            }
    }
    SUBCASE("h = k gives the zero field") {
        MoserProblem p;
        p.h = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
        p.k = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
        p.w_points = {{0, 0, 0}};
        p.box = Box::interval(-1, 1);
        for (double x : {-0.5, 0.0, 0.33}) {
            auto z = moser_field(p, 0.5, std::span<const double>(&x, 1));
            CHECK(z[0] == 0.0);
        }
    }
    SUBCASE("removable singularity at w") {
        auto p = cubic_problem();
        double x = 0.0;
        auto z = moser_field(p, 0.3, std::span<const double>(&x, 1));
        CHECK(std::fabs(z[0]) <= 1e-12);
    }
}

TEST_CASE("moser isotopy certifies the conjugacy") {
    SUBCASE("x^3 example on [-0.3, 0.3]") {
        auto p = cubic_problem();
        auto iso = moser_isotopy(p, Box::interval(-0.3, 0.3));
        CHECK(iso.conjugacy_residual <= 1e-6);
        CHECK(iso.w_fix_residual <= 1e-10);
    }
    SUBCASE("x^5 example on [-0.3, 0.3]") {
        auto p = quintic_problem();
        auto iso = moser_isotopy(p, Box::interval(-0.3, 0.3));
        CHECK(iso.conjugacy_residual <= 1e-6);
        CHECK(iso.w_fix_residual <= 1e-10);
    }
    SUBCASE("h = k gives the identity isotopy") {
        MoserProblem p;
        p.h = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
        p.k = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
        p.w_points = {{0, 0, 0}};
        p.box = Box::interval(-1, 1);
        auto iso = moser_isotopy(p, Box::interval(-0.3, 0.3));
        for (double x : {-0.2, 0.1, 0.28}) {
            auto end = iso.flow(1.0, std::span<const double>(&x, 1));
            CHECK(end[0] == doctest::Approx(x).epsilon(1e-14));
        }
    }
}

TEST_CASE("flow consistency d/dt phi = Z_t(phi)") {
    auto p = cubic_problem();
    auto iso = moser_isotopy(p, Box::interval(-0.3, 0.3));
    for (double x : {-0.25, 0.1, 0.27})
        for (double t : {0.3, 0.6}) {
            const double h = 1e-5;
            auto fp = iso.flow(t + h, std::span<const double>(&x, 1));
            auto fm = iso.flow(t - h, std::span<const double>(&x, 1));
            double fd = (fp[0] - fm[0]) / (2 * h);
            auto mid = iso.flow(t, std::span<const double>(&x, 1));
            auto z = moser_field(p, t, std::span<const double>(mid.data(), 1));
            CHECK(std::fabs(fd - z[0]) <= 1e-6);
        }
}

TEST_CASE("monotone dependence: a finer integrator halves the residual or better") {
    auto p = cubic_problem();
    auto coarse = moser_isotopy(p, Box::interval(-0.3, 0.3), 17, 1e-4);
    auto fine = moser_isotopy(p, Box::interval(-0.3, 0.3), 17, 1e-8);
    if (coarse.conjugacy_residual > 1e-11) // above the noise floor
        CHECK(fine.conjugacy_residual <= 0.5 * coarse.conjugacy_residual);
    else
        CHECK(fine.conjugacy_residual <= coarse.conjugacy_residual + 1e-12);
}

TEST_CASE("vanishing order") {
    auto d3 = ScalarField::parse("0 - x^3", {"x"}, Box::interval(-1, 1));
    CHECK(vanishing_order(d3, 0.0, 8) == 3);
    auto zero = ScalarField::parse("0*x", {"x"}, Box::interval(-1, 1));
    CHECK(vanishing_order(zero, 0.0, 6) == 7);
    auto d2 = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
    CHECK(vanishing_order(d2, 0.0, 8) == 2);
}

TEST_CASE("MJ^2 surrogate: ord(d) >= 1 + 2 ord(h')") {
    auto h = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
    auto k_pass = ScalarField::parse("x^2 + x^3", {"x"}, Box::interval(-1, 1));
    auto k_fail = ScalarField::parse("x^2 + x^2*x^0 + 0 - x^2 + 2*x^2", {"x"}, Box::interval(-1, 1));
    auto oc = mj2_surrogate(h, k_pass, 0.0);
    CHECK(oc.pass);
    CHECK(oc.ord_d == 3);
    CHECK(oc.ord_dh == 1);
    auto k2 = ScalarField::parse("2*x^2", {"x"}, Box::interval(-1, 1));
    auto oc2 = mj2_surrogate(h, k2, 0.0);
    CHECK_FALSE(oc2.pass);
    CHECK(oc2.ord_d == 2);
    (void)k_fail;
}

TEST_CASE("2D gradient-quotient field") {
    MoserProblem p;
    p.h = ScalarField::parse("x^2 + y^2", {"x", "y"},
                             Box::make(std::array{-1.0, -1.0}, std::array{1.0, 1.0}));
    p.k = ScalarField::parse("x^2 + y^2 + x^3", {"x", "y"}, p.h.domain());
    p.w_points = {{0, 0, 0}};
    p.box = p.h.domain();
    p.validate();
    // Z_t = -d grad(k+td)/|grad|^2 with d = -x^3
    double t = 0.5;
    std::array<double, 2> x{0.2, 0.1};
    auto z = moser_field(p, t, std::span<const double>(x.data(), 2));
    double d = -std::pow(x[0], 3);
    double g0 = 2 * x[0] + (1 - t) * 3 * x[0] * x[0];
    double g1 = 2 * x[1];
    double n2 = g0 * g0 + g1 * g1;
    CHECK(z[0] == doctest::Approx(-d * g0 / n2).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(-d * g1 / n2).epsilon(1e-12));
    auto iso = moser_isotopy(p, Box::make(std::array{-0.2, -0.2}, std::array{0.2, 0.2}), 9);
    CHECK(iso.conjugacy_residual <= 1e-6);
}

TEST_CASE("a trajectory leaving the problem box is reported") {
    MoserProblem p;
    p.h = ScalarField::parse("x^2", {"x"}, Box::interval(-0.3, 0.5));
    p.k = ScalarField::parse("x^2 + 2*x^3", {"x"}, Box::interval(-0.3, 0.5));
    p.w_points = {{0, 0, 0}};
    p.box = Box::interval(-0.3, 0.5);
    // d = -2x^3, Z ~ x^2: seeds near the right edge drift out of the box
    CHECK_THROWS_AS(moser_isotopy(p, Box::interval(0.4, 0.49)), certification_error);
}

TEST_CASE("validation rejects d nonzero on W") {
    MoserProblem p;
    p.h = ScalarField::parse("x^2 + 1", {"x"}, Box::interval(-1, 1));
    p.k = ScalarField::parse("x^2", {"x"}, Box::interval(-1, 1));
    p.w_points = {{0, 0, 0}};
    p.box = Box::interval(-1, 1);
    CHECK_THROWS_AS(p.validate(), precondition_error);
}
