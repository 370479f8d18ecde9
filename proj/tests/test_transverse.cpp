#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morseval/errors.hpp"
#include "morseval/transverse.hpp"

#include <cmath>

using namespace morseval;

namespace {

SplitModel standard_model() {
    SplitModel m;
    m.n_n = 1;
    m.n_r = 1;
    m.s = 1.0;
    m.nu = 0.5;
    m.rho = 0.5;
    m.delta = 0.3;
    return m;
}

} // namespace

TEST_CASE("chi formula") {
    SUBCASE("flat sheet: chi(n, tau) = n + tau p") {
        auto m = standard_model();
        auto sheet = GraphSheet::flat(1);
        double n = 0.1;
        auto u = chi(m, sheet, std::span<const double>(&n, 1), 0.2);
        CHECK(u[0] == 0.1);
        CHECK(u[1] == 0.2);
        CHECK(u[2] == 0.0);
    }
    SUBCASE("theta(n) = n^2 with s = 1: chi = (n, tau, tau^3 n^2)") {
        auto m = standard_model();
        auto th = ScalarField::parse("n^2", {"n"}, Box::interval(-1, 1));
        auto sheet = GraphSheet::from_field(th);
        double n = 0.15;
        double tau = 0.2;
        auto u = chi(m, sheet, std::span<const double>(&n, 1), tau);
        CHECK(u[0] == doctest::Approx(n));
        CHECK(u[1] == doctest::Approx(tau));
        CHECK(u[2] == doctest::Approx(tau * tau * tau * n * n).epsilon(1e-14));
    }
    SUBCASE("chi(0, tau) = tau p traces the ray") {
        auto m = standard_model();
        auto sheet = GraphSheet::flat(1);
        double n = 0.0;
        for (double tau : {0.05, 0.1, 0.25}) {
            auto u = chi(m, sheet, std::span<const double>(&n, 1), tau);
            CHECK(u[0] == 0.0);
            CHECK(u[1] == tau);
            CHECK(u[2] == 0.0);
        }
        auto z = chi(m, sheet, std::span<const double>(&n, 1), 0.0);
        CHECK(z[0] == 0.0);
        CHECK(z[1] == 0.0);
    }
    SUBCASE("out-of-ball arguments are rejected") {
        auto m = standard_model();
        auto sheet = GraphSheet::flat(1);
        double n = 0.31;
        CHECK_THROWS_AS(chi(m, sheet, std::span<const double>(&n, 1), 0.1), precondition_error);
    }
}

TEST_CASE("model validation") {
    auto m = standard_model();
    m.delta = 0.8; // above sqrt(s nu) = sqrt(0.5)
    CHECK_THROWS_AS(m.validate(), precondition_error);
}

TEST_CASE("verify_extension clauses for the flat sheet") {
    auto m = standard_model();
    auto rep = verify_extension(m, GraphSheet::flat(1), 1000);
    CHECK(rep.tangency.pass);
    CHECK(rep.tangency.worst <= 1e-6);
    CHECK(rep.cone_inclusion.pass);
    CHECK(rep.census.pass);
    REQUIRE(rep.census_points.size() == 1);
    CHECK(rep.census_points[0].coindex == 1);
    CHECK(rep.census_points[0].index == 1);
    CHECK(rep.census_points[0].nondegenerate);
    // Hessian pattern diag(-2 mu_N, +2)
    CHECK(rep.census_points[0].hessian_eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(rep.census_points[0].hessian_eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(rep.p_intersection.pass);
    // clause (c) is reported honestly: q o chi is scale-invariantly negative
    // somewhere on the full chart box, positive on the tau > |n| subcone
    CHECK_FALSE(rep.q_positivity.pass);
    CHECK(rep.q_positivity.note == "q > 0 holds on the subcone tau > |n|");
}

TEST_CASE("verify_extension clauses for theta = n^2") {
    auto m = standard_model();
    auto th = ScalarField::parse("n^2", {"n"}, Box::interval(-1, 1));
    auto rep = verify_extension(m, GraphSheet::from_field(th), 1000);
    CHECK(rep.tangency.pass);
    CHECK(rep.tangency.worst <= 1e-6);
    CHECK(rep.cone_inclusion.pass);
    CHECK(rep.census.pass);
    CHECK(rep.p_intersection.pass);
}

TEST_CASE("counterexample with a reflected ray fails clause (e) with a witness") {
    auto m = standard_model();
    auto rep = verify_extension(m, GraphSheet::flat(1), 200, 1, {1.0, -1.0});
    CHECK_FALSE(rep.p_intersection.pass);
    CHECK(rep.p_intersection.witness[1] < 0.0);
}

TEST_CASE("chi is injective on sampled points") {
    auto m = standard_model();
    auto th = ScalarField::parse("n^2", {"n"}, Box::interval(-1, 1));
    auto sheet = GraphSheet::from_field(th);
    std::vector<std::array<double, 3>> images;
    std::vector<std::array<double, 2>> params;
    for (int i = 0; i <= 16; ++i)
        for (int j = 1; j <= 16; ++j) {
            double n = -0.28 + 0.56 * i / 16.0;
            double tau = 0.28 * j / 16.0;
            images.push_back(chi(m, sheet, std::span<const double>(&n, 1), tau));
            params.push_back({n, tau});
        }
    for (std::size_t a = 0; a < images.size(); ++a)
        for (std::size_t b = a + 1; b < images.size(); ++b) {
            double dp = std::hypot(params[a][0] - params[b][0], params[a][1] - params[b][1]);
            if (dp < 1e-4) continue;
            double di = 0;
            for (int d = 0; d < 3; ++d)
                di = std::max(di, std::fabs(images[a][static_cast<std::size_t>(d)] -
                                            images[b][static_cast<std::size_t>(d)]));
            CHECK(di > 1e-9);
        }
}

TEST_CASE("Lambda invariance of the represented set via the graph relation") {
    auto m = standard_model();
    auto th = ScalarField::parse("n^2", {"n"}, Box::interval(-1, 1));
    auto sheet = GraphSheet::from_field(th);
    // flow line through chi(n, tau) is chi(e^-s n, e^s tau): both are in the
    // chart when parameters stay in the balls
    for (double n : {-0.2, 0.1})
        for (double tau : {0.1, 0.2})
            for (double sflow : {-0.3, 0.25}) {
                auto u = chi(m, sheet, std::span<const double>(&n, 1), tau);
                double n2 = std::exp(-sflow) * n, t2 = std::exp(sflow) * tau;
                auto v = chi(m, sheet, std::span<const double>(&n2, 1), t2);
                // Lambda_s(u) must equal v
                CHECK(v[0] == doctest::Approx(std::exp(-sflow) * u[0]).epsilon(1e-13));
                CHECK(v[1] == doctest::Approx(std::exp(sflow) * u[1]).epsilon(1e-13));
                CHECK(v[2] == doctest::Approx(std::exp(sflow) * u[2]).epsilon(1e-13));
            }
}

TEST_CASE("halving delta never breaks a passing clause") {
    auto m = standard_model();
    auto th = ScalarField::parse("n^2", {"n"}, Box::interval(-1, 1));
    auto sheet = GraphSheet::from_field(th);
    auto rep1 = verify_extension(m, sheet, 600);
    SplitModel m2 = m;
    m2.delta = m.delta / 2;
    auto rep2 = verify_extension(m2, sheet, 600);
    if (rep1.tangency.pass) CHECK(rep2.tangency.pass);
    if (rep1.cone_inclusion.pass) CHECK(rep2.cone_inclusion.pass);
    if (rep1.census.pass) CHECK(rep2.census.pass);
    if (rep1.p_intersection.pass) CHECK(rep2.p_intersection.pass);
}

TEST_CASE("n_R = 0 model: flat cone, all clauses") {
    SplitModel m;
    m.n_n = 1;
    m.n_r = 0;
    m.s = 1.0;
    m.nu = 0.5;
    m.rho = 0.5;
    m.delta = 0.3;
    auto rep = verify_extension(m, GraphSheet::flat(0), 500);
    CHECK(rep.tangency.pass);
    CHECK(rep.cone_inclusion.pass);
    CHECK(rep.census.pass);
    CHECK(rep.p_intersection.pass);
}
