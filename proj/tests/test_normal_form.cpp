#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morseval/errors.hpp"
#include "morseval/normal_form.hpp"

#include <cmath>
#include <random>

using namespace morseval;

TEST_CASE("quadratic remainder examples") {
    SUBCASE("x^2 - x^4 gives b(x) = 1 - x^2") {
        auto f = ScalarField::parse("x^2 - x^4", {"x"}, Box::interval(-2, 2));
        double c = 0;
        auto qf = quadratic_remainder(f, std::span<const double>(&c, 1));
        for (double x : {-0.8, -0.3, 0.0, 0.5, 0.9}) {
            std::span<const double> xs(&x, 1);
            CHECK(qf.at(xs).at(0, 0) == doctest::Approx(1 - x * x).epsilon(1e-12));
        }
    }
    SUBCASE("diagonal quadratic gives constant diag(+-1)") {
        auto f = ScalarField::parse("x^2 - y^2", {"x", "y"},
                                    Box::make(std::array{-1.0, -1.0}, std::array{1.0, 1.0}));
        std::array<double, 2> c{0, 0};
        auto qf = quadratic_remainder(f, std::span<const double>(c.data(), 2));
        std::array<double, 2> x{0.4, -0.7};
        auto b = qf.at(std::span<const double>(x.data(), 2));
        CHECK(b.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b.at(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(std::fabs(b.at(0, 1)) <= 1e-12);
    }
    SUBCASE("x^2 + 4xy + y^2 gives constant [[1,2],[2,1]]") {
        auto f = ScalarField::parse("x^2 + 4*x*y + y^2", {"x", "y"},
                                    Box::make(std::array{-1.0, -1.0}, std::array{1.0, 1.0}));
        std::array<double, 2> c{0, 0};
        auto qf = quadratic_remainder(f, std::span<const double>(c.data(), 2));
        std::array<double, 2> x{0.3, 0.6};
        auto b = qf.at(std::span<const double>(x.data(), 2));
        CHECK(b.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b.at(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(b.at(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("Taylor identity f = f(c) + z^T b(x) z on a sample ball") {
        auto f = ScalarField::parse("x^2 + 4*x*y + y^2 + x^2*y^2", {"x", "y"},
                                    Box::make(std::array{-1.0, -1.0}, std::array{1.0, 1.0}));
        std::array<double, 2> c{0, 0};
        auto qf = quadratic_remainder(f, std::span<const double>(c.data(), 2));
        for (double x : {-0.4, 0.2})
            for (double y : {-0.3, 0.5}) {
                std::array<double, 2> p{x, y};
                std::span<const double> ps(p.data(), 2);
                auto b = qf.at(ps);
                double quad = b.at(0, 0) * x * x + 2 * b.at(0, 1) * x * y + b.at(1, 1) * y * y;
                CHECK(std::fabs(f.value(ps) - quad) <= 1e-9);
            }
    }
    SUBCASE("non-critical center is rejected") {
        auto f = ScalarField::parse("x^2 + x", {"x"}, Box::interval(-1, 1));
        double c = 0;
        CHECK_THROWS_AS(quadratic_remainder(f, std::span<const double>(&c, 1)),
                        precondition_error);
    }
}

TEST_CASE("morse chart examples") {
    SUBCASE("x^2 + 4xy + y^2 has index 1, coindex 1") {
        auto f = ScalarField::parse("x^2 + 4*x*y + y^2", {"x", "y"},
                                    Box::make(std::array{-2.0, -2.0}, std::array{2.0, 2.0}));
        std::array<double, 2> c{0, 0};
        auto chart = morse_chart(f, std::span<const double>(c.data(), 2), 0.5);
        CHECK(chart.index == 1);
        CHECK(chart.coindex == 1);
        CHECK(chart.residual_bound <= 1e-6);
    }
    SUBCASE("-x^2 - y^2 has index 2") {
        auto f = ScalarField::parse("0 - x^2 - y^2", {"x", "y"},
                                    Box::make(std::array{-2.0, -2.0}, std::array{2.0, 2.0}));
        std::array<double, 2> c{0, 0};
        auto chart = morse_chart(f, std::span<const double>(c.data(), 2), 0.5);
        CHECK(chart.index == 2);
        CHECK(chart.coindex == 0);
        CHECK(chart.residual_bound <= 1e-9);
    }
    SUBCASE("x^2 - x^4 at radius 0.5: exact chart, tiny residual") {
        auto f = ScalarField::parse("x^2 - x^4", {"x"}, Box::interval(-2, 2));
        double c = 0;
        auto chart = morse_chart(f, std::span<const double>(&c, 1), 0.5);
        CHECK(chart.index == 0);
        CHECK(chart.residual_bound <= 1e-9);
        // the chart map is x~ = x sqrt(1 - x^2): check the inverse numerically
        double xt = 0.3;
        double src = 0;
        chart.forward(std::span<const double>(&xt, 1), std::span<double>(&src, 1));
        CHECK(src * std::sqrt(1 - src * src) == doctest::Approx(0.3).epsilon(1e-10));
    }
    SUBCASE("degenerate Hessian is rejected") {
        auto f = ScalarField::parse("x^4", {"x"}, Box::interval(-1, 1));
        double c = 0;
        CHECK_THROWS_AS(morse_chart(f, std::span<const double>(&c, 1), 0.5), precondition_error);
    }
    SUBCASE("zero-diagonal Hessian goes through the rotation pivot") {
        auto f = ScalarField::parse("x*y", {"x", "y"},
                                    Box::make(std::array{-2.0, -2.0}, std::array{2.0, 2.0}));
        std::array<double, 2> c{0, 0};
        auto chart = morse_chart(f, std::span<const double>(c.data(), 2), 0.5);
        CHECK(chart.index == 1);
        CHECK(chart.coindex == 1);
        CHECK(chart.residual_bound <= 1e-12);
    }
}

TEST_CASE("inverse consistency psi^-1 o psi = id on the chart ball") {
    auto f = ScalarField::parse("x^2 + 4*x*y + y^2 + x^2*y^2", {"x", "y"},
                                Box::make(std::array{-2.0, -2.0}, std::array{2.0, 2.0}));
    std::array<double, 2> c{0, 0};
    auto chart = morse_chart(f, std::span<const double>(c.data(), 2), 0.4);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int i = 0; i < 50; ++i) {
        std::array<double, 2> xt{U(rng) * chart.chart_radius * 0.7,
                                 U(rng) * chart.chart_radius * 0.7};
        std::array<double, 2> src{}, back{};
        chart.forward(std::span<const double>(xt.data(), 2), std::span<double>(src.data(), 2));
        chart.inverse(std::span<const double>(src.data(), 2), std::span<double>(back.data(), 2));
        CHECK(std::fabs(back[0] - xt[0]) <= 1e-8);
        CHECK(std::fabs(back[1] - xt[1]) <= 1e-8);
    }
}

TEST_CASE("signature agreement on 100 random symmetric matrices") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> U(-2, 2);
    int done = 0;
    for (int trial = 0; trial < 140 && done < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        SymMat B = SymMat::zero(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double v = U(rng);
                B.at(i, j) = v;
                B.at(j, i) = v;
            }
        auto ev = sym_eigenvalues(B);
        double minabs = 1e300;
        int negs = 0;
        for (double e : ev) {
            minabs = std::min(minabs, std::fabs(e));
            if (e < 0) negs++;
        }
        if (minabs < 1e-3) continue; // keep the test away from degenerate draws
        // build the constant quadratic form as a field and diagonalize it
        std::vector<std::string> vars{"x", "y", "z"};
        vars.resize(static_cast<std::size_t>(n));
        std::string src;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                char buf[80];
                std::snprintf(buf, sizeof(buf), "%s(%.6f)*%s*%s", src.empty() ? "" : " + ",
                              B.at(i, j), vars[static_cast<std::size_t>(i)].c_str(),
                              vars[static_cast<std::size_t>(j)].c_str());
                src += buf;
            }
        Box box;
        box.dim = n;
        for (int i = 0; i < n; ++i) {
            box.lo[static_cast<std::size_t>(i)] = -2;
            box.hi[static_cast<std::size_t>(i)] = 2;
        }
        auto f = ScalarField::parse(src, vars, box);
        std::array<double, 3> c{};
        auto chart = morse_chart(f, std::span<const double>(c.data(), static_cast<std::size_t>(n)), 0.5);
        CHECK(chart.index == negs);
        ++done;
    }
    CHECK(done == 100);
}

TEST_CASE("chart residual halving order check: factor >= 6") {
    auto f = ScalarField::parse("x^2 + x^5", {"x"}, Box::interval(-2, 2));
    double c = 0;
    auto c1 = morse_chart(f, std::span<const double>(&c, 1), 0.4);
    auto c2 = morse_chart(f, std::span<const double>(&c, 1), 0.2);
    CHECK(c1.residual_bound <= 1e-6);
    CHECK(c1.residual_bound > 1e-12); // measurably above noise
    CHECK(c1.residual_bound / c2.residual_bound >= 6.0);
}

TEST_CASE("negative_graph examples") {
    SymMat B = SymMat::zero(2);
    B.at(0, 0) = -1;
    B.at(1, 1) = 1;
    std::vector<std::array<double, 3>> N{{1, 0, 0}};

    SUBCASE("N' = N gives g = 0") {
        auto gr = negative_graph(B, N, N);
        CHECK(gr.certified);
        CHECK(std::fabs(gr.g[0][0]) <= 1e-14);
    }
    SUBCASE("N' = span(e1 + 0.5 e2) gives g = 0.5 x") {
        std::vector<std::array<double, 3>> Np{{1, 0.5, 0}};
        auto gr = negative_graph(B, N, Np);
        CHECK(gr.certified);
        CHECK(gr.g[0][0] == doctest::Approx(0.5).epsilon(1e-12));
        // check 0.25 x^2 < x^2 on the unit sphere of N is what certification did
        auto pt = negative_graph_point(gr, N, std::span<const double>(std::array{1.0}.data(), 1));
        CHECK(pt[0] == doctest::Approx(1.0));
        CHECK(pt[1] == doctest::Approx(0.5));
    }
    SUBCASE("non-negative N' is rejected with a witness") {
        std::vector<std::array<double, 3>> bad{{0, 1, 0}}; // B-positive
        CHECK_THROWS_AS(negative_graph(B, N, bad), precondition_error);
    }
    SUBCASE("midpoints of valid graphs are valid (convexity, sampled)") {
        std::mt19937 rng(15);
        std::uniform_real_distribution<double> U(-0.9, 0.9);
        for (int i = 0; i < 25; ++i) {
            double a = U(rng), b = U(rng);
            std::vector<std::array<double, 3>> Na{{1, a, 0}}, Nb{{1, b, 0}};
            auto ga = negative_graph(B, N, Na);
            auto gb = negative_graph(B, N, Nb);
            REQUIRE(ga.certified);
            REQUIRE(gb.certified);
            double mid = 0.5 * (ga.g[0][0] + gb.g[0][0]);
            std::vector<std::array<double, 3>> Nm{{1, mid, 0}};
            auto gm = negative_graph(B, N, Nm);
            CHECK(gm.certified);
        }
    }
}

TEST_CASE("negative_graph in dimension 3") {
    SymMat B = SymMat::zero(3);
    B.at(0, 0) = -2;
    B.at(1, 1) = 1;
    B.at(2, 2) = 3;
    std::vector<std::array<double, 3>> N{{1, 0, 0}};
    std::vector<std::array<double, 3>> Np{{1, 0.3, 0.4}};
    auto gr = negative_graph(B, N, Np);
    CHECK(gr.certified);
    CHECK(gr.p_dim == 2);
}
