#include "doctest.h"

#include "graphcurv/curvature.hpp"
#include "graphcurv/detail/rng.hpp"

using namespace graphcurv;

TEST_CASE("two-vertex curvature in closed form") {
    // Pinning f at the center leaves one coordinate a = f(other) with
    // Gamma = a^2/2 and Gamma_2 = a^2, so the ratio is 2 at n = inf and
    // (a^2 - a^2/2) / (a^2/2) = 1 at n = 2.
    const WeightedGraph g = make_path(2, MeasurePolicy::normalized());
    CHECK(curvature_at(g, 0, kDimInf).k == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(curvature_at(g, 0, 2.0).k == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curvature_at(g, 1, kDimInf).k == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hypercubes carry curvature 2/d") {
    for (int d = 1; d <= 3; ++d) {
        const WeightedGraph g = make_hypercube(d, MeasurePolicy::normalized());
        const CurvatureResult res = curvature_function(g, kDimInf);
        CHECK(res.global_k == doctest::Approx(2.0 / d).epsilon(1e-9));
        // vertex transitivity: every vertex sees the same constant
        for (const auto& vc : res.per_vertex)
            CHECK(vc.k == doctest::Approx(res.global_k).epsilon(1e-9));
    }
}

TEST_CASE("long combinatorial cycles are flat") {
    for (int n : {6, 8, 10}) {
        const WeightedGraph g = make_cycle(n, MeasurePolicy::combinatorial());
        CHECK(curvature_function(g, kDimInf).global_k == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("path endpoints curve differently from the interior") {
    const WeightedGraph g = make_path(5, MeasurePolicy::combinatorial());
    const double end = curvature_at(g, 0, kDimInf).k;
    const double mid = curvature_at(g, 2, kDimInf).k;
    CHECK(std::abs(end - mid) > 1e-6);
    CHECK(curvature_bruteforce(g, 0, kDimInf, 32, 5) == doctest::Approx(end).epsilon(1e-6));
    CHECK(curvature_bruteforce(g, 2, kDimInf, 32, 5) == doctest::Approx(mid).epsilon(1e-6));
}

TEST_CASE("curvature is monotone in the dimension parameter") {
    detail::Rng rng(101);
    for (int trial = 0; trial < 6; ++trial) {
        const WeightedGraph g =
            make_random_connected(7 + static_cast<int>(rng.below(4)), rng.bits(), 0.1, 2.0,
                                  MeasurePolicy::normalized());
        const int x = static_cast<int>(rng.below(g.num_vertices()));
        const double k2 = curvature_at(g, x, 2.0).k;
        const double k4 = curvature_at(g, x, 4.0).k;
        const double kinf = curvature_at(g, x, kDimInf).k;
        CHECK(k2 <= k4 + 1e-10);
        CHECK(k4 <= kinf + 1e-10);
    }
}

TEST_CASE("curvature scaling covariance") {
    const WeightedGraph g = make_random_connected(9, 301, 0.1, 2.0, MeasurePolicy::normalized());
    const double base = curvature_at(g, 3, kDimInf).k;
    CHECK(curvature_at(scale_measure(g, 2.0), 3, kDimInf).k ==
          doctest::Approx(base / 2.0).epsilon(1e-9));
    CHECK(curvature_at(scale_jointly(g, 2.0), 3, kDimInf).k ==
          doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("eigen solve agrees with the descent oracle on random graphs") {
    detail::Rng rng(999);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(6));
        const WeightedGraph g =
            make_random_connected(n, rng.bits(), 0.1, 2.0, MeasurePolicy::normalized());
        const int x = static_cast<int>(rng.below(n));
        for (double dim : {kDimInf, 2.0}) {
            const double exact = curvature_at(g, x, dim).k;
            const double estimate = curvature_bruteforce(g, x, dim, 32, rng.bits());
            CHECK(estimate == doctest::Approx(exact).epsilon(1e-6));
            CHECK(estimate >= exact - 1e-6);
        }
    }
}

TEST_CASE("descent oracle handles wide local problems") {
    // dense random graph: the punctured 2-ball reaches ~30 coordinates
    const WeightedGraph g =
        make_random_connected(31, 2718, 0.1, 2.0, MeasurePolicy::normalized(), 0.5);
    const int x = 7;
    REQUIRE(ball(g, x, 2).size() >= 25);
    const double exact = curvature_at(g, x, kDimInf).k;
    const double est = curvature_bruteforce(g, x, kDimInf, 64, 99);
    CHECK(est == doctest::Approx(exact).epsilon(1e-6));
    CHECK(est >= exact - 1e-6);
}

TEST_CASE("witness achieves the reported curvature") {
    const WeightedGraph g = make_random_connected(10, 55, 0.1, 2.0, MeasurePolicy::normalized());
    for (int x : {0, 4, 9}) {
        const VertexCurvature vc = curvature_at(g, x, kDimInf);
        CHECK(std::abs(vc.witness_residual) <= 1e-8);
        const VertexFunction f = vc.witness.lift(g);
        CHECK(gamma_at(g, f, x) > 0.0);
        // one descent from the witness cannot move below the optimum
        CHECK(curvature_descent_from(g, vc.witness, kDimInf) ==
              doctest::Approx(vc.k).epsilon(1e-10));
    }
}

TEST_CASE("cd_check verdicts and tightness") {
    const WeightedGraph g = make_path(2, MeasurePolicy::normalized());
    CHECK(!cd_check(g, kDimInf, -1e6).has_value());
    CHECK(!cd_check(g, kDimInf, 2.0).has_value());

    const auto violation = cd_check(g, kDimInf, 2.0 + 1e-3);
    REQUIRE(violation.has_value());
    CHECK(violation->slack < 0.0);

    for (const WeightedGraph& h : {make_cycle(6, MeasurePolicy::normalized()),
                                   make_hypercube(3, MeasurePolicy::normalized()),
                                   make_tree_ball(3, 2, MeasurePolicy::combinatorial())}) {
        for (double dim : {kDimInf, 2.0}) {
            const double k = curvature_function(h, dim).global_k;
            CHECK(!cd_check(h, dim, k).has_value());
            CHECK(!cd_check(h, dim, k - 1e-6).has_value());
            CHECK(cd_check(h, dim, k + 1e-6).has_value());
        }
    }
}

TEST_CASE("dimension parameter is validated") {
    const WeightedGraph g = make_path(2, MeasurePolicy::normalized());
    CHECK_THROWS_AS(curvature_at(g, 0, 0.0), DomainError);
    CHECK_THROWS_AS(curvature_at(g, 0, -3.0), DomainError);
    CHECK_THROWS_AS(curvature_at(g, 7, kDimInf), UnknownVertex);
}
