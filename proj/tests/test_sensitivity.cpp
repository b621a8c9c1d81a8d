#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qrt/sensitivity.hpp"

using namespace qrt;

TEST_CASE("fibered step: trivial and periodic phase functions") {
    const auto zero = [](double) { return 0.0; };
    FiberedState s{2.5, 0.3};
    s = fibered_step(zero, s);
    CHECK(s.x == 2.5);
    CHECK(s.alpha == doctest::Approx(0.3));

    const auto half = [](double) { return 0.5; };
    FiberedState t{1.0, 0.2};
    t = fibered_step(half, fibered_step(half, t));
    CHECK(t.alpha == doctest::Approx(0.2));
}

TEST_CASE("fibered step: irrational phase equidistributes (Weyl statistic)") {
    const double theta = std::sqrt(2.0) - 1.0;
    const auto fn = [theta](double) { return theta; };
    FiberedState s{1.0, 0.0};
    std::complex<double> sum = 0.0;
    const std::size_t n = 100000;
    for (std::size_t k = 0; k < n; ++k) {
        sum += std::exp(std::complex<double>(0.0, 2.0 * M_PI * s.alpha));
        s = fibered_step(fn, s);
    }
    CHECK(std::abs(sum) / static_cast<double>(n) < 0.01);
}

TEST_CASE("identical starts never separate") {
    QrtMap map(6.0);
    const SeparationRecord rec = separation_pair(map, {1.0, 1.0}, {1.0, 1.0}, 1e-12, 2000);
    CHECK(rec.indices.empty());
    CHECK(rec.max_dist == 0.0);
}

TEST_CASE("transversal offsets separate, and keep separating") {
    const SeparationRecord rec = separation_experiment(6.0, {1.0, 1.0}, 1e-3, 0.05, 10000);
    CHECK(!rec.indices.empty());
    CHECK(rec.max_dist >= 0.05);
    CHECK(std::abs(rec.theta_level - rec.theta_level_prime) > 1e-8);

    const SeparationRecord twice = separation_experiment(6.0, {1.0, 1.0}, 1e-3, 0.05, 20000);
    CHECK(twice.indices.size() >= rec.indices.size());

    CHECK_THROWS_AS(separation_experiment(6.0, {2.0, 2.0}, 1e-3, 0.05, 100), domain_error);
    CHECK_THROWS_AS(separation_experiment(6.0, {1.0, 1.0}, -1.0, 0.05, 100), domain_error);
}

TEST_CASE("separation gaps in the pure rotation model obey the drift bound") {
    // For phases drifting apart at rate dtheta, runs of non-separated
    // iterates cannot exceed ceil(1/(2 dtheta)) + 1 when delta <= 1/4.
    const double delta = 0.05;
    for (const double dtheta : {std::sqrt(2.0) / 100.0, std::sqrt(3.0) / 50.0, 0.0137}) {
        // Guard: no rational p/q with q <= 50 within 1e-9 of the drift.
        bool near_rational = false;
        for (int q = 1; q <= 50; ++q)
            if (circle_norm(dtheta * q) < 1e-9 * q) near_rational = true;
        REQUIRE(!near_rational);

        const std::size_t n = 10000;
        const std::size_t bound =
            static_cast<std::size_t>(std::ceil(1.0 / (2.0 * dtheta))) + 1;
        std::size_t last = 0;
        std::size_t worst_gap = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (circle_norm(k * dtheta) >= delta) {
                worst_gap = std::max(worst_gap, k - last);
                last = k;
            }
        }
        CHECK(worst_gap >= 1);
        CHECK(worst_gap <= bound);
    }
}

TEST_CASE("fibered model reproduces the separation count within 20 percent") {
    const double d = 6.0;
    QrtMap map(d);
    const PlanePoint m{1.0, 1.0};
    const double gx = 1.0 - 1.0 / (m.x * m.x) - d / (m.x * m.x * m.y);
    const double gy = 1.0 - 1.0 / (m.y * m.y) - d / (m.x * m.y * m.y);
    const double len = std::hypot(gx, gy);
    const PlanePoint m_prime{m.x + 1e-3 * gx / len, m.y + 1e-3 * gy / len};

    const std::size_t n = 10000;
    const SeparationRecord direct = separation_pair(map, m, m_prime, 0.05, n);
    const SeparationRecord model = fibered_model_experiment(d, m, m_prime, 0.05, n);
    REQUIRE(!direct.indices.empty());
    REQUIRE(!model.indices.empty());
    const double ratio = static_cast<double>(model.indices.size()) /
                         static_cast<double>(direct.indices.size());
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.2);
}

TEST_CASE("invariant range over finite samples") {
    const auto one = invariant_range(6.0, {{1.0, 1.0}});
    CHECK(one.first == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(one.second == doctest::Approx(10.0).epsilon(1e-15));

    // Two points of the same level: degenerate interval again.
    const auto level = invariant_range(6.0, {{1.0, 1.0}, {7.0, 13.0 / 7.0}});
    CHECK(level.first == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(level.second == doctest::Approx(10.0).epsilon(1e-13));

    const auto two = invariant_range(6.0, {{1.0, 1.0}, {3.0, 3.0}});
    QrtMap map(6.0);
    CHECK(two.first == doctest::Approx(map.invariant({3.0, 3.0})).epsilon(1e-15));
    CHECK(two.second == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(two.first > map.invariant_minimum());

    CHECK_THROWS_AS(invariant_range(6.0, {}), domain_error);
    CHECK_THROWS_AS(invariant_range(6.0, {{2.0, 2.0}}), domain_error);
}

TEST_CASE("oval point at angle sits on the level and at the requested bearing") {
    const CubicCurve c(6.0, 10.0);
    QrtMap map(6.0);
    for (int i = 0; i < 16; ++i) {
        const double phi = 2.0 * M_PI * i / 16.0;
        const PlanePoint p = oval_point_at_angle(c, phi);
        CHECK(p.x > 0.0);
        CHECK(p.y > 0.0);
        CHECK(map.invariant(p) == doctest::Approx(10.0).epsilon(1e-10));
        const double back = std::atan2(p.y - c.ell(), p.x - c.ell());
        CHECK(circle_norm((back - phi) / (2.0 * M_PI)) <= 1e-9);
    }
}
