#include <doctest.h>

#include <cmath>
#include <random>

#include "qrt/core_map.hpp"

using namespace qrt;

namespace {

// Independent bisection oracle for the fixed-point cubic, no Newton anywhere.
double fixed_point_oracle(double d) {
    double lo = 0.0, hi = 2.0 + d;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = mid * mid * mid - mid - d;
        (f < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// One step of the un-normalized two-parameter recurrence, used as the
// oracle for normalize_parameter.
PlanePoint raw_step(double c, double d, PlanePoint m) {
    const double u = (c + d / m.y) / m.x;
    const double v = (c + d / u) / m.y;
    return {u, v};
}

std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611ULL);
    return gen;
}

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace

TEST_CASE("normalize_parameter maps (c,d) to the equivalent one-parameter system") {
    CHECK(normalize_parameter(1.0, 5.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(normalize_parameter(4.0, 8.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normalize_parameter(9.0, 27.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(normalize_parameter(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(normalize_parameter(1.0, -1.0), domain_error);

    // Oracle: iterating the raw (c,d) system and the normalized system from
    // matched starting points must give orbits related by the sqrt(c) scaling.
    for (int trial = 0; trial < 20; ++trial) {
        const double c = uniform(0.2, 5.0);
        const double d = uniform(0.2, 5.0);
        const double dp = normalize_parameter(c, d);
        QrtMap map(dp);
        const double s = std::sqrt(c);
        PlanePoint raw{uniform(0.5, 3.0), uniform(0.5, 3.0)};
        PlanePoint scaled{raw.x / s, raw.y / s};
        for (int k = 0; k < 12; ++k) {
            raw = raw_step(c, d, raw);
            scaled = map.apply(scaled);
            CHECK(raw.x == doctest::Approx(scaled.x * s).epsilon(1e-11));
            CHECK(raw.y == doctest::Approx(scaled.y * s).epsilon(1e-11));
        }
    }
}

TEST_CASE("forward step: reference values at d = 6") {
    QrtMap map(6.0);
    const PlanePoint p = map.apply({1.0, 1.0});
    CHECK(p.x == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(13.0 / 7.0).epsilon(1e-15));

    const PlanePoint fp = map.apply({2.0, 2.0});
    CHECK(fp.x == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(fp.y == doctest::Approx(2.0).epsilon(1e-15));

    // The image of (7, 13/7) stays on the same level of the invariant.
    const PlanePoint q = map.apply({7.0, 13.0 / 7.0});
    CHECK(map.invariant(q) == doctest::Approx(10.0).epsilon(1e-13));

    CHECK_THROWS_AS(map.apply({-1.0, 1.0}), domain_error);
    CHECK_THROWS_AS(map.apply({1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(map.apply({1e-13, 1.0}), domain_error);
}

TEST_CASE("inverse step undoes the forward step") {
    QrtMap map(6.0);
    const PlanePoint back = map.apply_inverse({7.0, 13.0 / 7.0});
    CHECK(back.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(back.y == doctest::Approx(1.0).epsilon(1e-14));

    const PlanePoint fp = map.apply_inverse({2.0, 2.0});
    CHECK(fp.x == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fp.y == doctest::Approx(2.0).epsilon(1e-14));

    for (int trial = 0; trial < 50; ++trial) {
        QrtMap m(uniform(0.1, 20.0));
        const PlanePoint p{uniform(0.05, 8.0), uniform(0.05, 8.0)};
        const PlanePoint rt = m.apply_inverse(m.apply(p));
        CHECK(distance(rt, p) <= 1e-10 * (1.0 + distance(p, {0, 0})));
    }
}

TEST_CASE("invariant: reference values and strict minimum") {
    QrtMap map(6.0);
    CHECK(map.invariant({1.0, 1.0}) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(map.invariant({2.0, 2.0}) == doctest::Approx(6.5).epsilon(1e-15));
    CHECK(map.invariant({7.0, 13.0 / 7.0}) == doctest::Approx(10.0).epsilon(1e-14));

    // Strict minimum away from the equilibrium.
    for (int trial = 0; trial < 100; ++trial) {
        QrtMap m(uniform(0.1, 20.0));
        PlanePoint p{uniform(0.05, 9.0), uniform(0.05, 9.0)};
        if (distance(p, m.equilibrium()) < 1e-6) p.x += 0.5;
        CHECK(m.invariant(p) > m.invariant_minimum());
    }
}

TEST_CASE("fixed point: exact value, bracket, and oracle agreement") {
    CHECK(QrtMap(6.0).fixed_point() == doctest::Approx(2.0).epsilon(1e-14));

    const double l_half = QrtMap(0.5).fixed_point();
    CHECK(l_half > 1.0);
    CHECK(l_half < 1.25);

    CHECK(QrtMap(1.05).fixed_point() ==
          doctest::Approx(fixed_point_oracle(1.05)).epsilon(1e-13));

    for (int trial = 0; trial < 40; ++trial) {
        const double d = uniform(0.01, 50.0);
        const double ell = QrtMap(d).fixed_point();
        CHECK(std::abs(ell * ell * ell - ell - d) <= 1e-13 * (1.0 + d));
        CHECK(ell > std::max(1.0, std::cbrt(d)));
        CHECK(ell < 1.0 + 0.5 * d);
    }
}

TEST_CASE("invariant minimum: both closed forms agree and exceed 4") {
    CHECK(QrtMap(6.0).invariant_minimum() == doctest::Approx(6.5).epsilon(1e-15));
    for (int trial = 0; trial < 40; ++trial) {
        const double d = uniform(0.01, 50.0);
        QrtMap m(d);
        const double ell = m.fixed_point();
        const double km = m.invariant_minimum();
        CHECK(km == doctest::Approx((4.0 * ell + 3.0 * d) / (ell * ell)).epsilon(1e-12));
        CHECK(km > 4.0);
    }
    // Compose with the fixed point at d = 1.05.
    QrtMap m(1.05);
    const double ell = m.fixed_point();
    CHECK(m.invariant_minimum() == doctest::Approx(3.0 * ell + 1.0 / ell).epsilon(1e-15));
}

TEST_CASE("jacobian: closed form vs central differences, trace at equilibrium") {
    QrtMap map(6.0);
    const Mat2 j = map.jacobian({2.0, 2.0});
    CHECK(j.trace() == doctest::Approx(-23.0 / 16.0).epsilon(1e-14));
    CHECK(j.det() > 0.0);

    for (int trial = 0; trial < 30; ++trial) {
        QrtMap m(uniform(0.2, 15.0));
        const PlanePoint p{uniform(0.2, 6.0), uniform(0.2, 6.0)};
        const Mat2 a = m.jacobian(p);
        const double hx = 1e-6 * std::max(1.0, std::abs(p.x));
        const double hy = 1e-6 * std::max(1.0, std::abs(p.y));
        const PlanePoint fxp = m.apply({p.x + hx, p.y});
        const PlanePoint fxm = m.apply({p.x - hx, p.y});
        const PlanePoint fyp = m.apply({p.x, p.y + hy});
        const PlanePoint fym = m.apply({p.x, p.y - hy});
        const double scale = 1.0 + std::abs(a.a11) + std::abs(a.a12) + std::abs(a.a21) +
                             std::abs(a.a22);
        CHECK(std::abs((fxp.x - fxm.x) / (2 * hx) - a.a11) <= 1e-6 * scale);
        CHECK(std::abs((fyp.x - fym.x) / (2 * hy) - a.a12) <= 1e-6 * scale);
        CHECK(std::abs((fxp.y - fxm.y) / (2 * hx) - a.a21) <= 1e-6 * scale);
        CHECK(std::abs((fyp.y - fym.y) / (2 * hy) - a.a22) <= 1e-6 * scale);
    }
}

TEST_CASE("trace consistency: half-angle identity between the two limit formulas") {
    for (int trial = 0; trial < 20; ++trial) {
        const double d = uniform(0.05, 30.0);
        QrtMap m(d);
        const double ell = m.fixed_point();
        const Mat2 j = m.jacobian(m.equilibrium());
        const double lhs = std::acos(0.5 * j.trace()) / (2.0 * M_PI);
        const double rhs = std::acos((ell * ell - 1.0) / (2.0 * ell * ell)) / M_PI;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("orbit: constant at the equilibrium, recorded drift, failure modes") {
    QrtMap map(6.0);

    const Orbit fixed = map.orbit({2.0, 2.0}, 5);
    REQUIRE(fixed.points.size() == 6);
    for (const auto& p : fixed.points) {
        CHECK(p.x == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(p.y == doctest::Approx(2.0).epsilon(1e-13));
    }

    const Orbit two = map.orbit({1.0, 1.0}, 1);
    REQUIRE(two.points.size() == 2);
    CHECK(two.points[1].x == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(two.points[1].y == doctest::Approx(13.0 / 7.0).epsilon(1e-15));
    CHECK(two.level == doctest::Approx(10.0).epsilon(1e-15));

    const Orbit big = map.orbit({1.0, 1.0}, 10000);
    CHECK(big.max_drift <= 1e-8);
    CHECK(big.points.size() == 10001);

    CHECK_THROWS_AS(map.orbit({1.0, 1.0}, 10, 1e-18), precision_error);
}

TEST_CASE("conservation: relative drift below 1e-10 over 1e4 iterates") {
    for (const double d : {0.5, 1.05, 6.0, 20.0}) {
        QrtMap m(d);
        const PlanePoint p{uniform(0.3, 4.0), uniform(0.3, 4.0)};
        const Orbit o = m.orbit(p, 10000, 1e-6);
        CHECK(o.max_drift / o.level <= 1e-10);
    }
}

TEST_CASE("involution identity: swap-conjugate composed with the map is the identity") {
    for (int trial = 0; trial < 50; ++trial) {
        QrtMap m(uniform(0.1, 20.0));
        const PlanePoint p{uniform(0.1, 6.0), uniform(0.1, 6.0)};
        const PlanePoint q = reflect_diagonal(m.apply(reflect_diagonal(m.apply(p))));
        CHECK(distance(q, p) <= 1e-10 * (1.0 + std::abs(p.x) + std::abs(p.y)));
    }
}
