#pragma once

// Numerical sensitivity experiment: two starts a small transversal offset
// apart live on neighboring level ovals with different rotation numbers, so
// their angular phases drift apart and the orbits separate by a fixed
// threshold infinitely often. A fibered-rotation model on (level, angle)
// coordinates provides the conjugate picture for comparison.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qrt/core_map.hpp"
#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"
#include "qrt/numerics.hpp"
#include "qrt/rotation.hpp"

namespace qrt {

struct FiberedState {
    double x;      // fiber coordinate (left unchanged by the step)
    double alpha;  // circle coordinate in [0, 1)
};

inline double frac(double v) { return v - std::floor(v); }

/// Circle distance to zero.
inline double circle_norm(double v) {
    const double f = frac(v);
    return std::min(f, 1.0 - f);
}

/// One step of the fibered rotation (x, alpha) -> (x, alpha + theta(x)).
template <class ThetaFn>
FiberedState fibered_step(ThetaFn&& theta_of_x, FiberedState s) {
    return {s.x, frac(s.alpha + theta_of_x(s.x))};
}

struct SeparationRecord {
    double delta = 0.0;
    std::vector<std::size_t> indices;  // iterates with distance >= delta, ascending
    double max_dist = 0.0;
    double theta_level = 0.0;        // rotation number on the level of the first start
    double theta_level_prime = 0.0;  // and of the second
};

/// Distances between the two forward orbits, recording every index at which
/// they are at least delta apart.
inline SeparationRecord separation_pair(const QrtMap& map, PlanePoint m, PlanePoint m_prime,
                                        double delta, std::size_t n) {
    SeparationRecord rec;
    rec.delta = delta;
    rec.theta_level = rotation_number(map.d(), map.invariant(m)).theta;
    rec.theta_level_prime = rotation_number(map.d(), map.invariant(m_prime)).theta;
    PlanePoint a = m;
    PlanePoint b = m_prime;
    for (std::size_t k = 1; k <= n; ++k) {
        a = map.apply(a);
        b = map.apply(b);
        const double dist = distance(a, b);
        rec.max_dist = std::max(rec.max_dist, dist);
        if (dist >= delta) rec.indices.push_back(k);
    }
    return rec;
}

/// Start offset by radius along the gradient of the conserved quantity:
/// first-order transversal to the level oval, so the level changes at first
/// order in the radius.
inline PlanePoint transversal_offset(double d, PlanePoint m, double radius) {
    const double gx = 1.0 - 1.0 / (m.x * m.x) - d / (m.x * m.x * m.y);
    const double gy = 1.0 - 1.0 / (m.y * m.y) - d / (m.x * m.y * m.y);
    const double len = std::hypot(gx, gy);
    if (!(len > 0.0)) throw precision_error("transversal_offset: vanishing gradient");
    const PlanePoint m_prime{m.x + radius * gx / len, m.y + radius * gy / len};
    if (!(m_prime.x > 0.0 && m_prime.y > 0.0))
        throw domain_error("transversal_offset: offset start left the positive quadrant");
    return m_prime;
}

/// Offsets the start along the gradient of the conserved quantity (first
/// order transversal to the level oval), checks the two levels really carry
/// different rotation numbers, and runs the pair experiment.
inline SeparationRecord separation_experiment(double d, PlanePoint m, double radius,
                                              double delta, std::size_t n) {
    if (!(radius > 0.0) || !(delta > 0.0) || n < 1)
        throw domain_error("separation_experiment: radius, delta, n must be positive");
    QrtMap map(d);
    if (distance(m, map.equilibrium()) <= 1e-6)
        throw domain_error("separation_experiment: start must stay away from the equilibrium");

    const PlanePoint m_prime = transversal_offset(d, m, radius);
    SeparationRecord rec = separation_pair(map, m, m_prime, delta, n);
    if (std::abs(rec.theta_level - rec.theta_level_prime) <= 1e-8)
        throw precision_error("separation_experiment: neighboring levels share their "
                              "rotation number at this radius");
    return rec;
}

/// Least and greatest value of the conserved quantity over a finite sample
/// (the invariant annulus holding the whole sample's dynamics). The sample
/// must stay clear of the equilibrium.
inline std::pair<double, double> invariant_range(double d,
                                                 const std::vector<PlanePoint>& sample) {
    if (sample.empty()) throw domain_error("invariant_range: empty sample");
    QrtMap map(d);
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const PlanePoint& p : sample) {
        if (distance(p, map.equilibrium()) <= 1e-6)
            throw domain_error("invariant_range: sample touches the equilibrium neighborhood");
        const double g = map.invariant(p);
        lo = first ? g : std::min(lo, g);
        hi = first ? g : std::max(hi, g);
        first = false;
    }
    return {lo, hi};
}

/// Point of the positive oval at a prescribed winding angle around the
/// equilibrium, found by shooting a ray from the equilibrium and bisecting
/// the level equation along it.
inline PlanePoint oval_point_at_angle(const CubicCurve& c, double phi) {
    QrtMap map(c.d());
    const double ell = c.ell();
    const double cx = std::cos(phi);
    const double cy = std::sin(phi);
    // Stay strictly inside the quadrant: the level value blows up at the axes.
    double r_cap = 1e18;
    if (cx < 0.0) r_cap = std::min(r_cap, ell / -cx);
    if (cy < 0.0) r_cap = std::min(r_cap, ell / -cy);
    r_cap *= 0.999999999;

    const auto level_gap = [&](double r) {
        return map.invariant({ell + r * cx, ell + r * cy}) - c.K();
    };
    double hi = std::min(1.0, 0.5 * r_cap);
    int guard = 0;
    while (level_gap(hi) < 0.0) {
        hi = std::min(r_cap, 2.0 * hi);
        if (++guard > 200 || hi >= r_cap) {
            hi = r_cap;
            break;
        }
    }
    const double r = num::bisect(level_gap, 0.0, hi, 120);
    return {ell + r * cx, ell + r * cy};
}

/// The same separation experiment run on the fibered model: phases advance
/// rigidly by the two rotation numbers and positions are reconstructed on
/// the two ovals at the drifting winding angles.
inline SeparationRecord fibered_model_experiment(double d, PlanePoint m, PlanePoint m_prime,
                                                 double delta, std::size_t n) {
    QrtMap map(d);
    const CubicCurve c(d, map.invariant(m));
    const CubicCurve cp(d, map.invariant(m_prime));
    const double theta = rotation_number(d, c.K()).theta;
    const double theta_p = rotation_number(d, cp.K()).theta;
    const double ell = c.ell();

    SeparationRecord rec;
    rec.delta = delta;
    rec.theta_level = theta;
    rec.theta_level_prime = theta_p;
    double alpha = std::atan2(m.y - ell, m.x - ell) / (2.0 * M_PI);
    double alpha_p = std::atan2(m_prime.y - ell, m_prime.x - ell) / (2.0 * M_PI);
    for (std::size_t k = 1; k <= n; ++k) {
        alpha = frac(alpha + theta);
        alpha_p = frac(alpha_p + theta_p);
        const PlanePoint a = oval_point_at_angle(c, 2.0 * M_PI * alpha);
        const PlanePoint b = oval_point_at_angle(cp, 2.0 * M_PI * alpha_p);
        const double dist = distance(a, b);
        rec.max_dist = std::max(rec.max_dist, dist);
        if (dist >= delta) rec.indices.push_back(k);
    }
    return rec;
}

}  // namespace qrt
