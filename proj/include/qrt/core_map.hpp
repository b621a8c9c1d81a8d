#pragma once

// The planar birational map behind the order-one difference system
//
//   u_{n+1} u_n = 1 + d / v_n,      v_{n+1} v_n = 1 + d / u_{n+1},
//
// its inverse, the conserved quantity, the equilibrium, and orbit iteration.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qrt/errors.hpp"
#include "qrt/numerics.hpp"

namespace qrt {

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

inline PlanePoint reflect_diagonal(PlanePoint m) { return {m.y, m.x}; }

inline double distance(PlanePoint a, PlanePoint b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Mat2 {
    double a11, a12, a21, a22;
    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Rescaling that removes the additive constant c from the two-parameter
/// system: with u = u' sqrt(c), v = v' sqrt(c) the pair (c, d) becomes
/// (1, d c^{-3/2}).
inline double normalize_parameter(double c, double d) {
    if (!(c > 0.0) || !(d > 0.0)) throw domain_error("normalize_parameter: c and d must be positive");
    return d / (c * std::sqrt(c));
}

/// Orbit of the map: points M_0 .. M_n plus the recorded drift of the
/// conserved quantity at every point, so downstream consumers can reject
/// degraded orbits.
struct Orbit {
    std::vector<PlanePoint> points;
    std::vector<double> drift;  // |G(point) - level| per point
    double d = 0.0;
    double level = 0.0;  // value of the conserved quantity at the start
    double max_drift = 0.0;
};

class QrtMap {
  public:
    explicit QrtMap(double d) : d_(d) {
        if (!(d > 0.0)) throw domain_error("QrtMap: parameter d must be positive");
        ell_ = solve_fixed_point(d);
    }

    double d() const { return d_; }

    /// One forward step. Both coordinates must be positive; inputs closer
    /// than 1e-12 to an axis are rejected because the second coordinate of
    /// the image cancels catastrophically there.
    PlanePoint apply(PlanePoint m) const {
        check_positive(m, "apply");
        const double X = (m.y + d_) / (m.x * m.y);
        const double Y = (d_ * m.x * m.y + m.y + d_) / (m.y * (m.y + d_));
        return {X, Y};
    }

    /// Inverse step: conjugate of the forward step by the diagonal swap.
    PlanePoint apply_inverse(PlanePoint m) const {
        check_positive(m, "apply_inverse");
        return reflect_diagonal(apply(reflect_diagonal(m)));
    }

    /// The conserved quantity G(x, y) = x + y + 1/x + 1/y + d/(xy).
    /// Its level sets are the invariant cubic curves.
    double invariant(PlanePoint m) const {
        check_positive(m, "invariant");
        return m.x + m.y + 1.0 / m.x + 1.0 / m.y + d_ / (m.x * m.y);
    }

    /// Common coordinate of the unique fixed point (ell, ell); ell is the
    /// positive root of t^3 - t - d.
    double fixed_point() const { return ell_; }

    PlanePoint equilibrium() const { return {ell_, ell_}; }

    /// Minimum of the conserved quantity, attained only at the fixed point:
    /// 3*ell + 1/ell, always greater than 4.
    double invariant_minimum() const { return 3.0 * ell_ + 1.0 / ell_; }

    /// Closed-form Jacobian of the forward step.
    Mat2 jacobian(PlanePoint m) const {
        check_positive(m, "jacobian");
        const double x = m.x;
        const double y = m.y;
        const double dxdx = -(y + d_) / (x * x * y);
        const double dxdy = -d_ / (x * y * y);
        const double dydx = d_ / (y + d_);
        const double num = (d_ * x + 1.0) * (y * y + d_ * y) -
                           (d_ * x * y + y + d_) * (2.0 * y + d_);
        const double den = y * y + d_ * y;
        const double dydy = num / (den * den);
        return {dxdx, dxdy, dydx, dydy};
    }

    /// Iterates the map n times from m0 and records the drift of the
    /// conserved quantity at every point. A point whose drift exceeds
    /// drift_tol, or whose coordinates stop being finite positive numbers,
    /// aborts with a precision error naming the failing index.
    Orbit orbit(PlanePoint m0, std::size_t n, double drift_tol = 1e-8) const {
        Orbit o;
        o.d = d_;
        o.level = invariant(m0);
        o.points.reserve(n + 1);
        o.drift.reserve(n + 1);
        PlanePoint m = m0;
        for (std::size_t k = 0; k <= n; ++k) {
            if (!std::isfinite(m.x) || !std::isfinite(m.y) || m.x <= 0.0 || m.y <= 0.0)
                throw precision_error("orbit: coordinate overflow/underflow at index " +
                                      std::to_string(k));
            const double g = invariant(m);
            const double dr = std::abs(g - o.level);
            if (dr > drift_tol)
                throw precision_error("orbit: invariant drift " + std::to_string(dr) +
                                      " beyond tolerance at index " + std::to_string(k));
            o.points.push_back(m);
            o.drift.push_back(dr);
            o.max_drift = std::max(o.max_drift, dr);
            if (k < n) m = apply(m);
        }
        return o;
    }

  private:
    static double solve_fixed_point(double d) {
        // The positive root of t^3 - t - d lies in the open interval
        // (max(1, d^{1/3}), 1 + d/2); bisection there plus Newton polish.
        const auto f = [d](double t) { return t * t * t - t - d; };
        const auto df = [](double t) { return 3.0 * t * t - 1.0; };
        const double lo = std::max(1.0, std::cbrt(d));
        const double hi = 1.0 + 0.5 * d;
        const double root = num::bisect(f, lo, hi, 120);
        return num::newton_polish(f, df, root, 6);
    }

    void check_positive(PlanePoint m, const char* who) const {
        if (!(m.x > 1e-12) || !(m.y > 1e-12))
            throw domain_error(std::string(who) + ": coordinates must be positive (and not "
                                                  "within 1e-12 of an axis)");
    }

    double d_;
    double ell_;
};

}  // namespace qrt
