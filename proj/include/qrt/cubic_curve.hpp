#pragma once

// The invariant cubic at level K:
//
//   x y (x + y) + (x + y) + d - K x y = 0,      K > K_m,
//
// in projective form, its special points, the three diagonal points, and the
// classification of affine points into the four real branches.

#include <array>
#include <cmath>
#include <string>

#include "qrt/core_map.hpp"
#include "qrt/errors.hpp"
#include "qrt/numerics.hpp"
#include "qrt/rational.hpp"

namespace qrt {

struct ProjPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 1.0;
};

inline ProjPoint proj(PlanePoint p) { return {p.x, p.y, 1.0}; }

inline PlanePoint affine(ProjPoint p) {
    if (p.t == 0.0) throw domain_error("affine: point at infinity");
    return {p.x / p.t, p.y / p.t};
}

/// Canonical representative: t = 1 when the point is finite, otherwise the
/// largest-magnitude coordinate is scaled to 1 (ties prefer x, then y).
inline ProjPoint normalized(ProjPoint p) {
    const double ax = std::abs(p.x), ay = std::abs(p.y), at = std::abs(p.t);
    const double m = std::max({ax, ay, at});
    if (m == 0.0) throw precision_error("normalized: zero projective triple");
    if (at > 1e-12 * m) return {p.x / p.t, p.y / p.t, 1.0};
    const double s = (ax >= ay) ? p.x : p.y;
    return {p.x / s, p.y / s, 0.0};
}

inline bool is_infinite(ProjPoint p) { return normalized(p).t == 0.0; }

/// Chordal (angular) distance between projective points: norm of the cross
/// product of the two triples over the product of their norms. Invariant
/// under scaling of either argument, and well behaved when a computed point
/// is within rounding of the line at infinity.
inline double proj_distance(ProjPoint a, ProjPoint b) {
    const double cx = a.y * b.t - a.t * b.y;
    const double cy = a.t * b.x - a.x * b.t;
    const double ct = a.x * b.y - a.y * b.x;
    const double na = std::sqrt(a.x * a.x + a.y * a.y + a.t * a.t);
    const double nb = std::sqrt(b.x * b.x + b.y * b.y + b.t * b.t);
    if (na == 0.0 || nb == 0.0) throw precision_error("proj_distance: zero triple");
    return std::sqrt(cx * cx + cy * cy + ct * ct) / (na * nb);
}

inline ProjPoint reflect_diagonal(ProjPoint p) { return {p.y, p.x, p.t}; }

enum class Branch {
    PositiveOval,  // compact component in the open positive quadrant
    NegativeArc,   // unbounded branch on the x + y < 0 side (carries both axis cuts)
    FarUpper,      // x < 0, x + y > K
    FarLower,      // y < 0, x + y > K
};

struct SpecialPoints {
    ProjPoint x_cut;     // (-d, 0, 1)
    ProjPoint y_cut;     // (0, -d, 1)
    ProjPoint horiz_inf; // (1, 0, 0)
    ProjPoint vert_inf;  // (0, 1, 0)
    ProjPoint diag_inf;  // (1, -1, 0), inflection on the asymptote x + y = K
};

struct DiagonalPoints {
    double f1, f2, f3;  // abscissas of the diagonal intersections, ascending
};

class CubicCurve {
  public:
    CubicCurve(double d, double K) : d_(d), K_(K) {
        if (!(d > 0.0)) throw domain_error("CubicCurve: d must be positive");
        QrtMap map(d);
        ell_ = map.fixed_point();
        km_ = map.invariant_minimum();
        if (!(K > km_))
            throw domain_error("CubicCurve: level K must exceed the invariant minimum " +
                               std::to_string(km_));
        solve_diagonal();
    }

    double d() const { return d_; }
    double K() const { return K_; }
    double ell() const { return ell_; }
    double k_min() const { return km_; }

    double residual_raw(ProjPoint p) const {
        const double s = p.x + p.y;
        return p.x * p.y * s + s * p.t * p.t + d_ * p.t * p.t * p.t - K_ * p.x * p.y * p.t;
    }

    /// Residual scaled so tolerances stay meaningful for coordinates (and
    /// level values) of any magnitude.
    double residual(ProjPoint p) const {
        const double m = std::max({std::abs(p.x), std::abs(p.y), std::abs(p.t)});
        const double scale = 1.0 + m * m * m + std::abs(K_) * m * m + d_;
        return std::abs(residual_raw(p)) / scale;
    }

    bool contains(ProjPoint p, double tol = 1e-9) const { return residual(p) <= tol; }

    /// Gradient of the projective cubic form at p.
    std::array<double, 3> gradient(ProjPoint p) const {
        const double fx = 2.0 * p.x * p.y + p.y * p.y + p.t * p.t - K_ * p.y * p.t;
        const double fy = p.x * p.x + 2.0 * p.x * p.y + p.t * p.t - K_ * p.x * p.t;
        const double ft = 2.0 * (p.x + p.y) * p.t + 3.0 * d_ * p.t * p.t - K_ * p.x * p.y;
        return {fx, fy, ft};
    }

    SpecialPoints special_points() const {
        return {{-d_, 0.0, 1.0}, {0.0, -d_, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
                {1.0, -1.0, 0.0}};
    }

    DiagonalPoints diagonal_points() const { return {f1_, f2_, f3_}; }

    /// 2*f3 - K, computed without the cancellation that would hit the naive
    /// difference for large K (f3 approaches K/2 like -4/K there).
    double f3_gap() const { return delta3_; }

    /// Slope of the curve's tangent at the y-axis cut (0, -d); always < -1.
    double tangent_slope_at_y_cut() const { return -(d_ * d_ + K_ * d_ + 1.0); }

    /// Branch of a finite on-curve point, decided by sign conditions alone.
    /// Values within 1e-9 of the x + y = K boundary are re-evaluated in exact
    /// rational arithmetic over the given double bits.
    Branch classify(PlanePoint p, double tol = 1e-9) const {
        const double r = residual(proj(p));
        if (r > tol)
            throw domain_error("classify: point not on the curve (scaled residual " +
                               std::to_string(r) + ")");
        if (p.x > 0.0 && p.y > 0.0) return Branch::PositiveOval;
        const double beyond = p.x + p.y - K_;
        bool past_asymptote;
        if (std::abs(beyond) < 1e-9 * (1.0 + std::abs(p.x) + std::abs(p.y) + std::abs(K_))) {
            const BigRational exact = rational_from_double(p.x) + rational_from_double(p.y) -
                                      rational_from_double(K_);
            past_asymptote = exact > 0;
        } else {
            past_asymptote = beyond > 0.0;
        }
        if (p.x < 0.0 && past_asymptote) return Branch::FarUpper;
        if (p.y < 0.0 && past_asymptote) return Branch::FarLower;
        return Branch::NegativeArc;
    }

    /// The on-curve point above x = ell on the positive oval, polished so its
    /// invariant level matches K to machine accuracy. Used as the probe for
    /// periodicity and winding computations.
    PlanePoint probe_on_oval() const {
        const double b = ell_ * ell_ + 1.0 - K_ * ell_;
        const double disc = b * b - 4.0 * ell_ * (ell_ + d_);
        if (!(disc > 0.0)) throw precision_error("probe_on_oval: level too close to the minimum");
        const double y0 = (-b + std::sqrt(disc)) / (2.0 * ell_);
        QrtMap map(d_);
        const auto g = [&](double y) { return map.invariant({ell_, y}) - K_; };
        const auto dg = [&](double y) {
            return 1.0 - 1.0 / (y * y) - d_ / (ell_ * y * y);
        };
        const double y = num::newton_polish(g, dg, y0, 6);
        return {ell_, y};
    }

  private:
    void solve_diagonal() {
        // Diagonal abscissas solve 2 t^3 - K t^2 + 2 t + d = 0. The top root
        // is recovered first through its gap g = 2 f3 - K, which is well
        // conditioned at every K (the direct trigonometric form loses the
        // two small roots entirely once K is large). The remaining two roots
        // then solve the quadratic with the exact symmetric functions
        // f1 + f2 = -g/2 and f1 f2 = -d/(2 f3).
        const auto p = [this](double t) {
            return 2.0 * t * t * t - K_ * t * t + 2.0 * t + d_;
        };
        const auto dp = [this](double t) { return 6.0 * t * t - 2.0 * K_ * t + 2.0; };
        const auto h = [this](double g) {
            const double s = K_ + g;
            return 0.25 * g * s * s + s + d_;
        };
        const auto dh = [this](double g) {
            const double s = K_ + g;
            return 0.25 * s * s + 0.5 * g * s + 1.0;
        };
        const auto seeds = num::cubic_roots_all_real(2.0, -K_, 2.0, d_);
        delta3_ = num::newton_polish(h, dh, 2.0 * seeds[2] - K_, 8);
        f3_ = 0.5 * (K_ + delta3_);

        const double sum12 = -0.5 * delta3_;
        const double prod12 = -0.5 * d_ / f3_;
        const double disc = sum12 * sum12 - 4.0 * prod12;
        if (!(disc > 0.0))
            throw precision_error("CubicCurve: lower diagonal roots degenerate");
        f2_ = 0.5 * (sum12 + std::sqrt(disc));
        f1_ = prod12 / f2_;
        f1_ = num::newton_polish(p, dp, f1_, 4);
        f2_ = num::newton_polish(p, dp, f2_, 4);
        if (f2_ > f3_) {
            std::swap(f2_, f3_);
            delta3_ = 2.0 * f3_ - K_;  // well conditioned here: only happens near K_m
        }

        const double scale = 1.0 + std::abs(K_) + d_;
        const double v_prod = f1_ * f2_ * f3_ + 0.5 * d_;
        const double v_pair = f1_ * f2_ + f2_ * f3_ + f3_ * f1_ - 1.0;
        const double v_sum = f1_ + f2_ + f3_ - 0.5 * K_;
        if (std::abs(v_prod) > 1e-10 * scale || std::abs(v_pair) > 1e-10 * scale ||
            std::abs(v_sum) > 1e-10 * scale)
            throw precision_error("CubicCurve: diagonal-point root extraction failed the "
                                  "symmetric-function check");
        if (!(-0.5 * d_ < f1_ && f1_ < 0.0 && 0.0 < f2_ && f2_ < ell_ && ell_ < f3_ &&
              f3_ < 0.5 * K_))
            throw precision_error("CubicCurve: diagonal points violate the ordering chain");
    }

    double d_, K_;
    double ell_, km_;
    double f1_, f2_, f3_, delta3_;
};

}  // namespace qrt
