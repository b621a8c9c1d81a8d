#pragma once

// Chord-tangent geometry on the invariant cubic: the third-intersection
// operation, the addition law whose zero element is the vertical infinite
// point, the projective extension of the map, and multiples of the
// horizontal infinite point (the group translation realized by one step).

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"

namespace qrt {

namespace detail {

inline double dot3(const std::array<double, 3>& a, ProjPoint p) {
    return a[0] * p.x + a[1] * p.y + a[2] * p.t;
}

inline std::array<double, 3> cross3(const std::array<double, 3>& a,
                                    const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm3(const std::array<double, 3>& a) {
    return std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]);
}

inline std::array<double, 3> as_array(ProjPoint p) { return {p.x, p.y, p.t}; }

// Newton refinement of r along the line spanned by p and q: drives the
// cubic's residual at r to rounding level while keeping r exactly on the
// line. Skipped when the line direction is tangential at r (double root),
// where no improvement along the line is possible.
inline ProjPoint polish_on_line(const CubicCurve& c, ProjPoint r, ProjPoint p, ProjPoint q) {
    for (const ProjPoint dir : {p, q}) {
        for (int it = 0; it < 2; ++it) {
            const double slope = dot3(c.gradient(r), dir);
            const double scale = norm3(c.gradient(r)) * norm3(as_array(dir));
            if (std::abs(slope) <= 1e-10 * scale) break;
            const double step = c.residual_raw(r) / slope;
            const ProjPoint next{r.x - step * dir.x, r.y - step * dir.y, r.t - step * dir.t};
            if (std::abs(c.residual_raw(next)) >= std::abs(c.residual_raw(r))) break;
            r = next;
        }
    }
    return r;
}

// A point of the tangent line (given by its coefficient triple) that is as
// independent as possible from the tangency point.
inline ProjPoint line_point_away_from(const std::array<double, 3>& line, ProjPoint p) {
    const std::array<double, 3> basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::array<double, 3> best{};
    double best_sep = -1.0;
    for (const auto& e : basis) {
        const auto cand = cross3(line, e);
        const double len = norm3(cand);
        if (len == 0.0) continue;
        const auto sep = cross3(cand, as_array(p));
        const double independence = norm3(sep) / (len * norm3(as_array(p)));
        if (independence > best_sep) {
            best_sep = independence;
            best = cand;
        }
    }
    if (best_sep <= 1e-14)
        throw precision_error("third_intersection: could not span the tangent line");
    return {best[0], best[1], best[2]};
}

}  // namespace detail

/// Third point of the cubic on the line through p and q (tangent when the
/// points coincide). The restriction of the cubic to the line has the two
/// known roots, so the third follows from the symmetric functions of the
/// restricted polynomial; infinite points need no special casing in
/// homogeneous coordinates.
inline ProjPoint third_intersection(const CubicCurve& c, ProjPoint p, ProjPoint q,
                                    double tol = 1e-8) {
    p = normalized(p);
    q = normalized(q);
    const double rp = c.residual(p);
    const double rq = c.residual(q);
    if (rp > tol || rq > tol)
        throw domain_error("third_intersection: inputs must lie on the curve (residuals " +
                           std::to_string(rp) + ", " + std::to_string(rq) + ")");

    ProjPoint r;
    if (proj_distance(p, q) < 1e-10) {
        // Tangent case, the line being the gradient at p. The restricted
        // cubic has a double root at p; the remaining root is linear in the
        // value and polarized derivative at any second point of the line.
        const auto line = c.gradient(p);
        const ProjPoint s = detail::line_point_away_from(line, p);
        const double a0 = c.residual_raw(s);
        const double a1 = detail::dot3(c.gradient(s), p);
        r = {a0 * p.x - a1 * s.x, a0 * p.y - a1 * s.y, a0 * p.t - a1 * s.t};
        if (std::abs(a0) + std::abs(a1) == 0.0)
            throw precision_error("third_intersection: degenerate tangent restriction");
        r = detail::polish_on_line(c, normalized(r), p, s);
    } else {
        const double a2 = detail::dot3(c.gradient(p), q);
        const double a1 = detail::dot3(c.gradient(q), p);
        r = {a1 * p.x - a2 * q.x, a1 * p.y - a2 * q.y, a1 * p.t - a2 * q.t};
        const double in_scale = (std::abs(a1) + std::abs(a2)) *
                                (detail::norm3(detail::as_array(p)) +
                                 detail::norm3(detail::as_array(q)));
        if (detail::norm3(detail::as_array(r)) <= 1e-14 * (1.0 + in_scale))
            throw precision_error("third_intersection: numerically degenerate line");
        r = detail::polish_on_line(c, normalized(r), p, q);
    }
    const ProjPoint out = normalized(r);
    if (c.residual(out) > 1e-6)
        throw precision_error("third_intersection: result drifted off the curve");
    return out;
}

/// Chord-tangent addition with the vertical infinite point as zero element.
inline ProjPoint add_points(const CubicCurve& c, ProjPoint p, ProjPoint q, double tol = 1e-8) {
    const ProjPoint v = c.special_points().vert_inf;
    return third_intersection(c, third_intersection(c, p, q, tol), v, tol);
}

/// Group negative: the third intersection with the y-axis cut.
inline ProjPoint negate_point(const CubicCurve& c, ProjPoint p, double tol = 1e-8) {
    return third_intersection(c, p, c.special_points().y_cut, tol);
}

/// Polynomial extension of the forward map to the whole projective curve:
///   (x, y, t) -> ( t (y + d t)^2,  x (d x y + y t + d t^2),  x y (y + d t) ).
/// The two infinite points on the axes are base points of this
/// representation (all three forms vanish); they raise a precision error.
inline ProjPoint map_projective(const CubicCurve& c, ProjPoint p, double tol = 1e-8) {
    p = normalized(p);
    if (c.residual(p) > tol)
        throw domain_error("map_projective: input must lie on the curve");
    const double d = c.d();
    const double w = p.y + d * p.t;
    const ProjPoint img{p.t * w * w,
                        p.x * (d * p.x * p.y + p.y * p.t + d * p.t * p.t),
                        p.x * p.y * w};
    const double m = std::max({std::abs(img.x), std::abs(img.y), std::abs(img.t)});
    if (m <= 1e-12 * (1.0 + d) * (1.0 + d))
        throw precision_error("map_projective: image collapsed (base point of the formula)");
    const ProjPoint out = normalized(img);
    if (c.residual(out) > 1e-6)
        throw precision_error("map_projective: image drifted off the curve");
    return out;
}

/// n-th multiple of the horizontal infinite point in the addition law (the
/// displacement accumulated by n forward steps). Repeated addition with
/// renormalization at every step; negatives via the group negative.
inline ProjPoint step_multiple(const CubicCurve& c, long long n) {
    if (std::llabs(n) > 1000000LL)
        throw domain_error("step_multiple: |n| must not exceed 1e6");
    const SpecialPoints sp = c.special_points();
    if (n == 0) return sp.vert_inf;
    const unsigned long long count = static_cast<unsigned long long>(std::llabs(n));
    ProjPoint r = sp.horiz_inf;
    for (unsigned long long k = 1; k < count; ++k) {
        r = add_points(c, r, sp.horiz_inf);
        if (c.residual(r) > 1e-6)
            throw precision_error("step_multiple: accumulated residual beyond 1e-6 at step " +
                                  std::to_string(k + 1));
    }
    return (n > 0) ? r : negate_point(c, r);
}

}  // namespace qrt
