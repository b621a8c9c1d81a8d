#pragma once

// The two real finite inflection points of the invariant cubic. They are
// located on the normal form, where inflections of y = sqrt(P(x)) solve
// h = 2 P P'' - P'^2, and pulled back through the inverse transform.

#include <cmath>
#include <utility>

#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"
#include "qrt/numerics.hpp"
#include "qrt/transform.hpp"

namespace qrt {

/// Quartic whose largest real root is the abscissa of the two inflection
/// points of the unbounded branch of the normal form.
inline double inflection_quartic(const WeierstrassData& w, double x) {
    const double x2 = x * x;
    return 48.0 * x2 * x2 - 24.0 * w.g2 * x2 - 48.0 * w.g3 * x - w.g2 * w.g2;
}

/// Returns the pair (I, J): I in the second quadrant, J its mirror across
/// the diagonal; both lie on the x + y < 0 branch.
inline std::pair<PlanePoint, PlanePoint> inflection_points(const CubicCurve& c) {
    const WeierstrassMap phi(c);
    const WeierstrassData& w = phi.data();

    const auto h = [&w](double x) { return inflection_quartic(w, x); };
    const auto dh = [&w](double x) {
        return 192.0 * x * x * x - 48.0 * w.g2 * x - 48.0 * w.g3;
    };
    // h(e1) = -P'(e1)^2 < 0 and h -> +infinity, so the largest real root
    // lies to the right of e1; expand a bracket from there.
    double lo = w.e1;
    if (!(h(lo) < 0.0)) throw precision_error("inflection_points: quartic not negative at e1");
    double hi = std::max({2.0 * std::abs(w.e1), std::abs(w.e3), 1.0});
    int guard = 0;
    while (h(hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 300) throw precision_error("inflection_points: no sign change found");
    }
    double xh = num::bisect(h, lo, hi, 200);
    xh = num::newton_polish(h, dh, xh, 8);

    const double P = 4.0 * xh * xh * xh - w.g2 * xh - w.g3;
    if (!(P > 0.0)) throw precision_error("inflection_points: branch ordinate not real");
    const double Y = std::sqrt(P);

    const ProjPoint a = phi.from_weierstrass({xh, Y, 1.0}, 1e-7);
    const ProjPoint b = phi.from_weierstrass({xh, -Y, 1.0}, 1e-7);
    if (is_infinite(a) || is_infinite(b))
        throw precision_error("inflection_points: pullback landed at infinity");
    const PlanePoint pa = affine(a);
    const PlanePoint pb = affine(b);
    return (pa.y > pa.x) ? std::make_pair(pa, pb) : std::make_pair(pb, pa);
}

}  // namespace qrt
