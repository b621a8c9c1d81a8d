#pragma once

// Rotation number of the map on the positive oval, via the elliptic-integral
// quotient; its two limits; the empirical winding estimator; level search;
// half periods and the Weierstrass function of the associated lattice.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qrt/core_map.hpp"
#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"
#include "qrt/numerics.hpp"
#include "qrt/transform.hpp"

namespace qrt {

struct RotationResult {
    double theta;                 // in (0, 1/2)
    double numerator_integral;    // bounded integral up to u_limit
    double denominator_integral;  // complete integral
    double eps;
    double u_limit;
};

struct HalfPeriods {
    double omega1;  // real half period
    double omega2;  // magnitude of the imaginary half period
};

struct WindingResult {
    double theta;      // folded into (0, 1/2)
    double std_error;  // wrap-count resolution, ~1/n
    double raw_turns;  // signed average turn per step, counterclockwise positive
};

namespace detail {

inline double rotation_integrand(double u, double eps) {
    return 1.0 / std::sqrt((1.0 + u * u) * (1.0 + eps * u * u));
}

/// Complete integral: int_0^inf du / sqrt((1+u^2)(1+eps u^2)).
inline double complete_integral(double eps) {
    return M_PI / (2.0 * num::agm(1.0, std::sqrt(eps)));
}

/// Bounded integral over [0, ulim] of the same integrand. Dyadic panels track
/// the 1/u decay range; each panel is handled adaptively.
inline double bounded_integral(double eps, double ulim, double tol = 1e-12) {
    return num::integrate_dyadic([eps](double u) { return rotation_integrand(u, eps); }, 0.0,
                                 ulim, tol);
}

}  // namespace detail

/// Rotation number of the map restricted to the positive oval at level K.
/// Levels closer than 1e-6 to the minimum are refused: the branch abscissas
/// collide there and the result would be noise.
inline RotationResult rotation_number(double d, double K) {
    CubicCurve c(d, K);
    if (K - c.k_min() < 1e-6)
        throw precision_error("rotation_number: level within 1e-6 of the invariant minimum");
    const WeierstrassMap phi(c);
    const WeierstrassData& w = phi.data();
    if (!(w.eps > 0.0 && w.eps < 1.0))
        throw precision_error("rotation_number: integral parameter outside (0,1)");
    const double den = detail::complete_integral(w.eps);
    const double num = detail::bounded_integral(w.eps, w.u_limit);
    const double theta = num / (2.0 * den);
    if (!(theta > 0.0 && theta < 0.5))
        throw precision_error("rotation_number: value escaped (0, 1/2)");
    return {theta, num, den, w.eps, w.u_limit};
}

/// Limit of the rotation number as the level descends to the minimum:
/// (1/pi) arccos((ell^2 - 1) / (2 ell^2)), decreasing in d from 1/2 to 1/3.
inline double rotation_number_at_minimum(double d) {
    const double ell = QrtMap(d).fixed_point();
    return std::acos((ell * ell - 1.0) / (2.0 * ell * ell)) / M_PI;
}

struct CriticalParameter {
    double d0;    // parameter where the minimum-limit equals 3/7
    double ell0;  // fixed-point coordinate there
};

/// Closed form of the boundary parameter of the seven-period regime.
inline CriticalParameter critical_parameter() {
    const double s = std::sin(M_PI / 14.0);
    const double w = 1.0 - 2.0 * s;
    return {2.0 * s / (w * std::sqrt(w)), 1.0 / std::sqrt(w)};
}

/// Empirical winding fraction of the orbit started at the oval probe point:
/// accumulates the angle swept around the equilibrium, one full-turn count
/// per revolution, and folds the result into (0, 1/2). The sweep direction
/// is consistent along the orbit, so each step contributes its positive
/// counterclockwise representative; a clockwise rotation simply accumulates
/// the complementary fraction and is recovered by the fold.
inline WindingResult winding_estimate(double d, double K, std::size_t n) {
    if (n < 1000) throw domain_error("winding_estimate: need at least 1000 iterates");
    CubicCurve c(d, K);
    QrtMap map(d);
    const double ell = c.ell();
    PlanePoint m = c.probe_on_oval();
    double prev = std::atan2(m.y - ell, m.x - ell);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        m = map.apply(m);
        if (!(m.x > 0.0 && m.y > 0.0))
            throw precision_error("winding_estimate: orbit left the positive quadrant");
        const double a = std::atan2(m.y - ell, m.x - ell);
        double step = a - prev;
        step -= 2.0 * M_PI * std::floor(step / (2.0 * M_PI));  // into [0, 2pi)
        total += step;
        prev = a;
    }
    const double ccw_fraction = total / (2.0 * M_PI * static_cast<double>(n));
    const double folded = ccw_fraction > 0.5 ? 1.0 - ccw_fraction : ccw_fraction;
    const double raw = ccw_fraction > 0.5 ? ccw_fraction - 1.0 : ccw_fraction;
    return {folded, 1.0 / static_cast<double>(n), raw};
}

/// All levels in (K_m, Kmax] where the rotation number equals p/q, located by
/// a sign-change scan over a 1000-point grid followed by bisection. The list
/// may be empty (target outside the image) and, near extrema of the rotation
/// number, touch-without-crossing levels can be missed.
inline std::vector<double> levels_for_rotation(double d, long p, long q, double Kmax) {
    if (q <= 0 || p <= 0) throw domain_error("levels_for_rotation: target must be positive");
    const double target = static_cast<double>(p) / static_cast<double>(q);
    if (!(target > 0.0 && target < 0.5))
        throw domain_error("levels_for_rotation: target outside (0, 1/2)");
    const double km = QrtMap(d).invariant_minimum();
    if (!(Kmax > km + 1e-3)) throw domain_error("levels_for_rotation: Kmax too close to K_m");

    constexpr int kGrid = 1000;
    const double lo_gap = 1e-3;
    const double hi_gap = Kmax - km;
    std::vector<double> gaps(kGrid);
    std::vector<double> vals(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double t = static_cast<double>(i) / (kGrid - 1);
        gaps[i] = lo_gap * std::pow(hi_gap / lo_gap, t);
        vals[i] = rotation_number(d, km + gaps[i]).theta - target;
    }
    std::vector<double> out;
    for (int i = 0; i + 1 < kGrid; ++i) {
        if (vals[i] == 0.0) {
            out.push_back(km + gaps[i]);
            continue;
        }
        if ((vals[i] > 0.0) == (vals[i + 1] > 0.0)) continue;
        double a = gaps[i], fa = vals[i];
        double b = gaps[i + 1];
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            const double fm = rotation_number(d, km + mid).theta - target;
            if (fm == 0.0) {
                a = b = mid;
                break;
            }
            if ((fm > 0.0) == (fa > 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        const double K = km + 0.5 * (a + b);
        if (std::abs(rotation_number(d, K).theta - target) <= 1e-10) out.push_back(K);
    }
    return out;
}

/// Half periods of the lattice attached to level K.
inline HalfPeriods half_periods(double d, double K) {
    CubicCurve c(d, K);
    if (K - c.k_min() < 1e-6)
        throw precision_error("half_periods: level within 1e-6 of the invariant minimum");
    const WeierstrassMap phi(c);
    const WeierstrassData& w = phi.data();
    const double sq = std::sqrt(w.e13);
    const double omega1 = detail::complete_integral(w.eps) / sq;
    const double omega2 = M_PI / (2.0 * num::agm(1.0, std::sqrt(w.eps_c))) / sq;
    if (!(omega1 > 0.0 && std::isfinite(omega1) && omega2 > 0.0 && std::isfinite(omega2)))
        throw precision_error("half_periods: degenerate period values");
    return {omega1, omega2};
}

struct WeierstrassValue {
    std::complex<double> p;        // value of the function
    std::complex<double> p_prime;  // derivative
    double tail_bound;             // bound on the truncation remainder
};

/// Truncated lattice sum for the Weierstrass function over
/// Lambda = { 2 p omega1 + 2 i q omega2 }. Terms are paired as (lambda,
/// -lambda) and the slowly convergent quartic/sextic parts of the tail are
/// replaced by their exact lattice sums g2/60 and g3/140, leaving a
/// remainder that falls off like N^{-5}; the stated bound covers it.
inline WeierstrassValue weierstrass_p(double d, double K, std::complex<double> z, int trunc = 60) {
    if (trunc < 20) throw domain_error("weierstrass_p: truncation must be at least 20");
    const HalfPeriods hp = half_periods(d, K);
    const CubicCurve c(d, K);
    const WeierstrassMap phi(c);
    const WeierstrassData& w = phi.data();

    const double px = 2.0 * hp.omega1;
    const double py = 2.0 * hp.omega2;
    const double nearest_x = px * std::round(z.real() / px);
    const double nearest_y = py * std::round(z.imag() / py);
    if (std::abs(z - std::complex<double>(nearest_x, nearest_y)) < 1e-6)
        throw domain_error("weierstrass_p: evaluation point too close to a lattice point");

    using C = std::complex<double>;
    const C z2 = z * z;
    C sum_p = 1.0 / z2;
    C sum_dp = -2.0 / (z2 * z);
    C s4 = 0.0;
    C s6 = 0.0;
    // Half lattice: p = 0 with q > 0, and p > 0 with any q; each entry
    // accounts for the pair (lambda, -lambda).
    for (int ip = 0; ip <= trunc; ++ip) {
        const int q_lo = (ip == 0) ? 1 : -trunc;
        for (int iq = q_lo; iq <= trunc; ++iq) {
            if (ip == 0 && iq == 0) continue;
            const C lam(px * ip, py * iq);
            const C lam2 = lam * lam;
            const C a = 1.0 / (z - lam);
            const C b = 1.0 / (z + lam);
            sum_p += a * a + b * b - 2.0 / lam2;
            sum_dp += -2.0 * (a * a * a + b * b * b);
            const C inv4 = 1.0 / (lam2 * lam2);
            s4 += 2.0 * inv4;
            s6 += 2.0 * inv4 / lam2;
        }
    }
    // Pair expansion of the tail: each omitted pair contributes
    // 6 z^2 / lam^4 + 10 z^4 / lam^6 + O(z^6 / lam^8); summing the quartic
    // and sextic parts over pairs is half the full-lattice sums g2/60 and
    // g3/140, of which the truncated parts s4, s6 are already in hand.
    const C t4 = 0.5 * (w.g2 / 60.0 - s4);
    const C t6 = 0.5 * (w.g3 / 140.0 - s6);
    sum_p += 6.0 * z2 * t4 + 10.0 * z2 * z2 * t6;
    sum_dp += 12.0 * z * t4 + 40.0 * z2 * z * t6;

    const double cell = px * py;
    const double radius = std::min(px, py) * (trunc + 0.5);
    const double tail8 = (2.0 * M_PI / cell) / (6.0 * std::pow(radius, 6.0));
    const double bound = 4.0 * 7.0 * std::pow(std::abs(z), 6.0) * tail8;
    return {sum_p, sum_dp, bound};
}

struct AsymptoticRatio {
    double eps;
    double n_ratio;  // bounded integral over its logarithmic equivalent
    double d_ratio;  // complete integral over its logarithmic equivalent
};

/// Ratios of both integrals to their small-eps logarithmic equivalents,
/// with the bounded integral cut at eps^{-beta}. Both ratios approach 1.
inline std::vector<AsymptoticRatio> asymptotic_ratios(const std::vector<double>& eps_list,
                                                      double beta) {
    if (!(beta > 0.0 && beta < 0.5)) throw domain_error("asymptotic_ratios: beta outside (0, 1/2)");
    std::vector<AsymptoticRatio> out;
    out.reserve(eps_list.size());
    for (const double eps : eps_list) {
        if (!(eps > 0.0 && eps < 1e-2))
            throw domain_error("asymptotic_ratios: eps must lie in (0, 1e-2)");
        const double log_term = std::log(1.0 / eps);
        const double den = detail::complete_integral(eps);
        const double num = detail::bounded_integral(eps, std::pow(eps, -beta));
        out.push_back({eps, num / (beta * log_term), den / (0.5 * log_term)});
    }
    return out;
}

/// Root near 1.073 of the order-three symmetry condition: starting from
/// (1, 1), three forward steps give (u3, v3), and the root solves
/// u3 v3^2 - v3 - d = 0. Its separation from the critical parameter shows
/// seven is never a period shared by every level.
inline double seven_period_global_obstruction() {
    const auto g = [](double d) {
        QrtMap m(d);
        PlanePoint p{1.0, 1.0};
        for (int i = 0; i < 3; ++i) p = m.apply(p);
        return p.x * p.y * p.y - p.y - d;
    };
    const double root = num::bisect(g, 1.0 + 1e-9, 1.2, 200);
    return root;
}

}  // namespace qrt
