#pragma once

// Projective change of variables carrying the invariant cubic onto the
// Weierstrass normal form
//
//   Y^2 T = 4 X^3 - g2 X T^2 - g3 T^3,
//
// together with every derived constant the rotation-number integrals need
// (branch abscissas e1 > e2 > e3, the shifted translation abscissa X(K), and
// the two integral parameters nu and eps).

#include <array>
#include <cmath>
#include <string>

#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"

namespace qrt {

struct GammaPoint {
    double X = 0.0;
    double Y = 0.0;
    double T = 1.0;
};

struct WeierstrassData {
    double A;        // K^3 - 8K - 12d, the depressed-cubic shift
    double lambda;   // K^{-3/2}
    double mu;       // 2 (K + d) K^{-3/2}
    double g2;
    double g3;
    double e1, e2, e3;  // X-axis abscissas, e3 < e2 < e1
    double XK;          // abscissa of the normalized translation point
    double nu;          // XK - e1 > 0
    double eps;         // (e1 - e2) / (e1 - e3), in (0, 1)
    double eps_c;       // 1 - eps, computed without cancellation
    double e13;         // e1 - e3, computed without cancellation
    double u_limit;     // sqrt(e13 / nu), upper limit of the bounded integral
};

namespace detail {

using Mat3 = std::array<double, 9>;  // row-major

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            c[3 * i + j] = a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
    return c;
}

inline Mat3 mat_adjugate(const Mat3& m) {
    return {m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8], m[1] * m[5] - m[2] * m[4],
            m[5] * m[6] - m[3] * m[8], m[0] * m[8] - m[2] * m[6], m[2] * m[3] - m[0] * m[5],
            m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7], m[0] * m[4] - m[1] * m[3]};
}

inline ProjPoint mat_apply(const Mat3& m, ProjPoint p) {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.t,
            m[3] * p.x + m[4] * p.y + m[5] * p.t,
            m[6] * p.x + m[7] * p.y + m[8] * p.t};
}

}  // namespace detail

class WeierstrassMap {
  public:
    explicit WeierstrassMap(const CubicCurve& c) : curve_(c) {
        const double d = c.d();
        const double K = c.K();
        k32_ = K * std::sqrt(K);  // computed once, shared by every formula below
        const double k32 = k32_;
        const auto [f1, f2, f3] = c.diagonal_points();
        const double delta3 = c.f3_gap();

        w_.A = K * K * K - 8.0 * K - 12.0 * d;
        w_.lambda = 1.0 / k32;
        w_.mu = 2.0 * (K + d) / k32;

        const double a12 = w_.A / 12.0;
        const double q1 = 2.0 * f1 - K;
        const double q2 = 2.0 * f2 - K;
        w_.e1 = 2.0 * (K + d) * f1 / q1 + a12;
        w_.e2 = 2.0 * (K + d) * f2 / q2 + a12;
        w_.e3 = 2.0 * (K + d) * f3 / delta3 + a12;

        // Differences of the e's collapse to products, which avoids the
        // catastrophic cancellation of the naive subtraction at large K
        // (where the stored absolute values may not even resolve the order
        // within one ulp):
        //   e_i - e_j = 2 K (K + d) (f_j - f_i) / ((2f_i - K)(2f_j - K)).
        const double common = 2.0 * K * (K + d);
        const double e12 = common * (f2 - f1) / (q1 * q2);
        w_.e13 = common * (f3 - f1) / (q1 * delta3);
        const double e23 = common * (f3 - f2) / (q2 * delta3);
        if (!(e12 > 0.0 && e23 > 0.0 && w_.e13 > 0.0))
            throw precision_error("WeierstrassMap: branch abscissas out of order");
        w_.eps = e12 / w_.e13;
        w_.eps_c = e23 / w_.e13;
        if (!(w_.eps > 0.0 && w_.eps < 1.0))
            throw precision_error("WeierstrassMap: eps outside (0,1)");

        w_.XK = K * K * K / 12.0 - 2.0 * K / 3.0;
        // XK - e1 simplifies exactly to d - 2 (K + d) f1 / (2 f1 - K).
        w_.nu = d - 2.0 * (K + d) * f1 / q1;
        if (!(w_.nu > 0.0)) throw precision_error("WeierstrassMap: nu must be positive");
        w_.u_limit = std::sqrt(w_.e13 / w_.nu);

        w_.g2 = (1.0 / 12.0) *
                (K * K * K * K * K * K - 16.0 * K * K * K * K - 24.0 * d * K * K * K +
                 16.0 * K * K);
        const double g2_check = -4.0 * (w_.e1 * w_.e2 + w_.e1 * w_.e3 + w_.e2 * w_.e3);
        if (std::abs(w_.g2 - g2_check) > 1e-9 * (1.0 + std::abs(w_.g2)))
            throw precision_error("WeierstrassMap: g2 closed form disagrees with the abscissas");
        w_.g3 = 4.0 * w_.e1 * w_.e2 * w_.e3;

        // phi = T3 . T2 . T1 in homogeneous coordinates.
        const detail::Mat3 t1 = {0.5, 0.5, 0.0, -0.5, 0.5, 0.0, 1.0, 1.0, -K};
        const detail::Mat3 t2 = {k32, 0, 0, 0, K * K * K, 0, 0, 0, k32 / (2.0 * (K + d))};
        const detail::Mat3 t3 = {1.0, 0.0, a12, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
        fwd_ = detail::mat_mul(t3, detail::mat_mul(t2, t1));
        inv_ = detail::mat_adjugate(fwd_);
    }

    const CubicCurve& curve() const { return curve_; }
    const WeierstrassData& data() const { return w_; }

    double gamma_residual_raw(GammaPoint q) const {
        return q.Y * q.Y * q.T - 4.0 * q.X * q.X * q.X + w_.g2 * q.X * q.T * q.T +
               w_.g3 * q.T * q.T * q.T;
    }

    double gamma_residual(GammaPoint q) const {
        const double m = std::max({std::abs(q.X), std::abs(q.Y), std::abs(q.T)});
        const double scale = 1.0 + m * m * m + std::abs(w_.g2) * m * m + std::abs(w_.g3);
        return std::abs(gamma_residual_raw(q)) / scale;
    }

    bool gamma_contains(GammaPoint q, double tol = 1e-9) const {
        return gamma_residual(q) <= tol;
    }

    GammaPoint to_weierstrass(ProjPoint p, double tol = 1e-9) const {
        const double r = curve_.residual(p);
        if (r > tol)
            throw domain_error("to_weierstrass: point not on the cubic (scaled residual " +
                               std::to_string(r) + ")");
        const ProjPoint q = detail::mat_apply(fwd_, p);
        const ProjPoint n = gnormalized(q);
        return {n.x, n.y, n.t};
    }

    ProjPoint from_weierstrass(GammaPoint q, double tol = 1e-9) const {
        const double r = gamma_residual(q);
        if (r > tol)
            throw domain_error("from_weierstrass: point not on the normal form (scaled "
                               "residual " + std::to_string(r) + ")");
        return normalized(detail::mat_apply(inv_, {q.X, q.Y, q.T}));
    }

    /// Image of the map's translation point after the group-law normalization:
    /// (K^3/12 - 2K/3, d K^{3/2}, 1). Its abscissa is X(K).
    GammaPoint translation_image() const { return {w_.XK, curve_.d() * k32_, 1.0}; }

  private:
    // Same canonical rule as normalized(), but leaving the Weierstrass-side
    // coordinates unscaled when finite (they carry magnitudes up to K^3).
    static ProjPoint gnormalized(ProjPoint p) {
        const double ax = std::abs(p.x), ay = std::abs(p.y), at = std::abs(p.t);
        const double m = std::max({ax, ay, at});
        if (m == 0.0) throw precision_error("WeierstrassMap: zero image triple");
        if (at > 1e-14 * m) return {p.x / p.t, p.y / p.t, 1.0};
        const double s = (ax >= ay) ? p.x : p.y;
        return {p.x / s, p.y / s, 0.0};
    }

    CubicCurve curve_;
    WeierstrassData w_;
    double k32_;
    detail::Mat3 fwd_;
    detail::Mat3 inv_;
};

}  // namespace qrt
