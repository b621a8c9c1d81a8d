#pragma once

// Shared numerical kernels: AGM, adaptive Gauss-Kronrod quadrature,
// bracketed root finding. No domain knowledge lives here.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "qrt/errors.hpp"

namespace qrt::num {

/// Arithmetic-geometric mean of two positive numbers.
inline double agm(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw domain_error("agm: arguments must be positive");
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        if (std::abs(an - bn) <= 4.0 * std::numeric_limits<double>::epsilon() * an) {
            a = an;
            break;
        }
        a = an;
        b = bn;
    }
    return a;
}

namespace detail {

// Gauss-Kronrod 15(7) nodes and weights on [-1,1] (positive half; symmetric).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kGk15Weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Embedded 7-point Gauss weights, matching nodes 1, 3, 5, 7 above.
inline constexpr std::array<double, 4> kG7Weights = {0.129484966168870, 0.279705391489277,
                                                     0.381830050505119, 0.417959183673469};

template <class F>
struct GkPanel {
    double integral;
    double error;
};

template <class F>
GkPanel<F> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double ik = 0.0;
    double ig = 0.0;
    for (std::size_t i = 0; i < kGk15Nodes.size(); ++i) {
        const double x = kGk15Nodes[i];
        double v;
        if (x == 0.0) {
            v = f(c);
            ik += kGk15Weights[i] * v;
            ig += kG7Weights[3] * v;
        } else {
            const double v1 = f(c - h * x);
            const double v2 = f(c + h * x);
            v = v1 + v2;
            ik += kGk15Weights[i] * v;
            if (i % 2 == 1) ig += kG7Weights[i / 2] * v;
        }
    }
    ik *= h;
    ig *= h;
    const double diff = std::abs(ik - ig);
    // QUADPACK-style sharpened error estimate.
    const double err = diff > 0.0 ? diff * std::min(1.0, std::pow(200.0 * diff, 1.5)) : 0.0;
    return {ik, std::max(err, std::abs(ik) * std::numeric_limits<double>::epsilon() * 8.0)};
}

template <class F>
double adaptive_gk(F&& f, double a, double b, double tol, int depth) {
    const auto p = gk15(f, a, b);
    if (p.error <= tol || depth <= 0) return p.integral;
    const double c = 0.5 * (a + b);
    return adaptive_gk(f, a, c, 0.5 * tol, depth - 1) + adaptive_gk(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, int max_depth = 60) {
    if (a == b) return 0.0;
    return detail::adaptive_gk(f, a, b, tol, max_depth);
}

/// Adaptive quadrature over [a, b] with dyadic seed panels growing away
/// from a. Suited to integrands that vary on a logarithmic scale over a
/// long range (slow algebraic decay), where a single panel would force
/// very deep uniform refinement.
template <class F>
double integrate_dyadic(F&& f, double a, double b, double tol = 1e-12) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    double lo = a;
    double width = std::max(1.0, std::abs(a));
    while (lo < b) {
        const double hi = std::min(b, lo + width);
        total += integrate(f, lo, hi, tol);
        lo = hi;
        width *= 2.0;
    }
    return total;
}

/// Bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of opposite
/// sign. Returns the midpoint of the final interval.
template <class F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw precision_error("bisect: endpoints do not bracket a root");
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// A few Newton steps from x0; each step is accepted only while it keeps
/// improving the residual, so a bad derivative cannot spoil a bisection seed.
template <class F, class DF>
double newton_polish(F&& f, DF&& df, double x0, int iters = 4) {
    double x = x0;
    double r = std::abs(f(x));
    for (int i = 0; i < iters; ++i) {
        const double d = df(x);
        if (d == 0.0) break;
        const double xn = x - f(x) / d;
        if (!std::isfinite(xn)) break;
        const double rn = std::abs(f(xn));
        if (rn >= r) break;
        x = xn;
        r = rn;
    }
    return x;
}

/// Real roots of the cubic a t^3 + b t^2 + c t + e, all-real case assumed.
/// Returns roots in ascending order; polished by the caller as needed.
inline std::array<double, 3> cubic_roots_all_real(double a, double b, double c, double e) {
    const double b1 = b / a;
    const double c1 = c / a;
    const double e1 = e / a;
    const double p = c1 - b1 * b1 / 3.0;
    const double q = 2.0 * b1 * b1 * b1 / 27.0 - b1 * c1 / 3.0 + e1;
    if (!(p < 0.0)) throw precision_error("cubic_roots_all_real: no three-real-root regime");
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::min(1.0, std::max(-1.0, arg));
    const double phi = std::acos(arg);
    std::array<double, 3> r;
    for (int k = 0; k < 3; ++k)
        r[k] = m * std::cos((phi - 2.0 * M_PI * k) / 3.0) - b1 / 3.0;
    if (r[0] > r[1]) std::swap(r[0], r[1]);
    if (r[1] > r[2]) std::swap(r[1], r[2]);
    if (r[0] > r[1]) std::swap(r[0], r[1]);
    return r;
}

}  // namespace qrt::num
