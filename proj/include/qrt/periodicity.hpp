#pragma once

// Periodicity certificates tying the group law to the rotation number: a
// level is q-periodic iff the orbit of the oval probe closes after q steps
// AND the rotation number sits at a rational with denominator q. The pair of
// conditions guards against false positives from slow numerical drift.

#include <cmath>
#include <string>

#include "qrt/core_map.hpp"
#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"
#include "qrt/group_law.hpp"
#include "qrt/rotation.hpp"

namespace qrt {

struct PeriodCheck {
    bool periodic;
    double orbit_residual;    // distance between the probe and its q-th image
    double rotation_defect;   // distance of the rotation number to the nearest p/q
};

inline PeriodCheck is_periodic_level(const CubicCurve& c, unsigned q, double tol = 1e-9) {
    if (q < 1) throw domain_error("is_periodic_level: period must be at least 1");
    QrtMap map(c.d());
    const PlanePoint probe = c.probe_on_oval();
    PlanePoint m = probe;
    for (unsigned k = 0; k < q; ++k) m = map.apply(m);
    const double residual = distance(m, probe);

    const double theta = rotation_number(c.d(), c.K()).theta;
    const double scaled = theta * static_cast<double>(q);
    const double defect = std::abs(scaled - std::round(scaled)) / static_cast<double>(q);

    return {residual <= tol && defect <= tol, residual, defect};
}

/// The unique level K(d) on which every orbit is seven-periodic:
///
///   K(d) = (d^4 - d^2 - 1) / (d (1 - d^2)),
///
/// defined exactly for parameters strictly between 1 and the critical value.
/// The range check uses the independent closed form of the critical
/// parameter, not the locus formula itself.
inline double seven_period_level(double d) {
    const CriticalParameter cp = critical_parameter();
    if (!(d > 1.0 && d < cp.d0))
        throw domain_error("seven_period_level: parameter " + std::to_string(d) +
                           " outside the open interval (1, " + std::to_string(cp.d0) +
                           ") where the seven-period level exists");
    const double K = (d * d * d * d - d * d - 1.0) / (d * (1.0 - d * d));
    const double km = QrtMap(d).invariant_minimum();
    if (!(K > km))
        throw precision_error("seven_period_level: computed level fell below the minimum");
    return K;
}

}  // namespace qrt
