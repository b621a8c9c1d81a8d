#pragma once

// Number-theoretic period feasibility: which integers can be minimal periods.
// Exact integer enumeration of irreducible fractions in (1/3, 1/2), the
// analytic bound certifying a usable prime in (q/3, q/2), the descending
// covering chain that settles every q >= 24, and the onset bound relative to
// the certified rotation-number interval. Prime logic is a deterministic
// sieve throughout; results are meant to be citable as certificates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qrt/errors.hpp"
#include "qrt/rotation.hpp"

namespace qrt {

class Sieve {
  public:
    explicit Sieve(std::uint64_t limit) : limit_(limit), composite_(limit + 1, 0) {
        if (limit < 2) return;
        composite_[0] = composite_[1] = 1;
        for (std::uint64_t i = 2; i * i <= limit; ++i)
            if (!composite_[i])
                for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = 1;
    }

    std::uint64_t limit() const { return limit_; }

    bool is_prime(std::uint64_t n) const {
        if (n > limit_) throw domain_error("Sieve: query beyond the sieved range");
        return n >= 2 && !composite_[n];
    }

    /// Least prime strictly greater than n.
    std::uint64_t next_prime_above(std::uint64_t n) const {
        for (std::uint64_t p = n + 1; p <= limit_; ++p)
            if (!composite_[p]) return p;
        throw domain_error("Sieve: no prime above " + std::to_string(n) + " within range");
    }

  private:
    std::uint64_t limit_;
    std::vector<std::uint8_t> composite_;
};

enum class PeriodStatus {
    Feasible,     // an irreducible p/q lies strictly inside (1/3, 1/2)
    Infeasible,   // no such fraction exists
    SpecialSeven  // only 3/7 itself: attained solely on the dedicated level locus
};

struct FeasibilityReport {
    unsigned q = 0;
    std::vector<unsigned> numerators;  // p with p/q irreducible in (1/3, 1/2)
    PeriodStatus status = PeriodStatus::Infeasible;
};

/// Exact enumeration of the numerators p in the open interval (q/3, q/2)
/// coprime to q. No floating arithmetic is involved.
inline FeasibilityReport feasible_fractions(unsigned q) {
    if (q < 2 || q > 10000000u)
        throw domain_error("feasible_fractions: q must lie in [2, 1e7]");
    FeasibilityReport rep;
    rep.q = q;
    for (unsigned p = q / 3; 2 * p < q; ++p) {
        if (3 * static_cast<std::uint64_t>(p) <= q) continue;  // strict p > q/3
        if (std::gcd(p, q) == 1) rep.numerators.push_back(p);
    }
    if (q == 7)
        rep.status = PeriodStatus::SpecialSeven;
    else
        rep.status = rep.numerators.empty() ? PeriodStatus::Infeasible : PeriodStatus::Feasible;
    return rep;
}

/// Analytic lower-bound proxy for the count of usable primes in (q/3, q/2):
/// positivity certifies that a prime p with p/q irreducible in (1/3, 1/2)
/// exists. Built from the two-sided prime-counting bounds valid from 52 on
/// and the bound 1.38402 log q / log log q on the number of distinct prime
/// factors.
inline double prime_reserve(unsigned q) {
    if (q < 52) throw domain_error("prime_reserve: defined for q >= 52 only");
    const double x = static_cast<double>(q);
    const double half = x / 2.0 - 1.0;
    const double third = x / 3.0;
    return half / std::log(half) -
           (1.0 + 1.5 / std::log(third)) * third / std::log(third) -
           1.38402 * std::log(x) / std::log(std::log(x)) - 1.0;
}

struct ChainLink {
    unsigned r;  // top of the interval this link certifies
    unsigned p;  // witness prime, strictly inside (q/3, q/2) for all q in [x, r]
    unsigned x;  // bottom of the certified interval, x = 2 (p + 1)
};

/// Descending chain of certified intervals [x, r]: p is the least prime
/// above ceil(r/3) and x = 2 (p + 1), so p lies strictly inside (q/3, q/2)
/// for every q in [x, r] and cannot divide such a q. Each next link starts
/// at r = x - 1; the chain stops once x reaches 24, the lowest value a link
/// can certify (from r = 23 the construction would no longer descend).
inline std::vector<ChainLink> covering_chain(unsigned start) {
    if (start < 30) throw domain_error("covering_chain: start must be at least 30");
    const Sieve sieve(start);
    std::vector<ChainLink> chain;
    unsigned r = start;
    for (;;) {
        const unsigned ceil_third = (r + 2) / 3;
        const unsigned p = static_cast<unsigned>(sieve.next_prime_above(ceil_third));
        const unsigned x = 2 * (p + 1);
        if (x > r)
            throw precision_error("covering_chain: link failed to descend at r = " +
                                  std::to_string(r));
        chain.push_back({r, p, x});
        if (x <= 24) break;
        r = x - 1;
    }
    return chain;
}

/// Upper-bound certificate for the onset of guaranteed minimal periods,
/// relative to the certified rotation-number interval between 3/7 and the
/// minimum-level limit: returns 1 + max{ q <= qmax without a witness prime
/// strictly inside (q a, q b) }. Witness comparisons carry a 1e-12 guard
/// band; fractions inside the band are conservatively excluded.
inline unsigned estimate_min_period_onset(double d, unsigned qmax) {
    if (qmax < 100) throw domain_error("estimate_min_period_onset: qmax must be at least 100");
    const double tm = rotation_number_at_minimum(d);
    const double a = std::min(3.0 / 7.0, tm);
    const double b = std::max(3.0 / 7.0, tm);
    if (b - a < 1e-9)
        throw domain_error("estimate_min_period_onset: certified interval is empty at this "
                           "parameter");
    const Sieve sieve(qmax);
    unsigned worst = 2;
    for (unsigned q = 2; q <= qmax; ++q) {
        bool witness = false;
        const auto lo = static_cast<std::uint64_t>(std::floor(a * q));
        const auto hi = static_cast<std::uint64_t>(std::ceil(b * q));
        for (std::uint64_t p = std::max<std::uint64_t>(2, lo); p <= hi && p <= qmax; ++p) {
            if (!sieve.is_prime(p)) continue;
            const double frac = static_cast<double>(p) / q;
            if (frac <= a + 1e-12 || frac >= b - 1e-12) continue;
            if (q % p == 0) continue;
            witness = true;
            break;
        }
        if (!witness) worst = q;
    }
    return worst + 1;
}

struct PeriodTableRow {
    unsigned q;
    bool minimal_period;  // attainable as a minimal period for some parameter
    PeriodStatus status;
    std::vector<unsigned> numerators;
};

/// The settled table for q between 2 and 10: feasibility by enumeration,
/// with seven carried by its dedicated level locus.
inline std::vector<PeriodTableRow> period_table() {
    std::vector<PeriodTableRow> rows;
    for (unsigned q = 2; q <= 10; ++q) {
        FeasibilityReport rep = feasible_fractions(q);
        rows.push_back({q, rep.status != PeriodStatus::Infeasible, rep.status,
                        std::move(rep.numerators)});
    }
    return rows;
}

}  // namespace qrt
