#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "qrt/periods.hpp"

using namespace qrt;

TEST_CASE("feasible fractions: small reference cases") {
    const FeasibilityReport r5 = feasible_fractions(5);
    CHECK(r5.numerators == std::vector<unsigned>{2});
    CHECK(r5.status == PeriodStatus::Feasible);

    const FeasibilityReport r6 = feasible_fractions(6);
    CHECK(r6.numerators.empty());
    CHECK(r6.status == PeriodStatus::Infeasible);

    const FeasibilityReport r7 = feasible_fractions(7);
    CHECK(r7.numerators == std::vector<unsigned>{3});
    CHECK(r7.status == PeriodStatus::SpecialSeven);

    CHECK_THROWS_AS(feasible_fractions(1), domain_error);
    CHECK_THROWS_AS(feasible_fractions(10000001u), domain_error);
}

TEST_CASE("feasible fractions agree with a brute-force scan up to 1e4") {
    for (unsigned q = 2; q <= 10000; ++q) {
        // Independent oracle: test every p directly against 3p > q, 2p < q.
        std::vector<unsigned> expect;
        for (unsigned p = 1; p < q; ++p)
            if (3 * p > q && 2 * p < q && std::gcd(p, q) == 1) expect.push_back(p);
        const FeasibilityReport rep = feasible_fractions(q);
        REQUIRE(rep.numerators == expect);
        if (q == 7) {
            CHECK(rep.status == PeriodStatus::SpecialSeven);
        } else {
            CHECK(rep.status ==
                  (expect.empty() ? PeriodStatus::Infeasible : PeriodStatus::Feasible));
        }
    }
}

TEST_CASE("prime-reserve bound: sign change at 780/781 and positivity through 2500") {
    CHECK(prime_reserve(780) < 0.0);
    CHECK(prime_reserve(781) > 0.0);
    for (unsigned q = 781; q <= 2500; ++q) CHECK(prime_reserve(q) > 0.0);
    CHECK_THROWS_AS(prime_reserve(51), domain_error);
}

TEST_CASE("covering chain from 780: published breakpoints and full coverage") {
    const auto chain = covering_chain(780);
    REQUIRE(chain.size() >= 2);
    CHECK(chain[0].r == 780);
    CHECK(chain[0].p == 263);
    CHECK(chain[0].x == 528);
    CHECK(chain[1].r == 527);
    CHECK(chain[1].p == 179);
    CHECK(chain[1].x == 360);

    // Interval bookkeeping: the witness sits strictly inside (r/3, x/2),
    // links descend, and consecutive intervals tile without gaps.
    const Sieve sieve(800);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto [r, p, x] = chain[i];
        CHECK(sieve.is_prime(p));
        CHECK(3 * p > r);
        CHECK(p == x / 2 - 1);
        CHECK(x <= r);
        if (i + 1 < chain.size()) CHECK(chain[i + 1].r == x - 1);
    }
    CHECK(chain.back().x <= 30);
    CHECK(chain.back().x == 24);  // every q >= 24 ends up certified

    CHECK_THROWS_AS(covering_chain(29), domain_error);
    const auto tiny = covering_chain(30);
    CHECK(tiny.size() == 1);
    CHECK(tiny[0].p == 11);
    CHECK(tiny[0].x == 24);
}

TEST_CASE("covering chain certifies every q in [24, 780] via its own witness") {
    const auto chain = covering_chain(780);
    for (const auto& link : chain) {
        for (unsigned q = link.x; q <= link.r; q += 7) {  // sampled stride
            CHECK(3 * link.p > q);
            CHECK(2 * link.p < q);
            CHECK(q % link.p != 0);
        }
    }
}

TEST_CASE("onset bound: witnesses exist above it, none at the bound itself") {
    const unsigned qmax = 2000;
    const unsigned onset = estimate_min_period_onset(6.0, qmax);
    CHECK(onset > 2);
    CHECK(onset <= qmax);

    const double tm = rotation_number_at_minimum(6.0);
    const double a = std::min(3.0 / 7.0, tm);
    const double b = std::max(3.0 / 7.0, tm);
    const Sieve sieve(qmax);
    const auto has_witness = [&](unsigned q) {
        for (std::uint64_t p = 2; p <= qmax; ++p) {
            if (!sieve.is_prime(p)) continue;
            const double frac = static_cast<double>(p) / q;
            if (frac > a + 1e-12 && frac < b - 1e-12 && q % p != 0) return true;
        }
        return false;
    };
    CHECK(!has_witness(onset - 1));
    for (unsigned q = onset; q <= qmax; ++q) CHECK(has_witness(q));
}

TEST_CASE("onset bound shrinks as the certified interval widens") {
    // Interval endpoints: 3/7 against the minimum-level limit; the gap grows
    // with d on this range, so the intervals nest.
    const unsigned n2 = estimate_min_period_onset(2.0, 1500);
    const unsigned n6 = estimate_min_period_onset(6.0, 1500);
    const unsigned n20 = estimate_min_period_onset(20.0, 1500);
    CHECK(n2 >= n6);
    CHECK(n6 >= n20);

    CHECK_THROWS_AS(estimate_min_period_onset(critical_parameter().d0, 1500), domain_error);
    CHECK_THROWS_AS(estimate_min_period_onset(6.0, 50), domain_error);
}

TEST_CASE("period table between 2 and 10 matches the settled classification") {
    const auto rows = period_table();
    REQUIRE(rows.size() == 9);
    const bool expect_minimal[9] = {false, false, false, true, false, true, true, true, false};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].q == i + 2);
        CHECK(rows[i].minimal_period == expect_minimal[i]);
    }
    CHECK(rows[6].numerators == std::vector<unsigned>{3});  // q = 8
    CHECK(rows[7].numerators == std::vector<unsigned>{4});  // q = 9
    CHECK(rows[8].numerators.empty());                      // q = 10: only 4/10, reducible
    CHECK(rows[5].status == PeriodStatus::SpecialSeven);    // q = 7
}

TEST_CASE("sieve sanity") {
    const Sieve s(1000);
    CHECK(s.is_prime(2));
    CHECK(s.is_prime(997));
    CHECK(!s.is_prime(1));
    CHECK(!s.is_prime(999));
    CHECK(s.next_prime_above(260) == 263);
    CHECK(s.next_prime_above(176) == 179);
    CHECK_THROWS_AS(s.is_prime(2000), domain_error);
    CHECK_THROWS_AS(s.next_prime_above(997), domain_error);
}
