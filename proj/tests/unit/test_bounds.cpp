#include <doctest.h>

#include <cmath>
#include <random>

#include "majorbound/bounds.hpp"
#include "majorbound/error.hpp"
#include "majorbound/tolerance.hpp"
#include "test_util.hpp"

using namespace majorbound;

namespace {
const EntropyFunctional kVn = EntropyFunctional::von_neumann();
}

TEST_SUITE_BEGIN("bounds");

TEST_CASE("gap bound examples") {
    const BoundResult r1 = gap_bound(kVn, canonicalize({0.5, 0.3, 0.2}), 1, 0.3);
    CHECK(r1.value == doctest::Approx(0.3365058335046282).epsilon(1e-12));
    CHECK(r1.branch.kind == ExtremalCase::Kind::tail_lump);

    CHECK(gap_bound(kVn, canonicalize({0.5, 0.3, 0.2}), 1, 0.0).value == 0.0);
    CHECK(gap_bound(EntropyFunctional::renyi(2.0), Spectrum::geometric(0.7), 2, 0.0).value == 0.0);

    const BoundResult r3 = gap_bound(kVn, canonicalize({0.4, 0.3, 0.2, 0.1}), 1, 0.15);
    CHECK(r3.value == doctest::Approx(0.2694414720531260).epsilon(1e-12));
    CHECK(r3.branch.kind == ExtremalCase::Kind::tail_cut);

    // the stored extremal witnesses its own value
    CHECK(r3.value ==
          doctest::Approx(evaluate(kVn, canonicalize({0.4, 0.3, 0.2, 0.1})) - evaluate(kVn, r3.extremal.sorted()))
              .epsilon(1e-12));
}

TEST_CASE("closed von Neumann bound examples") {
    CHECK(vn_bound_closed(canonicalize({0.5, 0.3, 0.2}), 1, 0.3) ==
          doctest::Approx(0.3365058335046282).epsilon(1e-12));
    CHECK(vn_bound_closed(canonicalize({0.4, 0.3, 0.2, 0.1}), 1, 0.15) ==
          doctest::Approx(0.2694414720531260).epsilon(1e-12));
    CHECK(vn_bound_closed(canonicalize({0.5, 0.3, 0.2}), 5, 0.4) == 0.0);
    CHECK(vn_bound_closed(canonicalize({0.5, 0.3, 0.2}), 1, 0.0) == 0.0);
}

TEST_CASE("delta term") {
    CHECK(delta_term(canonicalize({0.4, 0.3, 0.2, 0.1}), 1, 0.15) ==
          doctest::Approx(0.0784872215646822).epsilon(1e-12));
    // smallest-entry branch: the cutoff is the last positive entry
    CHECK(delta_term(canonicalize({0.4, 0.3, 0.2, 0.1}), 2, 0.05) ==
          doctest::Approx(0.0557858878285525).epsilon(1e-12));
    CHECK(delta_term(canonicalize({0.4, 0.3, 0.2, 0.1}), 1, 1e-7) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK_THROWS_AS(static_cast<void>(delta_term(canonicalize({0.4, 0.3, 0.2, 0.1}), 1, 0.9)), Error);
}

TEST_CASE("m-bound") {
    CHECK(vn_m_bound(canonicalize({0.5, 0.3, 0.2}), 1) == doctest::Approx(0.3365058335046282).epsilon(1e-12));
    CHECK(vn_m_bound(Spectrum::geometric(0.5), 3) == doctest::Approx(0.1732867951399863).epsilon(1e-12));
    CHECK(vn_m_bound(canonicalize({0.5, 0.5}), 2) == 0.0);
    // coincides with the closed bound whenever eps covers the tail
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const Spectrum s = testutil::random_spectrum(rng, 2 + trial % 8);
        for (std::size_t m = 1; m < s.entries().size(); ++m) {
            const double d = tail_weight(s, m + 1);
            for (double eps : {d, 0.5 * (d + 1.0), 1.0}) {
                CHECK(vn_m_bound(s, m) == doctest::Approx(vn_bound_closed(s, m, eps)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("closed bound equals the generic gap over random spectra") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 8;
        const Spectrum s = testutil::random_spectrum(rng, n);
        for (std::size_t m = 0; m <= n; ++m) {
            const double boundary = tail_weight(s, m + 1);
            const double smallest = eigen_at(s, n);
            for (double eps : {0.0, unif(rng), boundary, smallest, 1.0}) {
                const double closed = vn_bound_closed(s, m, eps);
                const double generic = gap_bound(kVn, s, m, eps).value;
                CHECK(closed == doctest::Approx(generic).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("gap bound is monotone in eps and m") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const Spectrum s = testutil::random_spectrum(rng, n);
        const double tau = global_tolerance();
        for (std::size_t m = 0; m <= n; ++m) {
            double prev = 0.0;
            for (int j = 0; j <= 20; ++j) {
                const double value = gap_bound(kVn, s, m, j / 20.0).value;
                CHECK(value >= prev - tau);
                prev = value;
            }
        }
        for (double eps : {0.1, 0.45, 1.0}) {
            double prev = gap_bound(kVn, s, 0, eps).value;
            for (std::size_t m = 1; m <= n + 1; ++m) {
                const double value = gap_bound(kVn, s, m, eps).value;
                CHECK(value <= prev + tau);
                prev = value;
            }
        }
    }
}

TEST_CASE("bound vanishes along min(eps, 1/m) -> 0") {
    const Spectrum g = Spectrum::geometric(2.0 / 3.0);
    std::size_t threshold = 0;
    for (std::size_t m = 1; m <= 200; ++m) {
        if (vn_bound_closed(g, m, 1.0 / static_cast<double>(m)) < 1e-3) {
            threshold = m;
            break;
        }
    }
    CHECK(threshold > 0);
    CHECK(vn_bound_closed(g, threshold, 1.0 / static_cast<double>(threshold)) < 1e-3);
}

TEST_CASE("renyi gap") {
    const RenyiGap g = renyi_gap(canonicalize({0.5, 0.3, 0.2}), 1, 2.0);
    CHECK(g.exact == doctest::Approx(0.2744368457017603).epsilon(1e-12));
    CHECK(g.loose == doctest::Approx(0.3157894736842105).epsilon(1e-12));

    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 8;
        const Spectrum s = testutil::random_spectrum(rng, n);
        for (double alpha : {0.5, 2.0, 3.0}) {
            for (std::size_t m = 1; m < n; ++m) {
                const RenyiGap rg = renyi_gap(s, m, alpha);
                const EntropyFunctional f = EntropyFunctional::renyi(alpha);
                const double direct = evaluate(f, s) - evaluate(f, head_truncation(s, m));
                CHECK(rg.exact == doctest::Approx(direct).epsilon(1e-10));
                CHECK(rg.exact >= -1e-12);
                CHECK(rg.exact <= rg.loose + 1e-12);
            }
        }
    }
    // both vanish with growing m on the geometric family
    const Spectrum geo = Spectrum::geometric(0.5);
    CHECK(renyi_gap(geo, 40, 2.0).loose < 1e-10);
    CHECK(renyi_gap(geo, 40, 0.5).loose < 1e-4);
    CHECK_THROWS_AS(static_cast<void>(renyi_gap(geo, 1, 1.0)), Error);
}

TEST_CASE("tightness predicate") {
    CHECK(tightness_holds(canonicalize({0.6, 0.25, 0.15}), 1));
    CHECK_FALSE(tightness_holds(canonicalize({0.4, 0.3, 0.2, 0.1}), 1));
    CHECK(tightness_holds(canonicalize({0.25, 0.25, 0.25, 0.25}), 3));

    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const Spectrum s = testutil::random_spectrum(rng, n);
        for (std::size_t m = 1; m <= n; ++m) {
            if (tightness_holds(s, m)) {
                CHECK(partially_majorizes(s, head_truncation(s, m), m));
                CHECK(evaluate(kVn, s) - evaluate(kVn, head_truncation(s, m)) ==
                      doctest::Approx(vn_m_bound(s, m)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("majorization rank bound") {
    const Spectrum uniform4 = canonicalize({0.25, 0.25, 0.25, 0.25});
    CHECK(majorization_rank_bound(uniform4, 0.6) == 2);
    CHECK(majorization_rank_bound(uniform4, 0.0) == 4);
    CHECK(majorization_rank_bound(Spectrum::geometric(0.5), 0.0) == kInfiniteRank);
    CHECK_THROWS_AS(static_cast<void>(majorization_rank_bound(canonicalize({1.0}), 0.5)), Error);

    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 100; ++trial) {
        const Spectrum s = testutil::random_spectrum(rng, 2 + trial % 8);
        if (rank(s) < 2) continue;
        CHECK(majorization_rank_bound(s, 1.0) == 2);
        std::size_t prev = kInfiniteRank;
        for (double eps : {0.01, 0.1, 0.3, 0.7, 0.99}) {
            const std::size_t r = majorization_rank_bound(s, eps);
            CHECK(r <= prev);
            prev = r;
        }
    }
}

TEST_CASE("constrained minimum bound") {
    CHECK(min_value_bound(kVn, canonicalize({0.5, 0.3, 0.2}), 1, 0.3) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const Spectrum s = canonicalize({0.4, 0.3, 0.3});
    CHECK(min_value_bound(kVn, s, 1, 0.0) == doctest::Approx(evaluate(kVn, s)).epsilon(1e-14));
    CHECK(min_value_bound(kVn, s, 5, 0.8) == doctest::Approx(evaluate(kVn, s)).epsilon(1e-14));

    // identity with the gap bound, monotone the opposite way
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const Spectrum r = testutil::random_spectrum(rng, 2 + trial % 6);
        for (std::size_t m : {0, 1, 2}) {
            double prev = min_value_bound(kVn, r, m, 0.0);
            for (int j = 1; j <= 10; ++j) {
                const double eps = j / 10.0;
                const double low = min_value_bound(kVn, r, m, eps);
                CHECK(low <= prev + global_tolerance());
                CHECK(evaluate(kVn, r) - gap_bound(kVn, r, m, eps).value ==
                      doctest::Approx(low).epsilon(1e-10));
                prev = low;
            }
        }
        for (double eps : {0.2, 0.6}) {
            double prev = min_value_bound(kVn, r, 0, eps);
            for (std::size_t m = 1; m <= 6; ++m) {
                const double low = min_value_bound(kVn, r, m, eps);
                CHECK(low >= prev - global_tolerance());
                prev = low;
            }
        }
    }
}

TEST_SUITE_END();
