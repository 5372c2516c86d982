#include <doctest.h>

#include <cmath>

#include "majorbound/bounds.hpp"
#include "majorbound/error.hpp"
#include "majorbound/oracle.hpp"
#include "majorbound/tolerance.hpp"
#include "test_util.hpp"

using namespace majorbound;

namespace {
const EntropyFunctional kVn = EntropyFunctional::von_neumann();

SearchBudget small_grid() {
    SearchBudget b;
    b.mode = SearchBudget::Mode::grid;
    b.resolution = 60;
    b.max_support = 10;
    return b;
}
}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("zero radius pins the stream to the base") {
    const Spectrum s = canonicalize({0.5, 0.5});
    for (ConstraintSet set : {ConstraintSet::tset, ConstraintSet::pset}) {
        const auto stream = sample_constrained(s, 1, 0.0, small_grid(), set);
        REQUIRE(!stream.empty());
        for (const AlignedState& sigma : stream) {
            CHECK(sigma.coeff(1) == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(sigma.coeff(2) == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(total_variation(sigma) <= global_tolerance());
        }
    }
}

TEST_CASE("every emitted candidate satisfies its set predicates") {
    const Spectrum s = canonicalize({0.5, 0.3, 0.2});
    const double eps = 0.2;
    for (SearchBudget::Mode mode :
         {SearchBudget::Mode::grid, SearchBudget::Mode::random, SearchBudget::Mode::refine}) {
        SearchBudget b = small_grid();
        b.mode = mode;
        b.samples = 3000;
        const auto tstream = sample_constrained(s, 1, eps, b, ConstraintSet::tset);
        REQUIRE(!tstream.empty());
        for (const AlignedState& sigma : tstream) {
            CHECK(in_tset(sigma, 1, eps));
            CHECK(sigma.coeff(1) == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(sigma.coeff(2) >= 0.3 - global_tolerance());
        }
        const auto pstream = sample_constrained(s, 1, eps, b, ConstraintSet::pset);
        REQUIRE(!pstream.empty());
        for (const AlignedState& sigma : pstream) CHECK(in_pset(sigma, 1, eps));
    }
}

TEST_CASE("tight cases keep the head truncation in the pset stream") {
    const Spectrum s = canonicalize({0.6, 0.25, 0.15});
    REQUIRE(tightness_holds(s, 1));
    const auto stream = sample_constrained(s, 1, 1.0, small_grid(), ConstraintSet::pset);
    const Spectrum trunc = head_truncation(s, 1);
    bool found = false;
    for (const AlignedState& sigma : stream) {
        if (approx_equal(sigma.sorted(), trunc, 1e-12)) found = true;
    }
    CHECK(found);
}

TEST_CASE("worst gap reaches the bound in attainable cases") {
    SUBCASE("head truncation witnesses the m-bound") {
        const Spectrum s = canonicalize({0.6, 0.25, 0.15});
        const VerificationReport r = worst_gap(kVn, s, 1, 1.0, small_grid(), ConstraintSet::pset);
        CHECK(r.passed());
        CHECK(r.bound == doctest::Approx(0.2646252952631928).epsilon(1e-12));
        CHECK(r.margin <= 1e-10);
        REQUIRE(r.witness.has_value());
        CHECK(approx_equal(r.witness->sorted(), canonicalize({0.6, 0.4}), 1e-9));
    }
    SUBCASE("the constrained set always contains its extremal state") {
        const Spectrum s = canonicalize({0.4, 0.3, 0.2, 0.1});
        SearchBudget b = small_grid();
        b.resolution = 200;
        const VerificationReport r = worst_gap(kVn, s, 1, 0.15, b, ConstraintSet::tset);
        CHECK(r.passed());
        CHECK(r.worst_gap <= 0.2694414720531260 + 1e-8);
        CHECK(r.margin <= 1e-10);
    }
    SUBCASE("zero radius means zero gap") {
        const Spectrum s = canonicalize({0.5, 0.3, 0.2});
        for (ConstraintSet set : {ConstraintSet::tset, ConstraintSet::pset}) {
            const VerificationReport r = worst_gap(kVn, s, 1, 0.0, small_grid(), set);
            CHECK(r.worst_gap <= 1e-12);
            CHECK(r.passed());
        }
    }
    SUBCASE("margin does not grow with resolution") {
        const Spectrum s = canonicalize({0.55, 0.25, 0.2});
        REQUIRE(tightness_holds(s, 1));
        SearchBudget coarse = small_grid();
        coarse.resolution = 20;
        SearchBudget fine = small_grid();
        fine.resolution = 200;
        const double m_coarse = worst_gap(kVn, s, 1, 1.0, coarse, ConstraintSet::pset).margin;
        const double m_fine = worst_gap(kVn, s, 1, 1.0, fine, ConstraintSet::pset).margin;
        CHECK(m_coarse <= 1e-10);
        CHECK(m_fine <= m_coarse + 1e-12);
    }
}

TEST_CASE("worst gap stays sound across functionals and sets") {
    std::mt19937_64 rng(41);
    SearchBudget b = small_grid();
    for (int trial = 0; trial < 12; ++trial) {
        const Spectrum s = testutil::random_spectrum(rng, 2 + trial % 5);
        for (double eps : {0.05, 0.3, 1.0}) {
            for (const EntropyFunctional& f : {kVn, EntropyFunctional::renyi(0.5), EntropyFunctional::renyi(2.0)}) {
                for (ConstraintSet set : {ConstraintSet::tset, ConstraintSet::pset}) {
                    const VerificationReport r = worst_gap(f, s, trial % 3, eps, b, set);
                    CHECK(r.margin >= -1e-8);
                }
            }
        }
    }
}

TEST_CASE("geometric bases search over a window with exact tail accounting") {
    const Spectrum g = Spectrum::geometric(0.5);
    const VerificationReport r = worst_gap(kVn, g, 1, 0.2, small_grid(), ConstraintSet::tset);
    CHECK(r.passed());
    CHECK(r.bound == doctest::Approx(vn_bound_closed(g, 1, 0.2)).epsilon(1e-12));
    CHECK(r.margin <= 1e-10);  // the extremal state is in the stream

    // the base itself stays a member of both sets even at zero radius, and
    // its expansion is deep enough not to register as a spurious gap
    for (ConstraintSet set : {ConstraintSet::tset, ConstraintSet::pset}) {
        const auto stream = sample_constrained(g, 1, 0.0, small_grid(), set);
        CHECK(!stream.empty());
        for (const AlignedState& sigma : stream) CHECK(total_variation(sigma) <= global_tolerance());
        const VerificationReport zero = worst_gap(kVn, g, 1, 0.0, small_grid(), set);
        CHECK(zero.passed());
        CHECK(zero.worst_gap <= 1e-10);
    }
    CHECK(verify_dominance(g, 1, 0.3, small_grid()).passed());
}

TEST_CASE("dominance of the extremal state") {
    const VerificationReport r = verify_dominance(canonicalize({0.5, 0.3, 0.2}), 1, 0.2, small_grid());
    CHECK(r.passed());
    CHECK(r.checks.size() == 2);
    CHECK(r.worst_gap <= 10.0 * global_tolerance());

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        const Spectrum s = testutil::random_spectrum(rng, 2 + trial % 5);
        for (double eps : {0.1, 0.5, 1.0}) {
            CHECK(verify_dominance(s, trial % 3, eps, small_grid()).passed());
        }
    }
}

TEST_CASE("reports are deterministic given the budget") {
    const Spectrum s = canonicalize({0.4, 0.35, 0.25});
    SearchBudget b = small_grid();
    b.mode = SearchBudget::Mode::random;
    b.samples = 2000;
    b.seed = 77;
    const VerificationReport a = worst_gap(kVn, s, 1, 0.2, b, ConstraintSet::pset);
    const VerificationReport c = worst_gap(kVn, s, 1, 0.2, b, ConstraintSet::pset);
    CHECK(a.worst_gap == c.worst_gap);
    CHECK(a.candidates_tested == c.candidates_tested);
    REQUIRE(a.witness.has_value());
    REQUIRE(c.witness.has_value());
    CHECK(a.witness->coeffs() == c.witness->coeffs());
    b.seed = 78;
    const VerificationReport d = worst_gap(kVn, s, 1, 0.2, b, ConstraintSet::pset);
    CHECK(d.candidates_tested != 0);
}

TEST_CASE("minimal majorizer verification") {
    SearchBudget b;
    b.samples = 2000;
    b.seed = 5;
    const VerificationReport r = verify_minimal_majorizer(b);
    CHECK(r.passed());
    CHECK(r.candidates_tested > 1500);
    CHECK(r.checks.size() == 3);
}

TEST_CASE("entries at the tolerance still count toward the bound") {
    // The second entry sits exactly at the tolerance: the bound must cover
    // members that tip it over, even though the reported rank ignores it.
    const Spectrum s = canonicalize({1.0 - 1e-9, 1e-9});
    CHECK(rank(s) == 1);
    CHECK(positive_support(s) == 2);
    for (ConstraintSet set : {ConstraintSet::tset, ConstraintSet::pset}) {
        const VerificationReport r = worst_gap(kVn, s, 0, 0.001, small_grid(), set);
        CHECK(r.passed());
        CHECK(r.bound >= eta(1e-9) - 1e-12);
    }
    CHECK(vn_bound_closed(s, 0, 0.001) ==
          doctest::Approx(gap_bound(kVn, s, 0, 0.001).value).epsilon(1e-10));
}

TEST_CASE("desk-scale caps") {
    std::vector<double> big(13, 1.0 / 13.0);
    CHECK_THROWS_AS(static_cast<void>(sample_constrained(canonicalize(big), 1, 0.5, small_grid(),
                                                         ConstraintSet::tset)),
                    Error);
    SearchBudget bad = small_grid();
    bad.resolution = 1000;
    CHECK_THROWS_AS(static_cast<void>(sample_constrained(canonicalize({0.5, 0.5}), 1, 0.5, bad,
                                                         ConstraintSet::tset)),
                    Error);
}

TEST_CASE("report serialization") {
    const VerificationReport r = worst_gap(kVn, canonicalize({0.5, 0.5}), 1, 0.3, small_grid(),
                                           ConstraintSet::tset);
    const std::string json = r.to_json();
    CHECK(json.find("\"worst_gap\"") != std::string::npos);
    CHECK(json.find("\"checks\"") != std::string::npos);
    CHECK(r.summary().rfind("PASS", 0) == 0);
}

TEST_SUITE_END();
