// oracle.hpp — brute-force search over constrained spectra: lower-bounds the
// worst entropy drop, checks dominance of the extremal state, and validates
// the minimal-majorizer postconditions on random inputs.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "majorbound/entropy.hpp"
#include "majorbound/spectrum.hpp"

namespace majorbound {

struct SearchBudget {
    enum class Mode { grid, random, refine };
    Mode mode = Mode::grid;
    std::size_t resolution = 100;   // grid steps per sweep direction (2..400)
    std::size_t samples = 10000;    // random mode draw count / triple count
    std::uint64_t seed = 1;
    std::size_t refine_passes = 3;  // local perturbation rounds
    std::size_t max_support = 12;   // support window for candidate states
};

/// Which constrained set the candidates are drawn from.
///  - tset: states aligned to the base, agreeing with it on the first m
///          entries, entry m+1 not smaller, within trace distance eps.
///  - pset: aligned states m-partially majorized by the base (on sorted
///          entries) within trace distance eps.
enum class ConstraintSet { tset, pset };

/// Membership predicates, re-checked on every emitted candidate.
bool in_tset(const AlignedState& sigma, std::size_t m, double eps);
bool in_pset(const AlignedState& sigma, std::size_t m, double eps);

/// Deterministic stream of members of the chosen set: analytic candidates
/// (the base, its head truncation and the extremal state), structured grid
/// families, low-resolution simplex enumeration, seeded random draws and
/// local refinement around the extremal state, depending on the mode. Every
/// element satisfies its set's predicates.
std::vector<AlignedState> sample_constrained(const Spectrum& s, std::size_t m, double eps,
                                             const SearchBudget& budget, ConstraintSet set);

struct CheckOutcome {
    std::string name;
    bool passed = true;
    std::string detail;  // first counterexample, verbatim
};

struct VerificationReport {
    double worst_gap = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // bound - worst_gap
    std::size_t candidates_tested = 0;
    std::optional<AlignedState> witness;
    std::vector<CheckOutcome> checks;

    bool passed() const;
    std::string to_json() const;
    std::string summary() const;
};

/// Searches the set for the largest f(s) - f(sorted(sigma)) and checks it
/// against the analytic bound. In attainable cases the deterministic
/// inclusion of the analytic witnesses makes the search reach the bound.
VerificationReport worst_gap(const EntropyFunctional& f, const Spectrum& s, std::size_t m,
                             double eps, const SearchBudget& budget, ConstraintSet set);

/// Checks that the extremal state majorizes every sampled member of both
/// sets; failures record the violating prefix index.
VerificationReport verify_dominance(const Spectrum& s, std::size_t m, double eps,
                                    const SearchBudget& budget);

/// Random (p, q, m) triples with small support, q m-partially majorized by p
/// when m >= 1; checks the three minimal-majorizer postconditions on each.
VerificationReport verify_minimal_majorizer(const SearchBudget& budget);

}  // namespace majorbound
