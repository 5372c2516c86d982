// majorization.hpp — majorization predicates and the three state
// constructions: the minimal majorizer, the head truncation, and the
// extremal state of the prefix-constrained trace-norm ball.
#pragma once

#include <cstddef>

#include "majorbound/entropy.hpp"
#include "majorbound/spectrum.hpp"

namespace majorbound {

/// Count of strictly positive entries (the infinite marker for geometric
/// spectra). Construction branches use this rather than the tolerance-cut
/// rank: entries at or below the tolerance still carry eta-scale weight.
std::size_t positive_support(const Spectrum& s);

/// Prefix-sum dominance of sorted spectra for every k (tau slack).
bool majorizes(const Spectrum& a, const Spectrum& b);

/// Prefix-sum dominance for k = 1..m only. m = 0 holds trivially.
bool partially_majorizes(const Spectrum& a, const Spectrum& b, std::size_t m);

/// The first m entries kept, all remaining mass lumped into one entry:
/// (p_1, ..., p_m, d_m), canonicalized. Rank at most m+1.
Spectrum head_truncation(const Spectrum& s, std::size_t m);

/// The spectrum with its m largest entries removed; trace d_m. Empty for
/// m >= rank(s); geometric spectra return a geometric-tail descriptor.
SubnormalizedSpectrum tail_operator(const Spectrum& s, std::size_t m);

/// Which branch of the extremal-state construction produced the output.
///  - identity:   eps = 0, or finite rank n with m >= n-1 (output is the base)
///  - tail_lump:  eps >= d_{m+1}; the whole tail collapses onto entry m+1
///  - min_shift:  finite n, eps <= p_n; eps moves from the smallest entry to m+1
///  - tail_cut:   eps moves onto entry m+1, the tail is cut at the cutoff index
struct ExtremalCase {
    enum class Kind { identity, tail_lump, min_shift, tail_cut };
    Kind kind = Kind::identity;
    std::size_t cutoff = 0;  // tail_cut only: the cutoff index
};

struct ExtremalState {
    AlignedState state;
    ExtremalCase branch;
};

/// The state that majorizes every state agreeing with s on its first m
/// entries (with entry m+1 not smaller) within trace distance eps of s.
/// Ties at branch boundaries resolve in the order identity, tail_lump,
/// min_shift, tail_cut. The raw l1 distance to the base is 2 d_{m+1} in the
/// tail_lump branch and 2 eps otherwise.
ExtremalState extremal_state(const Spectrum& s, std::size_t m, double eps);

/// Given q m-partially majorized by p (automatic for m = 0), builds a state
/// aligned to p that (i) agrees with p on its first m entries and has entry
/// m+1 at least p_{m+1}, (ii) majorizes q, and (iii) is no farther from p in
/// l1 than q is. Deficits at head entries are funded by draining the
/// coefficient sequence from its far end; surpluses spill one slot down.
AlignedState minimal_majorizer(const Spectrum& p, const Spectrum& q, std::size_t m);

}  // namespace majorbound
