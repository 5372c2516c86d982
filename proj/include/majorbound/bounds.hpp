// bounds.hpp — tight upper bounds on the entropy drop under m-partial
// majorization and trace-norm constraints, closed von Neumann forms, the
// Renyi gap, tightness predicates, and the majorization-rank bound.
#pragma once

#include <cstddef>

#include "majorbound/entropy.hpp"
#include "majorbound/majorization.hpp"
#include "majorbound/spectrum.hpp"

namespace majorbound {

struct BoundResult {
    double value;          // f(base) - f(sorted(extremal)), >= 0 up to rounding
    ExtremalCase branch;   // which construction branch produced the extremal state
    AlignedState extremal; // the state witnessing the bound
};

/// Upper bound on f(s) - f(sigma) over states sigma within trace distance
/// eps of s that are m-partially majorized by s. Nondecreasing in eps,
/// non-increasing in m; zero at eps = 0 and vanishing as min(eps, 1/m) -> 0.
BoundResult gap_bound(const EntropyFunctional& f, const Spectrum& s, std::size_t m, double eps);

/// Closed form of gap_bound for the von Neumann entropy: the tail entropy
/// when eps >= d_{m+1}, otherwise delta_term + tail entropy past the cutoff.
/// Agrees with the generic route to within accumulated rounding.
double vn_bound_closed(const Spectrum& s, std::size_t m, double eps);

/// eta(p_{m+1}) + eta(d_{l-1}) - eta(p_{m+1}+eps) - eta(d_{l-1}-eps), the
/// two-entry redistribution term of the closed bound (branch eps < d_{m+1}).
double delta_term(const Spectrum& s, std::size_t m, double eps);

/// Upper bound on the von Neumann entropy drop under m-partial majorization
/// alone: the tail entropy past m. Non-increasing in m.
double vn_m_bound(const Spectrum& s, std::size_t m);

struct RenyiGap {
    double exact;  // Renyi entropy drop to the head truncation
    double loose;  // the log-free relaxation, exact <= loose
};

/// Renyi entropy gap to the head truncation, computed from power sums, with
/// the ln(1+x) <= x relaxation alongside.
RenyiGap renyi_gap(const Spectrum& s, std::size_t m, double alpha);

/// True when p_1 + ... + p_m >= 1 - p_m: then the head truncation is itself
/// m-partially majorized by s and the m-bound is attained exactly.
bool tightness_holds(const Spectrum& s, std::size_t m);

/// Smallest m with tail_entropy(s, m) strictly below eps * S(s), plus 1.
/// At eps = 0 this is rank(s) for finite spectra and the infinite marker for
/// geometric ones. Ties at exact thresholds resolve to the larger rank.
std::size_t majorization_rank_bound(const Spectrum& s, double eps);

/// Lower bound on the constrained minimum of f: the functional evaluated at
/// the extremal state. Equals evaluate(f, s) minus the gap bound.
double min_value_bound(const EntropyFunctional& f, const Spectrum& s, std::size_t m, double eps);

}  // namespace majorbound
