// spectrum.hpp — canonical state spectra (finite vectors and the geometric
// family), aligned coefficient vectors, and the elementary tail quantities.
#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace majorbound {

// Marker for infinite rank / unbounded indices.
inline constexpr std::size_t kInfiniteRank = std::numeric_limits<std::size_t>::max();

/// A state spectrum in canonical form: either a finite non-increasing
/// probability vector, or the geometric family p_i = (1-q) q^(i-1).
/// Immutable after construction; all operations on it are pure functions.
class Spectrum {
  public:
    static Spectrum geometric(double ratio);

    bool is_geometric() const noexcept { return geometric_; }
    double ratio() const;                        // geometric only
    const std::vector<double>& entries() const;  // finite only
    // Stored length for finite spectra (may include trailing zeros);
    // kInfiniteRank for geometric.
    std::size_t size() const noexcept;

    friend Spectrum canonicalize(std::vector<double> raw);

  private:
    Spectrum() = default;
    std::vector<double> entries_;
    double q_ = 0.0;
    bool geometric_ = false;
};

/// Sorts non-negative weights into a canonical finite spectrum. Entries in
/// [-tau, 0) are clamped to zero. The sum must already be 1 within tau;
/// no renormalization is ever applied.
Spectrum canonicalize(std::vector<double> raw);

/// p_i with 1-based index; 0 beyond finite support.
double eigen_at(const Spectrum& s, std::size_t i);

/// Tail weight d_k = 1 - (p_1 + ... + p_k), clamped to [0,1]; d_0 = 1.
/// Geometric spectra return q^k exactly.
double tail_weight(const Spectrum& s, std::size_t k);

/// Smallest k >= 1 with d_k <= eps + tau. For geometric spectra this is the
/// ceiling of log_q(eps), with exact powers resolving to the smaller k.
std::size_t tail_cutoff_index(const Spectrum& s, double eps);

/// Number of entries above tau; kInfiniteRank for geometric spectra.
std::size_t rank(const Spectrum& s);

/// Finite vector view: finite spectra are copied, geometric spectra are
/// expanded until the remaining tail weight drops below tail_below.
std::vector<double> materialize(const Spectrum& s, double tail_below);

/// Total variation distance between two spectra compared as sorted
/// sequences, padded with zeros.
double total_variation(const Spectrum& a, const Spectrum& b);

/// Termwise equality of sorted sequences within tol (zero padded).
bool approx_equal(const Spectrum& a, const Spectrum& b, double tol);

/// A coefficient vector indexed against a base spectrum's eigenindices.
/// Entries need not be sorted; raw_l1 is the alignment-wise l1 distance to
/// the base, which for commuting pairs equals the trace-norm distance.
class AlignedState {
  public:
    AlignedState(Spectrum base, std::vector<double> coeffs);
    static AlignedState identity(Spectrum base);

    const Spectrum& base() const noexcept { return base_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double coeff(std::size_t i) const;  // 1-based; 0 beyond stored length
    double raw_l1() const noexcept { return raw_l1_; }
    bool is_identity() const noexcept { return identity_; }

    /// Coefficients rearranged into a canonical spectrum. The identity state
    /// returns its base unchanged (exact for geometric bases).
    Spectrum sorted() const;

  private:
    Spectrum base_;
    std::vector<double> coeffs_;
    double raw_l1_ = 0.0;
    bool identity_ = false;
};

/// Half the raw alignment-wise l1 distance of the state to its base.
double total_variation(const AlignedState& s);

// --- text formats ---------------------------------------------------------
// Accepted inputs: "geometric q=<v>" / "gibbs N=<v>", newline-separated
// decimals, CSV rows "index,probability", or an inline comma list.
Spectrum parse_spectrum(std::string_view text);
std::string serialize(const Spectrum& s);         // newline decimals / geometric form
std::string serialize_inline(const Spectrum& s);  // comma-joined / geometric form
std::string serialize_csv(const Spectrum& s);     // index,probability rows

}  // namespace majorbound
