// entropy.hpp — Schur-concave entropy functionals on spectra and the
// homogeneous entropy extension for subnormalized weight sequences.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "majorbound/spectrum.hpp"

namespace majorbound {

/// eta(x) = -x ln x for x > 0, with eta(0) = 0.
double eta(double x);

/// Natural-log binary entropy eta(q) + eta(1-q) for q in (0,1).
double binary_entropy(double q);

/// A tagged entropy functional: von Neumann, Renyi(alpha) or Tsallis(alpha)
/// with alpha > 0, alpha != 1. All logarithms are natural.
class EntropyFunctional {
  public:
    enum class Kind { von_neumann, renyi, tsallis };

    static EntropyFunctional von_neumann();
    static EntropyFunctional renyi(double alpha);
    static EntropyFunctional tsallis(double alpha);

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }

    // CLI flag syntax: "vn", "renyi:<alpha>", "tsallis:<alpha>".
    static EntropyFunctional parse(std::string_view text);
    std::string to_string() const;

  private:
    EntropyFunctional(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}
    Kind kind_;
    double alpha_;
};

/// Evaluates the functional on a spectrum. Geometric spectra use closed
/// forms: S = h(q)/(1-q) and the power sum (1-q)^a / (1-q^a).
double evaluate(const EntropyFunctional& f, const Spectrum& s);

/// A non-negative weight sequence with total weight <= 1 (possibly empty):
/// either an explicit finite vector of weights, or the geometric tail
/// (1-q) q^(i-1) for i > skip with trace q^skip.
class SubnormalizedSpectrum {
  public:
    explicit SubnormalizedSpectrum(std::vector<double> weights);
    static SubnormalizedSpectrum geometric_tail(double ratio, std::size_t skip);

    bool is_geometric_tail() const noexcept { return geometric_; }
    double ratio() const;
    std::size_t skip() const;
    const std::vector<double>& weights() const;
    double trace() const;
    bool is_zero() const;

  private:
    SubnormalizedSpectrum() = default;
    std::vector<double> weights_;
    double q_ = 0.0;
    std::size_t skip_ = 0;
    bool geometric_ = false;
};

/// Homogeneous extension of the von Neumann entropy to subnormalized weights:
/// sum eta(w_i) - eta(trace), 0 at the zero sequence.
double extended_entropy(const SubnormalizedSpectrum& w);

/// Extended entropy of the spectrum with its m largest entries removed.
/// Equals the full von Neumann entropy at m = 0 and 0 for m >= rank(s);
/// geometric spectra use the closed form q^m h(q)/(1-q).
double tail_entropy(const Spectrum& s, std::size_t m);

}  // namespace majorbound
