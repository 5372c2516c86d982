#include "majorbound/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorbound/detail/format.hpp"
#include "majorbound/error.hpp"
#include "majorbound/tolerance.hpp"

namespace majorbound {

double eta(double x) {
    if (x < -global_tolerance()) fail(Errc::negative_input, "eta of negative input " + detail::g12(x));
    if (x <= 0.0) return 0.0;
    return -x * std::log(x);
}

double binary_entropy(double q) {
    if (!(q > 0.0) || !(q < 1.0)) fail(Errc::out_of_range, "binary entropy argument must lie in (0,1)");
    return eta(q) + eta(1.0 - q);
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || std::abs(alpha - 1.0) <= global_tolerance()) {
        fail(Errc::invalid_alpha, "alpha must be positive and != 1, got " + detail::g12(alpha));
    }
}

double power_sum(const EntropyFunctional& f, const Spectrum& s) {
    const double alpha = f.alpha();
    if (s.is_geometric()) {
        const double q = s.ratio();
        return std::pow(1.0 - q, alpha) / (1.0 - std::pow(q, alpha));
    }
    double total = 0.0;
    for (double p : s.entries())
        if (p > 0.0) total += std::pow(p, alpha);
    return total;
}

}  // namespace

EntropyFunctional EntropyFunctional::von_neumann() { return {Kind::von_neumann, 0.0}; }

EntropyFunctional EntropyFunctional::renyi(double alpha) {
    check_alpha(alpha);
    return {Kind::renyi, alpha};
}

EntropyFunctional EntropyFunctional::tsallis(double alpha) {
    check_alpha(alpha);
    return {Kind::tsallis, alpha};
}

EntropyFunctional EntropyFunctional::parse(std::string_view text) {
    if (text == "vn") return von_neumann();
    auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const std::string alpha_text(text.substr(colon + 1));
        char* end = nullptr;
        const double alpha = std::strtod(alpha_text.c_str(), &end);
        if (end != alpha_text.c_str() + alpha_text.size() || alpha_text.empty()) {
            fail(Errc::parse_error, "cannot parse alpha in '" + std::string(text) + "'");
        }
        const std::string_view head = text.substr(0, colon);
        if (head == "renyi") return renyi(alpha);
        if (head == "tsallis") return tsallis(alpha);
    }
    fail(Errc::parse_error, "unknown entropy functional '" + std::string(text) + "'");
}

std::string EntropyFunctional::to_string() const {
    switch (kind_) {
        case Kind::von_neumann: return "vn";
        case Kind::renyi: return "renyi:" + detail::g12(alpha_);
        case Kind::tsallis: return "tsallis:" + detail::g12(alpha_);
    }
    return {};
}

double evaluate(const EntropyFunctional& f, const Spectrum& s) {
    switch (f.kind()) {
        case EntropyFunctional::Kind::von_neumann: {
            if (s.is_geometric()) {
                const double q = s.ratio();
                return binary_entropy(q) / (1.0 - q);
            }
            double total = 0.0;
            for (double p : s.entries()) total += eta(p);
            return total;
        }
        case EntropyFunctional::Kind::renyi: {
            check_alpha(f.alpha());
            return std::log(power_sum(f, s)) / (1.0 - f.alpha());
        }
        case EntropyFunctional::Kind::tsallis: {
            check_alpha(f.alpha());
            return (power_sum(f, s) - 1.0) / (1.0 - f.alpha());
        }
    }
    return 0.0;
}

SubnormalizedSpectrum::SubnormalizedSpectrum(std::vector<double> weights) : weights_(std::move(weights)) {
    const double tau = global_tolerance();
    double total = 0.0;
    for (double& w : weights_) {
        if (w < -tau) fail(Errc::negative_entry, "negative weight " + detail::g12(w));
        if (w < 0.0) w = 0.0;
        total += w;
    }
    if (total > 1.0 + tau) fail(Errc::not_normalized, "trace exceeds 1: " + detail::g12(total));
}

SubnormalizedSpectrum SubnormalizedSpectrum::geometric_tail(double ratio, std::size_t skip) {
    if (!(ratio > 0.0) || !(ratio < 1.0)) fail(Errc::out_of_range, "geometric ratio must lie in (0,1)");
    SubnormalizedSpectrum w;
    w.geometric_ = true;
    w.q_ = ratio;
    w.skip_ = skip;
    return w;
}

double SubnormalizedSpectrum::ratio() const {
    if (!geometric_) fail(Errc::out_of_range, "ratio() on finite weights");
    return q_;
}

std::size_t SubnormalizedSpectrum::skip() const {
    if (!geometric_) fail(Errc::out_of_range, "skip() on finite weights");
    return skip_;
}

const std::vector<double>& SubnormalizedSpectrum::weights() const {
    if (geometric_) fail(Errc::out_of_range, "weights() on a geometric tail");
    return weights_;
}

double SubnormalizedSpectrum::trace() const {
    if (geometric_) return std::pow(q_, static_cast<double>(skip_));
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool SubnormalizedSpectrum::is_zero() const {
    if (geometric_) return false;
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w <= 0.0; });
}

double extended_entropy(const SubnormalizedSpectrum& w) {
    if (w.is_geometric_tail()) {
        const double q = w.ratio();
        return std::pow(q, static_cast<double>(w.skip())) * binary_entropy(q) / (1.0 - q);
    }
    if (w.is_zero()) return 0.0;
    double total = 0.0;
    for (double x : w.weights()) total += eta(x);
    return total - eta(w.trace());
}

double tail_entropy(const Spectrum& s, std::size_t m) {
    if (s.is_geometric()) {
        const double q = s.ratio();
        return std::pow(q, static_cast<double>(m)) * binary_entropy(q) / (1.0 - q);
    }
    const auto& p = s.entries();
    if (m >= p.size()) return 0.0;
    double total = 0.0;
    double trace = 0.0;
    for (std::size_t i = m; i < p.size(); ++i) {
        total += eta(p[i]);
        trace += p[i];
    }
    if (trace <= 0.0) return 0.0;
    return total - eta(trace);
}

}  // namespace majorbound
