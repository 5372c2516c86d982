#include "majorbound/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "majorbound/detail/format.hpp"
#include "majorbound/error.hpp"
#include "majorbound/tolerance.hpp"

namespace majorbound {

namespace {

constexpr std::size_t kExpansionCap = 10'000'000;

// Smallest K with q^K < bound.
std::size_t geometric_terms(double q, double bound) {
    if (bound <= 0.0) fail(Errc::unbounded, "geometric expansion bound must be positive");
    std::size_t k = 1;
    // Closed-form start, then adjust; the loop runs a handful of steps.
    double est = std::log(bound) / std::log(q);
    if (est > 2.0) k = static_cast<std::size_t>(est) - 1;
    while (std::pow(q, static_cast<double>(k)) >= bound) {
        ++k;
        if (k > kExpansionCap) fail(Errc::unbounded, "geometric expansion exceeds cap");
    }
    return k;
}

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

Spectrum Spectrum::geometric(double ratio) {
    if (!(ratio > 0.0) || !(ratio < 1.0)) {
        fail(Errc::out_of_range, "geometric ratio must lie in (0,1), got " + detail::g12(ratio));
    }
    Spectrum s;
    s.geometric_ = true;
    s.q_ = ratio;
    return s;
}

double Spectrum::ratio() const {
    if (!geometric_) fail(Errc::out_of_range, "ratio() on a finite spectrum");
    return q_;
}

const std::vector<double>& Spectrum::entries() const {
    if (geometric_) fail(Errc::out_of_range, "entries() on a geometric spectrum");
    return entries_;
}

std::size_t Spectrum::size() const noexcept {
    return geometric_ ? kInfiniteRank : entries_.size();
}

Spectrum canonicalize(std::vector<double> raw) {
    const double tau = global_tolerance();
    if (raw.empty()) fail(Errc::not_normalized, "empty spectrum");
    double total = sum_of(raw);
    if (std::abs(total - 1.0) > tau) {
        fail(Errc::not_normalized, "spectrum sums to " + detail::g12(total));
    }
    for (double& x : raw) {
        if (x < -tau) fail(Errc::negative_entry, "negative entry " + detail::g12(x));
        if (x < 0.0) x = 0.0;
    }
    std::sort(raw.begin(), raw.end(), std::greater<double>());
    Spectrum s;
    s.entries_ = std::move(raw);
    return s;
}

double eigen_at(const Spectrum& s, std::size_t i) {
    if (i < 1) fail(Errc::out_of_range, "eigenindex must be >= 1");
    if (s.is_geometric()) {
        const double q = s.ratio();
        return (1.0 - q) * std::pow(q, static_cast<double>(i - 1));
    }
    const auto& p = s.entries();
    return i <= p.size() ? p[i - 1] : 0.0;
}

double tail_weight(const Spectrum& s, std::size_t k) {
    if (k == 0) return 1.0;
    if (s.is_geometric()) return std::pow(s.ratio(), static_cast<double>(k));
    const auto& p = s.entries();
    double head = 0.0;
    for (std::size_t i = 0; i < std::min(k, p.size()); ++i) head += p[i];
    return std::clamp(1.0 - head, 0.0, 1.0);
}

std::size_t tail_cutoff_index(const Spectrum& s, double eps) {
    const double tau = global_tolerance();
    if (eps < -tau || eps > 1.0 + tau) {
        fail(Errc::invalid_epsilon, "eps outside [0,1]: " + detail::g12(eps));
    }
    if (s.is_geometric()) {
        const double q = s.ratio();
        std::size_t k = 1;
        const double target = eps + tau;
        double est = std::log(std::max(target, 1e-300)) / std::log(q);
        if (est > 2.0) k = static_cast<std::size_t>(est) - 1;
        while (std::pow(q, static_cast<double>(k)) > target) {
            ++k;
            if (k > kExpansionCap) fail(Errc::unbounded, "no k with d_k <= eps within cap");
        }
        return k;
    }
    const auto& p = s.entries();
    double head = 0.0;
    for (std::size_t k = 1; k <= p.size(); ++k) {
        head += p[k - 1];
        if (1.0 - head <= eps + tau) return k;
    }
    fail(Errc::unbounded, "no k with d_k <= eps");  // unreachable for valid spectra
}

std::size_t rank(const Spectrum& s) {
    if (s.is_geometric()) return kInfiniteRank;
    const double tau = global_tolerance();
    std::size_t r = 0;
    for (double x : s.entries())
        if (x > tau) ++r;
    return r;
}

std::vector<double> materialize(const Spectrum& s, double tail_below) {
    if (!s.is_geometric()) return s.entries();
    const double q = s.ratio();
    const std::size_t terms = geometric_terms(q, tail_below);
    std::vector<double> v(terms);
    for (std::size_t i = 0; i < terms; ++i) v[i] = (1.0 - q) * std::pow(q, static_cast<double>(i));
    return v;
}

double total_variation(const Spectrum& a, const Spectrum& b) {
    const double tau = global_tolerance();
    std::vector<double> va = materialize(a, tau);
    std::vector<double> vb = materialize(b, tau);
    const std::size_t n = std::max(va.size(), vb.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < va.size() ? va[i] : 0.0;
        const double y = i < vb.size() ? vb[i] : 0.0;
        dist += std::abs(x - y);
    }
    return std::clamp(0.5 * dist, 0.0, 1.0);
}

bool approx_equal(const Spectrum& a, const Spectrum& b, double tol) {
    if (a.is_geometric() && b.is_geometric()) return std::abs(a.ratio() - b.ratio()) <= tol;
    std::vector<double> va = materialize(a, global_tolerance());
    std::vector<double> vb = materialize(b, global_tolerance());
    const std::size_t n = std::max(va.size(), vb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < va.size() ? va[i] : 0.0;
        const double y = i < vb.size() ? vb[i] : 0.0;
        if (std::abs(x - y) > tol) return false;
    }
    return true;
}

// --- AlignedState ----------------------------------------------------------

namespace {

// Alignment-wise l1 distance of coeffs against the base. Base entries beyond
// the stored coefficients contribute their exact tail weight.
double aligned_l1(const Spectrum& base, const std::vector<double>& coeffs) {
    double dist = 0.0;
    if (base.is_geometric()) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            dist += std::abs(coeffs[i] - eigen_at(base, i + 1));
        }
        dist += tail_weight(base, coeffs.size());
        return dist;
    }
    const auto& p = base.entries();
    const std::size_t n = std::max(coeffs.size(), p.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double c = i < coeffs.size() ? coeffs[i] : 0.0;
        const double b = i < p.size() ? p[i] : 0.0;
        dist += std::abs(c - b);
    }
    return dist;
}

}  // namespace

AlignedState::AlignedState(Spectrum base, std::vector<double> coeffs)
    : base_(std::move(base)), coeffs_(std::move(coeffs)) {
    const double tau = global_tolerance();
    double total = 0.0;
    for (double& c : coeffs_) {
        if (c < -tau) fail(Errc::negative_entry, "negative coefficient " + detail::g12(c));
        if (c < 0.0) c = 0.0;
        total += c;
    }
    if (std::abs(total - 1.0) > tau) {
        fail(Errc::not_normalized, "aligned coefficients sum to " + detail::g12(total));
    }
    raw_l1_ = aligned_l1(base_, coeffs_);
}

AlignedState AlignedState::identity(Spectrum base) {
    // Expanded well below the tolerance: the truncated mass must stay
    // invisible to distance and entropy comparisons alike.
    AlignedState s(base, materialize(base, global_tolerance() * 1e-3));
    s.identity_ = true;
    s.raw_l1_ = 0.0;
    return s;
}

double AlignedState::coeff(std::size_t i) const {
    if (i < 1) fail(Errc::out_of_range, "coefficient index must be >= 1");
    return i <= coeffs_.size() ? coeffs_[i - 1] : 0.0;
}

Spectrum AlignedState::sorted() const {
    if (identity_) return base_;
    return canonicalize(coeffs_);
}

double total_variation(const AlignedState& s) { return 0.5 * s.raw_l1(); }

// --- text formats -----------------------------------------------------------

namespace {

double parse_number(std::string_view text) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r')) --last;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        fail(Errc::parse_error, "cannot parse number from '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t' || v.front() == '\r' || v.front() == '\n')) {
        v.remove_prefix(1);
    }
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r' || v.back() == '\n')) {
        v.remove_suffix(1);
    }
    return v;
}

// "geometric q=<v>" or "gibbs N=<v>"
Spectrum parse_family(std::string_view text) {
    const bool gibbs = text.rfind("gibbs", 0) == 0;
    auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        fail(Errc::parse_error, "expected '=' in '" + std::string(text) + "'");
    }
    const double value = parse_number(text.substr(eq + 1));
    if (gibbs) {
        if (!(value > 0.0)) fail(Errc::out_of_range, "gibbs N must be positive");
        return Spectrum::geometric(value / (value + 1.0));
    }
    return Spectrum::geometric(value);
}

}  // namespace

Spectrum parse_spectrum(std::string_view text) {
    std::string_view body = trim(text);
    if (body.empty()) fail(Errc::parse_error, "empty spectrum source");
    if (body.rfind("geometric", 0) == 0 || body.rfind("gibbs", 0) == 0) {
        return parse_family(body);
    }
    std::vector<double> raw;
    if (body.find('\n') != std::string_view::npos) {
        // newline decimals or CSV "index,probability" rows
        std::size_t pos = 0;
        bool first_line = true;
        while (pos <= body.size()) {
            auto nl = body.find('\n', pos);
            std::string_view line = trim(body.substr(pos, nl == std::string_view::npos ? body.size() - pos : nl - pos));
            pos = nl == std::string_view::npos ? body.size() + 1 : nl + 1;
            if (line.empty()) continue;
            if (first_line && line == "index,probability") {
                first_line = false;
                continue;
            }
            first_line = false;
            auto comma = line.find(',');
            if (comma != std::string_view::npos) {
                raw.push_back(parse_number(line.substr(comma + 1)));
            } else {
                raw.push_back(parse_number(line));
            }
        }
    } else if (body.find(',') != std::string_view::npos) {
        std::size_t pos = 0;
        while (pos <= body.size()) {
            auto comma = body.find(',', pos);
            std::string_view tok = body.substr(pos, comma == std::string_view::npos ? body.size() - pos : comma - pos);
            raw.push_back(parse_number(tok));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    } else {
        raw.push_back(parse_number(body));
    }
    return canonicalize(std::move(raw));
}

std::string serialize(const Spectrum& s) {
    if (s.is_geometric()) return "geometric q=" + detail::g12(s.ratio()) + "\n";
    std::string out;
    for (double x : s.entries()) {
        out += detail::g12(x);
        out += '\n';
    }
    return out;
}

std::string serialize_inline(const Spectrum& s) {
    if (s.is_geometric()) return "geometric q=" + detail::g12(s.ratio());
    std::string out;
    const auto& p = s.entries();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += detail::g12(p[i]);
    }
    return out;
}

std::string serialize_csv(const Spectrum& s) {
    if (s.is_geometric()) return serialize(s);
    std::string out = "index,probability\n";
    const auto& p = s.entries();
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += detail::g12(p[i]);
        out += '\n';
    }
    return out;
}

}  // namespace majorbound
