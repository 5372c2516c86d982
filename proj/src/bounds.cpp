#include "majorbound/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "majorbound/detail/format.hpp"
#include "majorbound/error.hpp"
#include "majorbound/tolerance.hpp"

namespace majorbound {

BoundResult gap_bound(const EntropyFunctional& f, const Spectrum& s, std::size_t m, double eps) {
    ExtremalState es = extremal_state(s, m, eps);
    const double value = evaluate(f, s) - evaluate(f, es.state.sorted());
    return {value, es.branch, std::move(es.state)};
}

namespace {

// The cutoff index used by the closed bound, consistent with the branch
// taken by extremal_state: the min_shift branch cuts at the last positive
// entry, otherwise at the tail cutoff index.
std::size_t closed_form_cutoff(const Spectrum& s, double eps) {
    const double tau = global_tolerance();
    const std::size_t n = positive_support(s);
    if (!s.is_geometric() && eps <= eigen_at(s, n) + tau) return n;
    return tail_cutoff_index(s, eps);
}

}  // namespace

double vn_bound_closed(const Spectrum& s, std::size_t m, double eps) {
    const double tau = global_tolerance();
    if (eps < -tau || eps > 1.0 + tau) {
        fail(Errc::invalid_epsilon, "eps outside [0,1]: " + detail::g12(eps));
    }
    eps = std::clamp(eps, 0.0, 1.0);
    if (eps <= tau) return 0.0;
    const std::size_t n = positive_support(s);
    if (!s.is_geometric() && m + 1 >= n) return 0.0;
    if (eps >= tail_weight(s, m + 1) - tau) return tail_entropy(s, m);
    const std::size_t ell = closed_form_cutoff(s, eps);
    return delta_term(s, m, eps) + tail_entropy(s, ell - 1);
}

double delta_term(const Spectrum& s, std::size_t m, double eps) {
    const double tau = global_tolerance();
    if (eps >= tail_weight(s, m + 1) + tau) {
        fail(Errc::branch_violation, "delta term requires eps < d_{m+1}");
    }
    if (eps < -tau) fail(Errc::invalid_epsilon, "negative eps");
    eps = std::max(eps, 0.0);
    const std::size_t ell = closed_form_cutoff(s, eps);
    const double p_next = eigen_at(s, m + 1);
    const double d_before = tail_weight(s, ell - 1);
    return eta(p_next) + eta(d_before) - eta(p_next + eps) - eta(std::max(0.0, d_before - eps));
}

double vn_m_bound(const Spectrum& s, std::size_t m) {
    if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
    return tail_entropy(s, m);
}

RenyiGap renyi_gap(const Spectrum& s, std::size_t m, double alpha) {
    if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
    if (!(alpha > 0.0) || std::abs(alpha - 1.0) <= global_tolerance()) {
        fail(Errc::invalid_alpha, "alpha must be positive and != 1");
    }
    double full = 0.0;  // sum of p_i^alpha
    double head = 0.0;  // sum over i <= m
    if (s.is_geometric()) {
        const double q = s.ratio();
        const double qa = std::pow(q, alpha);
        full = std::pow(1.0 - q, alpha) / (1.0 - qa);
        head = full * (1.0 - std::pow(qa, static_cast<double>(m)));
    } else {
        const auto& p = s.entries();
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            const double t = std::pow(p[i], alpha);
            full += t;
            if (i < m) head += t;
        }
    }
    const double tail = full - head;
    const double lump = std::pow(tail_weight(s, m), alpha);  // d_m^alpha
    RenyiGap g{};
    if (alpha < 1.0) {
        const double x = (tail - lump) / (head + lump);
        g.exact = std::log1p(x) / (1.0 - alpha);
        g.loose = x / (1.0 - alpha);
    } else {
        const double x = (lump - tail) / full;
        g.exact = std::log1p(x) / (alpha - 1.0);
        g.loose = x / (alpha - 1.0);
    }
    return g;
}

bool tightness_holds(const Spectrum& s, std::size_t m) {
    if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
    return tail_weight(s, m) <= eigen_at(s, m) + global_tolerance();
}

std::size_t majorization_rank_bound(const Spectrum& s, double eps) {
    const double tau = global_tolerance();
    if (eps < -tau) fail(Errc::invalid_epsilon, "negative eps");
    if (rank(s) <= 1) fail(Errc::pure_state, "rank bound needs a mixed state");
    if (eps <= 0.0) return s.is_geometric() ? kInfiniteRank : rank(s);
    const double full = evaluate(EntropyFunctional::von_neumann(), s);
    const double target = eps * full;
    constexpr std::size_t kScanCap = 10'000'000;
    for (std::size_t m = 1; m <= kScanCap; ++m) {
        // Exact threshold hits count as not-yet-below, so ties resolve to the
        // larger rank; the relative guard keeps that stable across the two
        // closed-form routes.
        if (tail_entropy(s, m) < target - 1e-12 * target) return m + 1;
    }
    fail(Errc::unbounded, "rank bound scan exceeded cap");
}

double min_value_bound(const EntropyFunctional& f, const Spectrum& s, std::size_t m, double eps) {
    return evaluate(f, extremal_state(s, m, eps).state.sorted());
}

}  // namespace majorbound
