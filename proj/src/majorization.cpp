#include "majorbound/majorization.hpp"

#include <algorithm>
#include <cmath>

#include "majorbound/detail/format.hpp"
#include "majorbound/error.hpp"
#include "majorbound/tolerance.hpp"

namespace majorbound {

bool majorizes(const Spectrum& a, const Spectrum& b) {
    const double tau = global_tolerance();
    std::vector<double> va = materialize(a, tau);
    std::vector<double> vb = materialize(b, tau);
    const std::size_t n = std::max(va.size(), vb.size());
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pa += i < va.size() ? va[i] : 0.0;
        pb += i < vb.size() ? vb[i] : 0.0;
        if (pa < pb - tau) return false;
    }
    return true;
}

bool partially_majorizes(const Spectrum& a, const Spectrum& b, std::size_t m) {
    if (m == 0) return true;
    const double tau = global_tolerance();
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        pa += eigen_at(a, k);
        pb += eigen_at(b, k);
        if (pa < pb - tau) return false;
    }
    return true;
}

Spectrum head_truncation(const Spectrum& s, std::size_t m) {
    if (m < 1) fail(Errc::out_of_range, "head truncation needs m >= 1");
    std::vector<double> v;
    v.reserve(m + 1);
    for (std::size_t i = 1; i <= m; ++i) v.push_back(eigen_at(s, i));
    v.push_back(tail_weight(s, m));
    return canonicalize(std::move(v));
}

SubnormalizedSpectrum tail_operator(const Spectrum& s, std::size_t m) {
    if (s.is_geometric()) return SubnormalizedSpectrum::geometric_tail(s.ratio(), m);
    const auto& p = s.entries();
    if (m >= rank(s)) return SubnormalizedSpectrum(std::vector<double>{});
    return SubnormalizedSpectrum(std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(m), p.end()));
}

std::size_t positive_support(const Spectrum& s) {
    if (s.is_geometric()) return kInfiniteRank;
    std::size_t r = 0;
    for (double x : s.entries())
        if (x > 0.0) ++r;
    return r;
}

ExtremalState extremal_state(const Spectrum& s, std::size_t m, double eps) {
    const double tau = global_tolerance();
    if (eps < -tau || eps > 1.0 + tau) {
        fail(Errc::invalid_epsilon, "eps outside [0,1]: " + detail::g12(eps));
    }
    eps = std::clamp(eps, 0.0, 1.0);

    const std::size_t n = positive_support(s);
    const bool finite = !s.is_geometric();
    if (eps <= tau || (finite && m + 1 >= n)) {
        return {AlignedState::identity(s), {ExtremalCase::Kind::identity, 0}};
    }

    const double d_m1 = tail_weight(s, m + 1);
    if (eps >= d_m1 - tau) {
        // Whole tail lumped onto entry m+1.
        std::vector<double> c(finite ? std::max(s.entries().size(), m + 1) : m + 1, 0.0);
        for (std::size_t i = 1; i <= m; ++i) c[i - 1] = eigen_at(s, i);
        c[m] = tail_weight(s, m);
        return {AlignedState(s, std::move(c)), {ExtremalCase::Kind::tail_lump, 0}};
    }

    if (finite && eps <= eigen_at(s, n) + tau) {
        // eps moves from the smallest positive entry onto entry m+1.
        std::vector<double> c = s.entries();
        c[m] += eps;
        c[n - 1] = std::max(0.0, c[n - 1] - eps);
        return {AlignedState(s, std::move(c)), {ExtremalCase::Kind::min_shift, 0}};
    }

    // eps moves onto entry m+1; the sequence is cut at the cutoff index,
    // whose entry absorbs the remaining tail.
    const std::size_t ell = tail_cutoff_index(s, eps);
    std::vector<double> c(finite ? std::max(s.entries().size(), ell) : ell, 0.0);
    for (std::size_t i = 1; i < ell; ++i) c[i - 1] = eigen_at(s, i);
    c[m] += eps;
    c[ell - 1] = std::max(0.0, eigen_at(s, ell) - eps + tail_weight(s, ell));
    return {AlignedState(s, std::move(c)), {ExtremalCase::Kind::tail_cut, ell}};
}

namespace {

// Takes `need` mass from the highest-index positive entries above `floor_idx`
// (0-based, exclusive). Returns the amount actually collected.
double drain_from_tail(std::vector<double>& v, std::size_t floor_idx, double need) {
    double collected = 0.0;
    for (std::size_t j = v.size(); j > floor_idx + 1 && collected < need; --j) {
        double& x = v[j - 1];
        const double take = std::min(x, need - collected);
        x -= take;
        collected += take;
    }
    return collected;
}

}  // namespace

AlignedState minimal_majorizer(const Spectrum& p, const Spectrum& q, std::size_t m) {
    const double tau = global_tolerance();
    if (m >= 1 && !partially_majorizes(p, q, m)) {
        fail(Errc::precondition_violated, "q is not " + std::to_string(m) + "-partially majorized by p");
    }
    std::vector<double> pv = materialize(p, tau);
    std::vector<double> cur = materialize(q, tau);
    const std::size_t len = std::max({pv.size(), cur.size(), m + 2});
    pv.resize(len, 0.0);
    cur.resize(len, 0.0);

    for (std::size_t i = 0; i < m; ++i) {
        if (cur[i] < pv[i]) {
            const double got = drain_from_tail(cur, i, pv[i] - cur[i]);
            cur[i] += got;  // got == deficit up to rounding crumbs
        } else if (cur[i] > pv[i]) {
            cur[i + 1] += cur[i] - pv[i];
            cur[i] = pv[i];
        }
    }
    // Entry m+1 is one-sided: raise it to p_{m+1} if it fell short.
    if (cur[m] < pv[m]) {
        const double got = drain_from_tail(cur, m, pv[m] - cur[m]);
        cur[m] += got;
    }
    while (cur.size() > m + 2 && cur.back() == 0.0) cur.pop_back();
    return AlignedState(p, std::move(cur));
}

}  // namespace majorbound
