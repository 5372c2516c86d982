#include "majorbound/gibbs.hpp"

#include <cmath>

#include "majorbound/detail/format.hpp"
#include "majorbound/entropy.hpp"
#include "majorbound/error.hpp"
#include "majorbound/tolerance.hpp"

namespace majorbound {

Spectrum gibbs_spectrum(double mean_quanta) {
    if (!(mean_quanta > 0.0)) fail(Errc::out_of_range, "mean number of quanta must be positive");
    return Spectrum::geometric(mean_quanta / (mean_quanta + 1.0));
}

namespace {

// Integer part of log_q(eps), snapping to the nearest integer k whenever
// eps equals q^k to relative precision 1e-12.
double log_ratio_int_part(double q, double eps, double* frac) {
    const double x = std::log(eps) / std::log(q);
    const double nearest = std::round(x);
    if (nearest >= 0.0 && std::abs(std::pow(q, nearest) - eps) <= 1e-12 * eps) {
        if (frac) *frac = 0.0;
        return nearest;
    }
    const double k = std::floor(x);
    if (frac) *frac = x - k;
    return k;
}

}  // namespace

double gibbs_vn_bound(double mean_quanta, std::size_t m, double eps) {
    if (!(mean_quanta > 0.0)) fail(Errc::out_of_range, "mean number of quanta must be positive");
    const double tau = global_tolerance();
    if (!(eps > 0.0) || eps > 1.0 + tau) {
        fail(Errc::out_of_range, "eps must lie in (0,1], got " + detail::g12(eps));
    }
    const double q = mean_quanta / (mean_quanta + 1.0);
    const double full = binary_entropy(q) / (1.0 - q);
    const double md = static_cast<double>(m);
    if (eps >= std::pow(q, md + 1.0) - tau) return std::pow(q, md) * full;
    double frac = 0.0;
    log_ratio_int_part(q, eps, &frac);
    const double wave = std::pow(q, -frac);           // in [1, 1/q)
    const double p_next = std::pow(q, md) * (1.0 - q); // entry m+1
    const double delta = eta(p_next) + eta(eps * wave) - eta(p_next + eps) - eta(eps * (wave - 1.0));
    return delta + eps * wave * full;
}

std::size_t gibbs_rank_bound(double mean_quanta, double eps) {
    if (!(mean_quanta > 0.0)) fail(Errc::out_of_range, "mean number of quanta must be positive");
    if (!(eps > 0.0) || !(eps < 1.0)) {
        fail(Errc::out_of_range, "eps must lie in (0,1), got " + detail::g12(eps));
    }
    const double q = mean_quanta / (mean_quanta + 1.0);
    const double k = log_ratio_int_part(q, eps, nullptr);
    // Smallest m with q^m strictly below eps; ties resolve upward, with the
    // same relative guard the generic rank scan uses.
    std::size_t j = k > 2.0 ? static_cast<std::size_t>(k) - 1 : 1;
    while (std::pow(q, static_cast<double>(j)) >= eps * (1.0 - 1e-12)) ++j;
    return j + 1;
}

EpsGrid EpsGrid::default_for(FigureId which) {
    if (which == FigureId::fig3) return {200, 1e-4, 0.9, true};
    return {200, 1.0 / 200.0, 1.0, false};
}

std::vector<double> EpsGrid::values() const {
    if (points < 2) fail(Errc::out_of_range, "grid needs at least 2 points");
    if (!(min > 0.0) || !(max > min) || max > 1.0) {
        fail(Errc::out_of_range, "grid range must satisfy 0 < min < max <= 1");
    }
    std::vector<double> v(points);
    for (std::size_t j = 0; j < points; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(points - 1);
        v[j] = log_scale ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                         : min + t * (max - min);
    }
    return v;
}

FigureTable figure_data(FigureId which, const EpsGrid& grid) {
    FigureTable table;
    const std::vector<double> eps = grid.values();
    if (which == FigureId::fig3) {
        table.columns = {"eps", "N1", "N10", "N100"};
        const double quanta[] = {1.0, 10.0, 100.0};
        for (double e : eps) {
            std::vector<double> row{e};
            for (double N : quanta) row.push_back(static_cast<double>(gibbs_rank_bound(N, e)));
            table.rows.push_back(std::move(row));
        }
        return table;
    }
    const double N = which == FigureId::fig1 ? 2.0 : 10.0;
    table.columns = {"eps", "m0", "m1", "m2", "m3", "m10", "m20"};
    const std::size_t ms[] = {0, 1, 2, 3, 10, 20};
    for (double e : eps) {
        std::vector<double> row{e};
        for (std::size_t m : ms) row.push_back(gibbs_vn_bound(N, m, e));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_csv(const FigureTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += detail::g12(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace majorbound
