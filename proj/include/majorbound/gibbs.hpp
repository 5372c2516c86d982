// gibbs.hpp — closed-form evaluators for the quantum-oscillator Gibbs
// family and the CSV figure tables built from them.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "majorbound/spectrum.hpp"

namespace majorbound {

struct GibbsParams {
    double mean_quanta;  // N > 0
    double ratio() const { return mean_quanta / (mean_quanta + 1.0); }
};

/// The oscillator Gibbs spectrum with mean number of quanta N: the geometric
/// family with ratio q = N/(N+1).
Spectrum gibbs_spectrum(double mean_quanta);

/// Closed form of the von Neumann gap bound for the Gibbs spectrum:
/// q^m S for eps >= q^{m+1}, otherwise the redistribution term plus
/// eps q^{-frac(log_q eps)} S, where S = h(q)/(1-q).
double gibbs_vn_bound(double mean_quanta, std::size_t m, double eps);

/// Closed form of the majorization-rank bound for the Gibbs spectrum:
/// the integer part of log_q(eps) plus 2, with exact powers q^k giving k+2.
std::size_t gibbs_rank_bound(double mean_quanta, double eps);

enum class FigureId { fig1, fig2, fig3 };

struct EpsGrid {
    std::size_t points = 200;
    double min = 0.0;
    double max = 1.0;
    bool log_scale = false;
    static EpsGrid default_for(FigureId which);
    std::vector<double> values() const;
};

struct FigureTable {
    std::vector<std::string> columns;        // header names, first is "eps"
    std::vector<std::vector<double>> rows;   // one row per grid point
};

/// fig1/fig2: eps -> gap bound columns m = 0,1,2,3,10,20 for N = 2 / N = 10.
/// fig3: eps -> rank bound columns N = 1,10,100 on a log-spaced grid.
FigureTable figure_data(FigureId which, const EpsGrid& grid);

/// Header row plus one CSV line per grid point, 12 significant digits,
/// locale-independent (byte-stable across runs).
std::string to_csv(const FigureTable& table);

}  // namespace majorbound
