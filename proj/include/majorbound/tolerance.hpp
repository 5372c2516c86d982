// tolerance.hpp — the process-wide numeric tolerance used for normalization,
// ordering slack and inequality comparisons.
#pragma once

namespace majorbound {

struct Tolerance {
    double tau = 1e-9;  // must satisfy 0 < tau < 1e-3
};

// Current global tolerance. Defaults to 1e-9; set once at startup (e.g. from
// the MAJORBOUND_TOL environment variable) before any concurrent use.
double global_tolerance();
void set_global_tolerance(double tau);

}  // namespace majorbound
