#include "majorbound/tolerance.hpp"

#include <atomic>

#include "majorbound/error.hpp"

namespace majorbound {

namespace {
std::atomic<double> g_tau{1e-9};
}

double global_tolerance() { return g_tau.load(std::memory_order_relaxed); }

void set_global_tolerance(double tau) {
    if (!(tau > 0.0) || !(tau < 1e-3)) {
        fail(Errc::out_of_range, "tolerance must lie in (0, 1e-3)");
    }
    g_tau.store(tau, std::memory_order_relaxed);
}

}  // namespace majorbound
