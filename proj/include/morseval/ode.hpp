#pragma once

#include <array>
#include <functional>

namespace morseval {

/// Right-hand side of a (possibly time-dependent) system, dim <= 3.
using OdeRhs = std::function<void(double t, const std::array<double, 3>& y,
                                  std::array<double, 3>& dy)>;

struct OdeSettings {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double max_steps = 1e6;
};

/// Dormand-Prince 5(4) embedded pair with adaptive steps. Integrates y from
/// t0 to t1 (either direction) and returns the final state. Throws
/// certification_error when the step budget runs out.
std::array<double, 3> ode_integrate(const OdeRhs& rhs, int dim, std::array<double, 3> y0,
                                    double t0, double t1, const OdeSettings& settings = {});

} // namespace morseval
