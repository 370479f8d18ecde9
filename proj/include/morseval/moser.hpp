#pragma once

#include "morseval/field.hpp"

#include <vector>

namespace morseval {

/// Conjugacy problem h o phi_1 = k on a 1D/2D box; W is the finite set the
/// isotopy must fix, d = h - k vanishes on W.
struct MoserProblem {
    ScalarField h;
    ScalarField k;
    std::vector<std::array<double, 3>> w_points;
    Box box;

    ScalarField d() const; // h - k, symbolic

    /// Validates d|W = 0 to 1e-10 and dimensional consistency.
    void validate() const;
};

/// Time-dependent field solving the Moser relation Z_t(k + t d) = -d.
/// 1D: -d/(k+td)' with a removable singularity at W handled by repeated
/// derivative quotients (depth 3); 2D: -d grad(k+td)/|grad(k+td)|^2.
std::array<double, 3> moser_field(const MoserProblem& p, double t, std::span<const double> x);

struct Isotopy {
    std::function<std::array<double, 3>(double t, std::span<const double>)> flow; // phi_t
    Box sub_box;
    double conjugacy_residual = 0; // certified sup |h o phi_1 - k| over sub_box
    double w_fix_residual = 0;     // sup over W and sampled t of |phi_t(w) - w|
};

/// Integrates the Moser field over t in [0,1] from seeds in sub_box and
/// certifies the conjugacy residual.
Isotopy moser_isotopy(const MoserProblem& p, const Box& sub_box, int seeds_per_axis = 33,
                      double ode_tol = 1e-12);

/// Smallest j <= max_order with |d^j f / dx^j (w)| > 1e-7, else max_order+1.
/// Derivatives are exact (repeated symbolic differentiation of the AST).
int vanishing_order(const ScalarField& f, double w, int max_order);

/// The MJ^2 surrogate: ord_w(d) >= 1 + 2 ord_w(h'). Returns the two orders
/// and the verdict.
struct OrderCheck {
    int ord_d = 0;
    int ord_dh = 0;
    bool pass = false;
};

OrderCheck mj2_surrogate(const ScalarField& h, const ScalarField& k, double w, int max_order = 8);

} // namespace morseval
