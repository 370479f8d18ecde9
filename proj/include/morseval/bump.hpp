#pragma once

#include <array>
#include <functional>

namespace morseval {

/// Smooth kernel supported in [0,1], normalized so that the integral of
/// rho^2 over the line is 1.
double kernel(double x);
double kernel_deriv(double x);

/// beta(x) = integral of rho^2 from -infinity to x: 0 for x<=0, 1 for x>=1,
/// strictly increasing in between. Backed by a cached 1024-knot monotone
/// cubic table built once.
double beta(double x);

/// Inverse of beta on (0,1).
double beta_inv(double y);

/// Independent adaptive-Simpson quadrature of rho^2 over [0,1]; used to
/// certify the normalization without touching the beta table.
double kernel_mass_quadrature(double tol = 1e-12);

enum class CutoffKind {
    beta_inc,   // 0 on (-inf,a], 1 on [a+eps,inf)
    alpha_dec,  // 1 on (-inf,a-eps], 0 on [a,inf)
    alpha_comp, // 1 - beta_inc: 1 on (-inf,a], 0 on [a+eps,inf)
    beta_comp,  // 1 - alpha_dec: 0 on (-inf,a-eps], 1 on [a,inf)
};

struct CutoffSpec {
    CutoffKind kind = CutoffKind::beta_inc;
    double eps = 1.0;
    double a = 0.0;
};

double cutoff(const CutoffSpec& spec, double x);
double cutoff_deriv(const CutoffSpec& spec, double x);
double cutoff_deriv2(const CutoffSpec& spec, double x);

/// Flow map x -> Phi_t(x) of the cutoff seen as a vector field on R.
/// Exact fast paths on the fixed half-line and where the whole trajectory
/// lies in a plateau; adaptive 4(5) integration elsewhere.
double cutoff_flow(const CutoffSpec& spec, double t, double x);

/// d/dx of the flow map (exact via the autonomous-flow identity
/// DPhi_t(x) = V(Phi_t(x)) / V(x) away from zeros of V).
double cutoff_flow_dx(const CutoffSpec& spec, double t, double x);

/// Second spatial derivative of the flow map.
double cutoff_flow_dxx(const CutoffSpec& spec, double t, double x);

struct Flow1D {
    CutoffSpec spec;
    double map(double t, double x) const { return cutoff_flow(spec, t, x); }
    double dmap(double t, double x) const { return cutoff_flow_dx(spec, t, x); }
};

} // namespace morseval
