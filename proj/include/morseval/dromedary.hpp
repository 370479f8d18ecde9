#pragma once

#include "morseval/census.hpp"
#include "morseval/field.hpp"

#include <optional>

namespace morseval {

/// Eight ordered abscissae b' < b < c' < c < d < d' < n < n' framing a
/// one-hump one-dip function: k' <= 0 exactly on [c,d] with zeros {c,d},
/// k(c) < k(n) and k(d') < k(c).
struct DromedaryFrame {
    double b_prime = 0, b = 0, c_prime = 0, c = 0;
    double d = 0, d_prime = 0, n = 0, n_prime = 0;
    double i_lo = 0, i_hi = 0;

    DromedaryFrame rescaled(double center, double scale) const; // X -> (X - center)/scale
};

/// Cubic model p_i(X) = 2i (X-d) - 3(c-d)(X-d)^2 + 2(X-d)^3 in the shifted
/// variable; flavor 0 has derivative zeros exactly {c,d}, flavor 1 none.
struct Rahla {
    int flavor = 0;
    double c = 0, d = 0;

    double eval(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

    /// Throws precondition_error naming the violated clause.
    void validate(double n) const;
};

Rahla make_rahla(const DromedaryFrame& frame, int flavor);

/// Detects the frame of k on (lo, hi): locates c, d by a census on k' with
/// Newton refinement, auto-places the remaining six points, and re-verifies
/// the frame invariants on a dense grid.
DromedaryFrame detect(const Fn1D& k, double lo, double hi, double tol = 1e-10);

/// Verifies a caller-supplied frame against k on a dense grid.
void verify_frame(const Fn1D& k, const DromedaryFrame& frame, double tol = 1e-10);

struct ScolieResult {
    double eta = 0;
    double e = 0;       // crossing of k with q1 in (d', n)
    double delta1 = 0;  // blend width at e
    double delta = 0;   // blend width at b
    double offset = 0;  // measured constant A with g1 = A + k(c) + eta + eta q on [c',d']
    Fn1D g1;
};

/// The Scolie construction: q1 = k(c) + eta (1 + q), eta found by halving
/// until the strict grid conditions hold, e by bisection, g1 assembled from
/// the blended derivative; all four conclusions are re-verified on a dense
/// grid before returning.
ScolieResult scolie(const Fn1D& k, const DromedaryFrame& frame, const Rahla& q);

struct DromedaryPath {
    DromedaryFrame frame;  // original coordinates
    double center = 0;     // rescale X -> (X - center)/scale
    double scale = 1;
    double eta1 = 0, eta2 = 0;
    double e1 = 0, e2 = 0;           // rescaled coordinates
    double offset1 = 0, offset2 = 0;
    double t0 = 0;         // bisection landmark in (1,2)
    double t0_closed = 0;  // closed-form degeneracy parameter of the blended cubic
    double sigma0 = 0;
    Fn1D k1, k2;           // scolie outputs mapped back to original coordinates

    std::function<double(double s, double x)> eval;
    std::function<double(double s, double x)> deriv_x;
    std::function<double(double s, double x)> deriv2_x;

    Fn1D at(double s) const;
    double support_lo() const { return frame.b; }
    double support_hi() const { return frame.n; }
};

/// Hump-cancellation path: k -> k1 -> k2 as two consecutive beta-ramp blends on
/// s in [0,1] and [1,2]; the internal affine rescale maps the (c,d) gap to
/// 1/2 so both rahla flavors and the second Scolie stage are valid.
DromedaryPath dromedary_path(const Fn1D& k, const DromedaryFrame& frame);

/// (s, census of k_s over (lo,hi)) for each requested parameter value.
std::vector<std::pair<double, std::vector<CriticalPoint>>> census_sweep(
    const DromedaryPath& path, std::span<const double> svals, int grid = 4096, double tol = 1e-9);

} // namespace morseval
