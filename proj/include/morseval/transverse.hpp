#pragma once

#include "morseval/census.hpp"
#include "morseval/field.hpp"

#include <functional>
#include <string>
#include <vector>

namespace morseval {

/// Split linear model E = N + R p + R around a nondegenerate point: the
/// hyperbolic flow is Lambda_t = e^{-t} on N and e^{t} on P = R p + R, the
/// quadratic form is q = -mu_N + mu_P with mu the standard sums of squares,
/// and gamma = R_+ p is the ray through the base point s p.
struct SplitModel {
    int n_n = 1; // dim N
    int n_r = 0; // dim R
    double s = 1.0;
    double nu = 0.5;    // graph domain radius in N
    double rho = 0.5;   // graph range radius in R
    double delta = 0.3; // chart radius, must satisfy delta <= sqrt(s nu)

    int dim() const { return n_n + 1 + n_r; }
    void validate() const;

    double q(std::span<const double> u) const;       // -|n|^2 + tau^2 + |r|^2
    std::array<double, 3> zu(std::span<const double> u) const; // (-n, tau, r)
};

/// Flow-invariant sheet represented by its graph function theta: N^nu -> R^rho
/// with theta(0) = 0; the global set is the Lambda-saturation of
/// { n + s p + theta(n) }.
struct GraphSheet {
    std::function<void(std::span<const double> n, std::span<double> r_out)> theta;

    static GraphSheet flat(int n_r);
    static GraphSheet from_field(const ScalarField& theta_expr); // n_N = n_R = 1
};

/// chi(n, tau) = n + tau p + (tau/s) theta((tau/s) n). Layout of the output:
/// first n_N coords in N, then the p coordinate, then n_R coords in R.
std::array<double, 3> chi(const SplitModel& m, const GraphSheet& sheet, std::span<const double> n,
                          double tau);

struct ClauseReport {
    bool pass = false;
    double worst = 0;
    std::array<double, 3> witness{};
    std::string note;
};

struct TransverseReport {
    ClauseReport tangency;       // (a) flow-direction derivative vs Z^U
    ClauseReport cone_inclusion; // (b) sampled invariant-set points in the cone lie in the chart
    ClauseReport q_positivity;   // (c) q > 0 on the chart image (reported, see note)
    ClauseReport census;         // (d) unique nondegenerate coindex-1 critical point of q o chi
    ClauseReport p_intersection; // (e) P-points of the represented set lie on gamma
    double delta_used = 0;
    std::vector<CriticalPoint> census_points;
};

/// Certifies the extension clauses on `samples` quasi-random points.
/// `extra_ray_signs` adds reflected rays to the represented invariant set
/// (the second-intersection-ray counterexample): any sign other than +1 must fail (e).
TransverseReport verify_extension(const SplitModel& m, const GraphSheet& sheet, int samples,
                                  unsigned seed = 1,
                                  const std::vector<double>& extra_ray_signs = {});

} // namespace morseval
