#pragma once

#include "morseval/bump.hpp"
#include "morseval/census.hpp"
#include "morseval/field.hpp"

#include <map>
#include <string>

namespace morseval {

/// Product-form val: the first `base_dim` coordinates are the base W, the
/// rest the fiber. On the closed tube T = {q <= r_W} the carried function
/// decomposes as f = f_on_base(pi(v)) + q(fiber). The crest is
/// h_W = f_on_base + r_W.
struct TubeChart {
    int base_dim = 0;
    int total_dim = 1;
    ScalarField f_on_base; // on base coords; constant expression when base_dim = 0
    ScalarField q;         // on fiber coords; positive definite quadratic by default
    ScalarField r_w;       // on base coords, > 0
    Box base_box;          // sampling box for the base (ignored when base_dim = 0)

    int fiber_dim() const { return total_dim - base_dim; }

    double base_value(std::span<const double> p) const;
    double fiber_metric(std::span<const double> p) const;
    double size(std::span<const double> p) const;
    double crest(std::span<const double> p) const;

    /// Sampled check of the decomposition f = f_on_base o pi + q on T and
    /// r_W > 0; throws precondition_error on failure.
    void validate(const FieldFn& f, int samples = 2000, double tol = 1e-9) const;

    /// Point base (codim = total_dim), standard fiber metric, constant size.
    static TubeChart point_base(int total_dim, double f_value, double r);

    /// 1D base along axis 0 inside an ambient product space.
    static TubeChart line_base(int total_dim, ScalarField f_on_base, ScalarField r_w, Box base_box);
};

/// A family s -> f_s, constant outside [s_min, s_max], with support metadata
/// and named landmark parameters.
struct DeformationPath {
    std::function<double(double s, std::span<const double>)> eval;
    double s_min = 0.0;
    double s_max = 1.0;
    int dim = 1;
    Box support;
    std::map<std::string, double> landmarks;

    FieldFn at(double s) const {
        auto e = eval;
        double sc = s;
        return [e, sc](std::span<const double> p) { return e(sc, p); };
    }
};

/// Formula (A): fiberwise post-composition of f by the flow of the
/// decreasing cutoff with crest plateau, moving the base values of f toward
/// e while fixing everything at or above the crest. Requires
/// e <= (h_W + 2 f|W)/3 on sampled base points.
FieldFn elevate(const FieldFn& f, const TubeChart& tube, const FieldFn& e_on_base, double s);

DeformationPath elevate_path(const FieldFn& f, const TubeChart& tube, const FieldFn& e_on_base);

struct LowerReport {
    double kappa = 0, u = 0, u_prime = 0;
    double eps_hat = 0, a_hat = 0;
    // conclusion neighborhood: {f|W >= c_thresh} with fiber q <= q_thresh
    double c_thresh = 0;
    double q_thresh = 0;
};

/// Critical-value lowering: composes f|W at the target with the increasing
/// cutoff flow phi_{eps,a,beta(sigma)(u-kappa)} and feeds the result to the
/// elevator. The path is monotone nonincreasing and ends with
/// f - (kappa - u) on the reported neighborhood of {f|W = kappa}.
DeformationPath lower_value(const FieldFn& f, const TubeChart& tube, double kappa, double u,
                            double u_prime, LowerReport* report = nullptr);

/// Codim-0 variant on an interval W in 1D: direct post-composition of k by
/// the phi-flow, restricted to the basin interval.
struct Lower1DResult {
    Fn1D at_sigma1;                          // the lowered function with derivatives
    std::function<double(double, double)> eval; // (sigma, x)
    double support_lo = 0, support_hi = 0;
    LowerReport report;
};

Lower1DResult lower_value_1d(const Fn1D& k, double w_lo, double w_hi, double kappa, double u,
                             double u_prime, int grid = 2048);

struct MoveTarget {
    double location; // matched to the nearest census point
    double value;
};

/// Critical-value moving for a 1D Morse function: sequential
/// elevators on disjoint sub-tubes around each moved critical point; critical
/// locations are preserved exactly (each step post-composes by a
/// diffeomorphism of the value line).
DeformationPath move_values_1d(const ScalarField& k, const Box& interval,
                               const std::vector<MoveTarget>& targets, double tol = 1e-8);

} // namespace morseval
