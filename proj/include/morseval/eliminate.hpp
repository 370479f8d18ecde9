#pragma once

#include "morseval/census.hpp"
#include "morseval/dromedary.hpp"
#include "morseval/field.hpp"
#include "morseval/val.hpp"

#include <optional>

namespace morseval {

/// Product model F(u, y, z) = k(u) - |y|^2 + |z|^2 with fiber dims (a, b);
/// the census of F is the census of k on the axis with index shifted by a.
struct ProductModel {
    ScalarField k; // 1D factor on the arc
    int neg_dim = 0; // a
    int pos_dim = 1; // b
    double radius = 1.0; // tube radius of the arc val (value units)
    Box box;             // full product box, dim = 1 + a + b

    int dim() const { return 1 + neg_dim + pos_dim; }
    void validate() const;

    double eval(std::span<const double> p) const;
    ScalarField as_field() const; // F as an expression, for censuses/oracles
};

struct EliminationReport {
    bool lowered = false; // stage 1 ran
    double kappa = 0, u = 0, u_prime = 0;
    DromedaryFrame frame;
    double eta1 = 0, eta2 = 0;
    double t0 = 0; // global landmark, inside the elevator stage
    Box support;
    double max_outside = 0; // must be 0
    std::vector<std::pair<double, std::vector<CriticalPoint>>> timeline;
    std::vector<std::pair<double, PgfReport>> pgf;
};

struct EliminationResult {
    DeformationPath path; // s in [0, 3]: lowering on [0,1], dromedary+elevator on [1,3]
    EliminationReport report;
};

/// The reduction pipeline: lower the hump below the nape when needed
/// (value lowering on the 1D factor with the 2/3-1/3 split values), run the
/// dromedary path on the factor, and extend it to the product through the
/// elevator applied to -F with base targets -k_s.
EliminationResult eliminate_pair(const ProductModel& model);

/// Pseudo-gradient blend Z_t = (1 - beta(f_t/r)) grad f_t + beta(f_t/r) Z.
std::vector<FieldFn> blend_pg(const std::vector<FieldFn>& Z, const FieldFn& f_t, int dim,
                              double r);

} // namespace morseval
