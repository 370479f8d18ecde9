#pragma once

#include "morseval/field.hpp"
#include "morseval/linalg.hpp"

#include <optional>
#include <vector>

namespace morseval {

struct CriticalPoint {
    std::array<double, 3> location{};
    int dim = 0;
    double value = 0.0;
    int index = 0;   // count of negative Hessian eigenvalues
    int coindex = 0; // count of positive Hessian eigenvalues
    bool nondegenerate = true;
    std::vector<double> hessian_eigenvalues;

    std::span<const double> loc() const {
        return std::span<const double>(location.data(), static_cast<std::size_t>(dim));
    }
};

/// Newton-refined critical-point census from grid seeds. Each returned point
/// has gradient norm <= tol; duplicates within 10*tol are merged; points are
/// sorted lexicographically by location. A point is flagged degenerate when
/// its smallest |Hessian eigenvalue| <= tol*(1 + ||H||).
std::vector<CriticalPoint> critical_census(const JetFn& f, int dim, const Box& box,
                                           const Grid& grid, double tol);

std::vector<CriticalPoint> critical_census(const ScalarField& f, const Box& box,
                                           const Grid& grid, double tol);

/// 1D census on closure-backed functions (exact first/second derivatives).
std::vector<CriticalPoint> census_1d(const Fn1D& k, double lo, double hi, int grid, double tol);

struct PgfReport {
    bool pass = false;
    double min_value = 0.0;          // min of Z(f) over regular grid points
    std::array<double, 3> min_point{};
    int regular_points = 0;
};

/// Checks Z(f) > 0 at grid points where ||grad f|| > tol (Definition of a
/// weak pseudo-gradient). Gradients of closure-backed fields use central
/// differences.
PgfReport verify_pgf(const std::vector<FieldFn>& Z, const JetFn& f, int dim, const Box& box,
                     const Grid& grid, double tol);

} // namespace morseval
