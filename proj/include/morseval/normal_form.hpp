#pragma once

#include "morseval/field.hpp"
#include "morseval/linalg.hpp"

#include <functional>
#include <vector>

namespace morseval {

/// Variable-coefficient symmetric quadratic form: f(x) = f(c) + sum_ij
/// b_ij(x) (x-c)_i (x-c)_j with b(c) = Hessian(c)/2.
struct QuadFormField {
    std::array<double, 3> center{};
    int dim = 1;
    std::function<SymMat(std::span<const double>)> b;

    SymMat at(std::span<const double> p) const { return b(p); }
};

/// Taylor formula with integral remainder around a critical point c:
/// b_ij(x) = int_0^1 (1-t) d2f/dxi dxj (c + t(x-c)) dt, by adaptive
/// quadrature of exact AD Hessians along the segment.
QuadFormField quadratic_remainder(const ScalarField& f, std::span<const double> c,
                                  double quad_tol = 1e-11);

struct MorseChart {
    std::array<double, 3> center{};
    int dim = 1;
    int index = 0;
    int coindex = 0;
    double radius_used = 0;   // source-space ball the construction certified
    double chart_radius = 0;  // inscribed radius of the chart-coordinate ball
    double residual_bound = 0;
    std::function<void(std::span<const double> chart_pt, std::span<double> out)> forward; // psi
    std::function<void(std::span<const double> source_pt, std::span<double> out)> inverse;
};

/// Morse canonical form at a nondegenerate critical point: iterated
/// completion of squares with variable coefficients (one variable at a time,
/// with a constant linear pre-rotation whenever the pivot vanishes at c).
/// The verified contract is |f(psi(x~)) - f(c) - sum(+-)x~_i^2| <=
/// residual over the chart ball; minus signs come first.
MorseChart morse_chart(const ScalarField& f, std::span<const double> c, double radius);

struct NegativeGraph {
    int n_dim = 0; // dim N
    int p_dim = 0; // dim P
    std::array<std::array<double, 3>, 3> p_basis{}; // columns spanning P = N^perp_B
    std::array<std::array<double, 3>, 3> g{};       // map N-coords -> P-coords
    bool certified = false;
};

/// Expresses a maximal B-negative subspace N' as the graph of a linear map
/// g : N -> P over another one, and certifies q|P(g(x)) < -q|N(x) on sampled
/// unit vectors.
NegativeGraph negative_graph(const SymMat& B, const std::vector<std::array<double, 3>>& N,
                             const std::vector<std::array<double, 3>>& Nprime);

/// Applies the graph map to N-coordinates and returns the ambient vector
/// n + g(n).
std::array<double, 3> negative_graph_point(const NegativeGraph& gr,
                                           const std::vector<std::array<double, 3>>& N,
                                           std::span<const double> n_coords);

} // namespace morseval
