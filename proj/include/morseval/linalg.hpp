#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace morseval {

/// Dense symmetric matrix, n <= 3, row-major full storage.
struct SymMat {
    int n = 0;
    std::array<double, 9> a{};

    double& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

    static SymMat zero(int n) {
        SymMat m;
        m.n = n;
        return m;
    }

    double norm_inf() const {
        double s = 0;
        for (int i = 0; i < n * n; ++i) s = std::max(s, std::fabs(a[static_cast<std::size_t>(i)]));
        return s;
    }
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending order.
std::vector<double> sym_eigenvalues(const SymMat& m);

/// Solves A x = b for n <= 3 by Gaussian elimination with partial pivoting.
/// Returns false when the pivot collapses.
bool solve_linear(int n, std::array<double, 9> A, std::array<double, 3> b,
                  std::array<double, 3>& x);

double dot(std::span<const double> a, std::span<const double> b);

} // namespace morseval
