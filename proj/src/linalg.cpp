#include "morseval/linalg.hpp"

#include <algorithm>
#include <span>

namespace morseval {

std::vector<double> sym_eigenvalues(const SymMat& m) {
    int n = m.n;
    std::array<double, 9> a = m.a;
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(A(p, q)) < 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = A(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

bool solve_linear(int n, std::array<double, 9> A, std::array<double, 3> b,
                  std::array<double, 3>& x) {
    auto aij = [&](int i, int j) -> double& { return A[static_cast<std::size_t>(i * n + j)]; };
    std::array<int, 3> perm{0, 1, 2};
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(aij(r, col)) > std::fabs(aij(piv, col))) piv = r;
        if (std::fabs(aij(piv, col)) < 1e-300) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(aij(piv, j), aij(col, j));
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
            std::swap(perm[static_cast<std::size_t>(piv)], perm[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = aij(r, col) / aij(col, col);
            for (int j = col; j < n; ++j) aij(r, j) -= f * aij(col, j);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < n; ++j) s -= aij(r, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(r)] = s / aij(r, r);
    }
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace morseval
