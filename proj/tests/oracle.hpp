#pragma once

// Test-side oracles, kept independent of the implementation paths they
// check: the census oracle is a plain sign-change scan at 10x resolution
// followed by interval subdivision, no Newton steps.

#include "morseval/field.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace morseval::testing {

struct OraclePoint {
    std::array<double, 3> location{};
};

namespace detail {

inline void gradient_at(const ScalarField& f, std::span<const double> p, std::array<double, 3>& g) {
    Jet2 j = f.jet(p, 1);
    g = {j.g[0], j.g[1], j.g[2]};
}

// recursive subdivision of a straddling cell down to width <= stop
inline void subdivide(const ScalarField& f, int dim, std::array<double, 3> lo,
                      std::array<double, 3> hi, double stop, int depth,
                      std::vector<OraclePoint>& out) {
    double width = 0;
    for (int i = 0; i < dim; ++i) width = std::max(width, hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
    if (width <= stop || depth > 60) {
        OraclePoint p;
        for (int i = 0; i < dim; ++i)
            p.location[static_cast<std::size_t>(i)] =
                0.5 * (lo[static_cast<std::size_t>(i)] + hi[static_cast<std::size_t>(i)]);
        out.push_back(p);
        return;
    }
    int children = 1 << dim;
    for (int child = 0; child < children; ++child) {
        std::array<double, 3> clo = lo, chi = hi;
        for (int i = 0; i < dim; ++i) {
            double mid = 0.5 * (lo[static_cast<std::size_t>(i)] + hi[static_cast<std::size_t>(i)]);
            if (child & (1 << i)) clo[static_cast<std::size_t>(i)] = mid;
            else chi[static_cast<std::size_t>(i)] = mid;
        }
        // straddle test on the corners of the child cell
        bool straddles = true;
        for (int comp = 0; comp < dim && straddles; ++comp) {
            double mn = 1e300, mx = -1e300;
            int corners = 1 << dim;
            for (int corner = 0; corner < corners; ++corner) {
                std::array<double, 3> pt{};
                for (int i = 0; i < dim; ++i)
                    pt[static_cast<std::size_t>(i)] = (corner & (1 << i))
                                                          ? chi[static_cast<std::size_t>(i)]
                                                          : clo[static_cast<std::size_t>(i)];
                std::array<double, 3> g{};
                gradient_at(f, std::span<const double>(pt.data(), static_cast<std::size_t>(dim)), g);
                mn = std::min(mn, g[static_cast<std::size_t>(comp)]);
                mx = std::max(mx, g[static_cast<std::size_t>(comp)]);
            }
            if (mn > 0 || mx < 0) straddles = false;
        }
        if (straddles) subdivide(f, dim, clo, chi, stop, depth + 1, out);
    }
}

} // namespace detail

inline std::vector<OraclePoint> brute_force_census(const ScalarField& f, const Box& box,
                                                   int res_per_axis, double merge_tol) {
    int dim = f.dim();
    std::array<double, 3> step{};
    std::array<int, 3> counts{1, 1, 1};
    for (int i = 0; i < dim; ++i) {
        counts[static_cast<std::size_t>(i)] = res_per_axis;
        step[static_cast<std::size_t>(i)] =
            (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]) / res_per_axis;
    }
    // precompute corner gradients on the lattice
    std::array<int, 3> nodes{counts[0] + 1, dim > 1 ? counts[1] + 1 : 1,
                             dim > 2 ? counts[2] + 1 : 1};
    std::vector<std::array<double, 3>> grads(static_cast<std::size_t>(nodes[0]) *
                                             static_cast<std::size_t>(nodes[1]) *
                                             static_cast<std::size_t>(nodes[2]));
    auto idx = [&](int i, int j, int k) {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(nodes[1]) +
                static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(nodes[0]) +
               static_cast<std::size_t>(i);
    };
    for (int k = 0; k < nodes[2]; ++k)
        for (int j = 0; j < nodes[1]; ++j)
            for (int i = 0; i < nodes[0]; ++i) {
                std::array<double, 3> p{};
                std::array<int, 3> ii{i, j, k};
                for (int d = 0; d < dim; ++d)
                    p[static_cast<std::size_t>(d)] =
                        box.lo[static_cast<std::size_t>(d)] +
                        step[static_cast<std::size_t>(d)] * ii[static_cast<std::size_t>(d)];
                detail::gradient_at(f, std::span<const double>(p.data(), static_cast<std::size_t>(dim)),
                                    grads[idx(i, j, k)]);
            }

    std::vector<OraclePoint> raw;
    for (int k = 0; k < (dim > 2 ? counts[2] : 1); ++k)
        for (int j = 0; j < (dim > 1 ? counts[1] : 1); ++j)
            for (int i = 0; i < counts[0]; ++i) {
                bool straddles = true;
                for (int comp = 0; comp < dim && straddles; ++comp) {
                    double mn = 1e300, mx = -1e300;
                    int corners = 1 << dim;
                    for (int corner = 0; corner < corners; ++corner) {
                        int ci = i + (corner & 1);
                        int cj = dim > 1 ? j + ((corner >> 1) & 1) : 0;
                        int ck = dim > 2 ? k + ((corner >> 2) & 1) : 0;
                        double g = grads[idx(ci, cj, ck)][static_cast<std::size_t>(comp)];
                        mn = std::min(mn, g);
                        mx = std::max(mx, g);
                    }
                    if (mn > 0 || mx < 0) straddles = false;
                }
                if (!straddles) continue;
                std::array<double, 3> clo{}, chi{};
                std::array<int, 3> ii{i, j, k};
                for (int d = 0; d < dim; ++d) {
                    clo[static_cast<std::size_t>(d)] =
                        box.lo[static_cast<std::size_t>(d)] +
                        step[static_cast<std::size_t>(d)] * ii[static_cast<std::size_t>(d)];
                    chi[static_cast<std::size_t>(d)] =
                        clo[static_cast<std::size_t>(d)] + step[static_cast<std::size_t>(d)];
                }
                detail::subdivide(f, dim, clo, chi, merge_tol * 0.01, 0, raw);
            }

    // merge duplicates
    std::vector<OraclePoint> merged;
    for (const auto& p : raw) {
        bool dup = false;
        for (const auto& q : merged) {
            double d2 = 0;
            for (int d = 0; d < dim; ++d) {
                double dd = p.location[static_cast<std::size_t>(d)] -
                            q.location[static_cast<std::size_t>(d)];
                d2 += dd * dd;
            }
            if (std::sqrt(d2) <= merge_tol) dup = true;
        }
        if (!dup) merged.push_back(p);
    }
    return merged;
}

} // namespace morseval::testing
