#pragma once

#include "morseval/errors.hpp"

#include <array>
#include <cmath>
#include <cstring>

namespace morseval {

/// Second-order forward-mode dual: value, n first-derivative slots and
/// n(n+1)/2 packed second-derivative slots, n <= 3.
struct Jet2 {
    int n = 0;
    int order = 2; // 0, 1 or 2; slots above the order are ignored
    double v = 0.0;
    std::array<double, 3> g{};
    std::array<double, 6> h{}; // packed symmetric, see hidx()

    static int hidx(int i, int j, int n) {
        if (i > j) std::swap(i, j);
        return i * n - i * (i + 1) / 2 + j;
    }

    static Jet2 constant(double c, int n, int order) {
        Jet2 j;
        j.n = n;
        j.order = order;
        j.v = c;
        return j;
    }

    static Jet2 variable(double x, int var, int n, int order) {
        Jet2 j = constant(x, n, order);
        if (order >= 1) j.g[static_cast<std::size_t>(var)] = 1.0;
        return j;
    }

    int hsize() const { return n * (n + 1) / 2; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v += b.v;
    if (r.order >= 1)
        for (int i = 0; i < r.n; ++i) r.g[static_cast<std::size_t>(i)] += b.g[static_cast<std::size_t>(i)];
    if (r.order >= 2)
        for (int i = 0; i < r.hsize(); ++i) r.h[static_cast<std::size_t>(i)] += b.h[static_cast<std::size_t>(i)];
    return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v -= b.v;
    if (r.order >= 1)
        for (int i = 0; i < r.n; ++i) r.g[static_cast<std::size_t>(i)] -= b.g[static_cast<std::size_t>(i)];
    if (r.order >= 2)
        for (int i = 0; i < r.hsize(); ++i) r.h[static_cast<std::size_t>(i)] -= b.h[static_cast<std::size_t>(i)];
    return r;
}

inline Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.v = -r.v;
    for (int i = 0; i < r.n; ++i) r.g[static_cast<std::size_t>(i)] = -r.g[static_cast<std::size_t>(i)];
    for (int i = 0; i < r.hsize(); ++i) r.h[static_cast<std::size_t>(i)] = -r.h[static_cast<std::size_t>(i)];
    return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r = Jet2::constant(a.v * b.v, a.n, a.order);
    if (r.order >= 1)
        for (int i = 0; i < r.n; ++i)
            r.g[static_cast<std::size_t>(i)] = a.g[static_cast<std::size_t>(i)] * b.v + a.v * b.g[static_cast<std::size_t>(i)];
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int j = i; j < r.n; ++j) {
                int k = Jet2::hidx(i, j, r.n);
                r.h[static_cast<std::size_t>(k)] =
                    a.h[static_cast<std::size_t>(k)] * b.v + a.v * b.h[static_cast<std::size_t>(k)] +
                    a.g[static_cast<std::size_t>(i)] * b.g[static_cast<std::size_t>(j)] +
                    a.g[static_cast<std::size_t>(j)] * b.g[static_cast<std::size_t>(i)];
            }
    return r;
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0.0) throw domain_error("division by zero");
    Jet2 r = Jet2::constant(a.v / b.v, a.n, a.order);
    if (r.order >= 1)
        for (int i = 0; i < r.n; ++i)
            r.g[static_cast<std::size_t>(i)] =
                (a.g[static_cast<std::size_t>(i)] - r.v * b.g[static_cast<std::size_t>(i)]) / b.v;
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int j = i; j < r.n; ++j) {
                int k = Jet2::hidx(i, j, r.n);
                r.h[static_cast<std::size_t>(k)] =
                    (a.h[static_cast<std::size_t>(k)] - r.v * b.h[static_cast<std::size_t>(k)] -
                     r.g[static_cast<std::size_t>(i)] * b.g[static_cast<std::size_t>(j)] -
                     r.g[static_cast<std::size_t>(j)] * b.g[static_cast<std::size_t>(i)]) /
                    b.v;
            }
    return r;
}

/// Lifts value, first and second derivative of a scalar map through the jet.
inline Jet2 jet_chain(const Jet2& a, double f, double df, double d2f) {
    Jet2 r = Jet2::constant(f, a.n, a.order);
    if (r.order >= 1)
        for (int i = 0; i < r.n; ++i) r.g[static_cast<std::size_t>(i)] = df * a.g[static_cast<std::size_t>(i)];
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int j = i; j < r.n; ++j) {
                int k = Jet2::hidx(i, j, r.n);
                r.h[static_cast<std::size_t>(k)] =
                    df * a.h[static_cast<std::size_t>(k)] +
                    d2f * a.g[static_cast<std::size_t>(i)] * a.g[static_cast<std::size_t>(j)];
            }
    return r;
}

inline Jet2 jet_exp(const Jet2& a) {
    double e = std::exp(a.v);
    return jet_chain(a, e, e, e);
}

inline Jet2 jet_log(const Jet2& a) {
    if (a.v <= 0.0) throw domain_error("log of nonpositive value");
    return jet_chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline Jet2 jet_sin(const Jet2& a) { return jet_chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }

inline Jet2 jet_cos(const Jet2& a) { return jet_chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

inline Jet2 jet_sqrt(const Jet2& a) {
    if (a.v < 0.0) throw domain_error("sqrt of negative value");
    if (a.v == 0.0 && a.order >= 1) throw domain_error("sqrt derivative at zero");
    double s = std::sqrt(a.v);
    if (a.order == 0) return Jet2::constant(s, a.n, 0);
    return jet_chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet2 jet_powi(const Jet2& a, int k) {
    if (k == 0) return Jet2::constant(1.0, a.n, a.order);
    if (k == 1) return a;
    if (a.v == 0.0 && k < 0) throw domain_error("negative power of zero");
    double v = std::pow(a.v, static_cast<double>(k));
    double dv = static_cast<double>(k) * std::pow(a.v, static_cast<double>(k - 1));
    double d2v = static_cast<double>(k) * static_cast<double>(k - 1) *
                 std::pow(a.v, static_cast<double>(k - 2));
    if (a.v == 0.0) {
        dv = (k == 1) ? 1.0 : 0.0;
        d2v = (k == 2) ? 2.0 : 0.0;
    }
    return jet_chain(a, v, dv, d2v);
}

} // namespace morseval
