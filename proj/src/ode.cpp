#include "morseval/ode.hpp"

#include "morseval/errors.hpp"

#include <algorithm>
#include <cmath>

namespace morseval {

namespace {

// Dormand-Prince coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

std::array<double, 3> ode_integrate(const OdeRhs& rhs, int dim, std::array<double, 3> y,
                                    double t0, double t1, const OdeSettings& settings) {
    if (t0 == t1) return y;
    double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(1.0, std::fabs(t1 - t0));
    std::array<double, 3> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{}, y5{};
    rhs(t, y, k1);
    for (long step = 0; step < static_cast<long>(settings.max_steps); ++step) {
        if ((t - t1) * dir >= 0) return y;
        if ((t + h - t1) * dir > 0) h = t1 - t;

        auto stage = [&](std::array<double, 3>& out, double adv,
                         std::initializer_list<std::pair<const std::array<double, 3>*, double>> terms) {
            for (int i = 0; i < dim; ++i) {
                double s = y[static_cast<std::size_t>(i)];
                for (const auto& [kv, coeff] : terms) s += h * coeff * (*kv)[static_cast<std::size_t>(i)];
                tmp[static_cast<std::size_t>(i)] = s;
            }
            rhs(t + adv * h, tmp, out);
        };

        stage(k2, c2, {{&k1, a21}});
        stage(k3, c3, {{&k1, a31}, {&k2, a32}});
        stage(k4, c4, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
        stage(k5, c5, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
        stage(k6, 1.0, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});

        for (int i = 0; i < dim; ++i)
            y5[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i)] +
                h * (b1 * k1[static_cast<std::size_t>(i)] + b3 * k3[static_cast<std::size_t>(i)] +
                     b4 * k4[static_cast<std::size_t>(i)] + b5 * k5[static_cast<std::size_t>(i)] +
                     b6 * k6[static_cast<std::size_t>(i)]);
        rhs(t + h, y5, k7);

        double err = 0;
        for (int i = 0; i < dim; ++i) {
            double ei = h * (e1 * k1[static_cast<std::size_t>(i)] + e3 * k3[static_cast<std::size_t>(i)] +
                             e4 * k4[static_cast<std::size_t>(i)] + e5 * k5[static_cast<std::size_t>(i)] +
                             e6 * k6[static_cast<std::size_t>(i)] + e7 * k7[static_cast<std::size_t>(i)]);
            double sc = settings.abs_tol +
                        settings.rel_tol * std::max(std::fabs(y[static_cast<std::size_t>(i)]),
                                                    std::fabs(y5[static_cast<std::size_t>(i)]));
            err = std::max(err, std::fabs(ei) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7; // FSAL
        }
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (std::fabs(h) < 1e-16 * std::max(1.0, std::fabs(t))) h = dir * 1e-16 * std::max(1.0, std::fabs(t));
    }
    throw certification_error("ODE step budget exhausted", "ode_integrate");
}

} // namespace morseval
