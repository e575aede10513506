#pragma once
// Test-only oracles, kept independent of the implementation paths they check.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "iastab/rng.hpp"
#include "iastab/system_config.hpp"

namespace oracles {

// Direct 2F1 power series in 80-bit arithmetic, no transformations.
inline long double hyp2f1_series(long double a, long double b, long double c, long double z,
                                 long n_terms = 400000) {
    long double term = 1.0L, sum = 1.0L;
    for (long n = 0; n < n_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0L)) * z;
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum)) break;
    }
    return sum;
}

// Adaptive Simpson quadrature of t^{s-1} e^{-t} over [x, infinity).
inline double upper_gamma_quadrature(int s, double x) {
    std::function<double(double)> f = [s](double t) {
        return std::pow(t, s - 1) * std::exp(-t);
    };
    std::function<double(double, double, double, double, double, double, int)> simpson =
        [&](double a, double b, double fa, double fb, double fm, double whole,
            int depth) -> double {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth <= 0 || std::abs(left + right - whole) < 1e-12 * std::abs(whole))
            return left + right;
        return simpson(a, m, fa, fm, flm, left, depth - 1) +
               simpson(m, b, fm, fb, frm, right, depth - 1);
    };
    // Far tail is negligible once t >> s: cut at x + 60 + 8s.
    const double hi = x + 60.0 + 8.0 * s;
    const double m = 0.5 * (x + hi);
    const double whole = (hi - x) / 6.0 * (f(x) + 4.0 * f(m) + f(hi));
    return simpson(x, hi, f(x), f(hi), f(m), whole, 48);
}

// Associated Laguerre polynomial via the three-term recurrence.
inline double laguerre_recurrence(int n, int alpha, double x) {
    long double prev = 1.0L;
    if (n == 0) return double(prev);
    long double cur = 1.0L + alpha - x;
    for (int k = 1; k < n; ++k) {
        const long double next =
            ((2.0L * k + 1.0L + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0L);
        prev = cur;
        cur = next;
    }
    return double(cur);
}

// Projected-gradient descent for min ||A x - b||, x >= 0.
inline Eigen::VectorXd nnls_projected_gradient(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                               long iters) {
    const Eigen::MatrixXd ata = A.transpose() * A;
    const Eigen::VectorXd atb = A.transpose() * b;
    const double step = 1.0 / ata.operatorNorm();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(A.cols());
    for (long i = 0; i < iters; ++i)
        x = (x - step * (ata * x - atb)).cwiseMax(0.0);
    return x;
}

// Random symmetric configurations for property tests; IA-feasible by
// construction.
inline iastab::SystemConfig random_symmetric_config(iastab::RngStream& rng, int max_pairs = 8) {
    using iastab::SystemConfig;
    auto pick_int = [&](int lo, int hi) {
        return lo + int(std::floor(rng.uniform() * (hi - lo + 1)));
    };
    for (;;) {
        const int n = pick_int(2, max_pairs);
        const int nt = pick_int(2, 8), nr = pick_int(2, 8);
        const int d_max = std::min({nt, nr, (nt + nr) / (n + 1)});
        if (d_max < 1) continue;
        const int d = pick_int(1, d_max);
        const double theta = (0.1 + 0.8 * rng.uniform()) / n;
        const int bits = pick_int(4, 60);
        const double tau = 0.2 + 2.3 * rng.uniform();
        const double zc = 0.05 + 0.95 * rng.uniform();
        SystemConfig cfg = SystemConfig::symmetric(n, nt, nr, d, 10.0, 1.0, theta, bits, tau,
                                                   1000.0, 1.0, zc);
        cfg.validate();
        return cfg;
    }
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

} // namespace oracles
