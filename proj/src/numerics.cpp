#include "iastab/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "iastab/errors.hpp"

namespace iastab {

namespace {
constexpr long kMaxSeriesTerms = 100000;

std::vector<double> build_log_factorial_table(int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = std::lgamma(double(i) + 1.0);
    return t;
}

// Series sum of 2F1 at z in [0, 1). All terms share one sign.
double series_2f1(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (long n = 0; n < kMaxSeriesTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
    }
    throw NumericError("gauss_2f1: series did not converge within " +
                           std::to_string(kMaxSeriesTerms) + " terms",
                       sum, kMaxSeriesTerms);
}
} // namespace

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    static const std::vector<double> table = build_log_factorial_table(4096);
    if (n < int(table.size())) return table[n];
    return std::lgamma(double(n) + 1.0);
}

double gauss_2f1(double a, double b, double c, double z) {
    if (c <= 0.0) throw std::invalid_argument("gauss_2f1: require c > 0");
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("gauss_2f1: require |z| < 1");
    if (z == 0.0) return 1.0;
    if (z < 0.0) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)); the mapped
        // argument lies in (0, 0.5), where the series converges quickly.
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w);
    }
    return series_2f1(a, b, c, z);
}

namespace {
// n! by direct multiplication; exact while representable, finite up to 170.
double factorial_direct(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}
} // namespace

double upper_inc_gamma(int s, double x) {
    if (s < 1) throw std::invalid_argument("upper_inc_gamma: require integer s >= 1");
    if (x < 0.0) throw std::invalid_argument("upper_inc_gamma: require x >= 0");
    const double head = s - 1 <= 170 ? factorial_direct(s - 1) : std::exp(log_factorial(s - 1));
    if (x == 0.0) return head;
    double term = std::exp(-x), sum = term;
    for (int k = 1; k < s; ++k) {
        term *= x / k;
        sum += term;
    }
    return head * sum;
}

double LaguerreCoeffs::evaluate(double x) const {
    // Alternating coefficients lose up to ~7 digits to cancellation at the
    // large-argument end of the validated range; accumulate in long double.
    long double acc = 0.0L;
    for (int l = int(coeffs.size()) - 1; l >= 0; --l) acc = acc * x + coeffs[l];
    return double(acc);
}

LaguerreCoeffs laguerre_coeffs(int n, int alpha) {
    if (n < 0 || alpha < 0)
        throw std::invalid_argument("laguerre_coeffs: require n, alpha >= 0");
    LaguerreCoeffs out;
    out.order = n;
    out.shift = alpha;
    out.coeffs.resize(n + 1);
    for (int l = 0; l <= n; ++l) {
        double mag;
        if (n + alpha <= 56) {
            // (n+alpha)! / ((n-l)! (alpha+l)!) is the binomial C(n+alpha, n-l);
            // building it multiplicatively keeps each coefficient correctly
            // rounded, which matters under the alternating-sum cancellation.
            long double binom = 1.0L;
            for (int i = 1; i <= n - l; ++i) binom = binom * (alpha + l + i) / i;
            long double lfac = 1.0L;
            for (int i = 2; i <= l; ++i) lfac *= i;
            mag = double(binom / lfac);
        } else {
            mag = std::exp(log_factorial(n + alpha) - log_factorial(n - l) -
                           log_factorial(alpha + l) - log_factorial(l));
        }
        out.coeffs[l] = (l % 2 == 0) ? mag : -mag;
    }
    return out;
}

} // namespace iastab
