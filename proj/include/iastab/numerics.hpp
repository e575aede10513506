#pragma once
#include <vector>

namespace iastab {

// log(n!) for nonnegative integer n.
double log_factorial(int n);

// Gauss hypergeometric function 2F1(a,b;c;z) for real parameters, c > 0 and
// |z| < 1, evaluated by the power series with a term-ratio recurrence.
// Negative arguments are mapped into [0,1) by the Pfaff transformation
// z -> z/(z-1), which keeps every term positive; for z in [0,1) the series
// terms are already single-signed, so no cancellation occurs anywhere.
// Throws NumericError if the series has not converged after 1e5 terms.
double gauss_2f1(double a, double b, double c, double z);

// Upper incomplete gamma Gamma(s,x) for integer order s >= 1, via the exact
// finite sum Gamma(s,x) = (s-1)! e^{-x} sum_{k<s} x^k/k!.
double upper_inc_gamma(int s, double x);

// Coefficients of the associated Laguerre polynomial L_n^alpha:
// L_n^alpha(x) = sum_l coeffs[l] * x^l.
struct LaguerreCoeffs {
    int order = 0;
    int shift = 0;
    std::vector<double> coeffs;

    double evaluate(double x) const;
};

LaguerreCoeffs laguerre_coeffs(int n, int alpha);

} // namespace iastab
