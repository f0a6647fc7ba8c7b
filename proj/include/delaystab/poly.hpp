#pragma once

// Dense univariate polynomials stored highest power first.

#include <complex>
#include <span>
#include <vector>

namespace delaystab {

using cplx = std::complex<double>;
using RealPoly = std::vector<double>;

namespace poly {

/// Horner evaluation; coefficients highest power first.
cplx eval(std::span<const double> c, cplx x);
cplx eval(std::span<const cplx> c, cplx x);
double eval(std::span<const double> c, double x);

/// Value and first derivative in a single Horner pass.
void eval_with_derivative(std::span<const double> c, cplx x, cplx& value, cplx& deriv);
void eval_with_derivative(std::span<const cplx> c, cplx x, cplx& value, cplx& deriv);

/// Sum of |c_j| |x|^j, the natural scale for backward-error residuals.
double abs_eval(std::span<const double> c, double abs_x);
double abs_eval(std::span<const cplx> c, double abs_x);

RealPoly multiply(std::span<const double> a, std::span<const double> b);
RealPoly add(std::span<const double> a, std::span<const double> b);
RealPoly scale(std::span<const double> a, double k);

/// (s + a)^k
RealPoly binomial_power(double a, int k);

/// Degree after ignoring exact leading zeros; -1 for the zero polynomial.
int degree(std::span<const double> c);

/// Quotient and remainder of a / b (b must have a nonzero leading entry).
void divide(std::span<const double> a, std::span<const double> b, RealPoly& quotient,
            RealPoly& remainder);

}  // namespace poly
}  // namespace delaystab
