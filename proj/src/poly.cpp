#include "delaystab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delaystab::poly {

namespace {

template <typename T, typename X>
X horner(std::span<const T> c, X x) {
  X acc{0};
  for (const T& v : c) acc = acc * x + X(v);
  return acc;
}

template <typename T>
void horner2(std::span<const T> c, cplx x, cplx& value, cplx& deriv) {
  value = 0.0;
  deriv = 0.0;
  for (const T& v : c) {
    deriv = deriv * x + value;
    value = value * x + cplx(v);
  }
}

}  // namespace

cplx eval(std::span<const double> c, cplx x) { return horner(c, x); }
cplx eval(std::span<const cplx> c, cplx x) { return horner(c, x); }
double eval(std::span<const double> c, double x) { return horner(c, x); }

void eval_with_derivative(std::span<const double> c, cplx x, cplx& value, cplx& deriv) {
  horner2(c, x, value, deriv);
}

void eval_with_derivative(std::span<const cplx> c, cplx x, cplx& value, cplx& deriv) {
  horner2(c, x, value, deriv);
}

double abs_eval(std::span<const double> c, double abs_x) {
  double acc = 0.0;
  for (double v : c) acc = acc * abs_x + std::abs(v);
  return acc;
}

double abs_eval(std::span<const cplx> c, double abs_x) {
  double acc = 0.0;
  for (const cplx& v : c) acc = acc * abs_x + std::abs(v);
  return acc;
}

RealPoly multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  RealPoly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RealPoly add(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  RealPoly out(n, 0.0);
  // right-align: the last entry is the constant term
  for (std::size_t i = 0; i < a.size(); ++i) out[n - a.size() + i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[n - b.size() + i] += b[i];
  return out;
}

RealPoly scale(std::span<const double> a, double k) {
  RealPoly out(a.begin(), a.end());
  for (double& v : out) v *= k;
  return out;
}

RealPoly binomial_power(double a, int k) {
  RealPoly out{1.0};
  const RealPoly factor{1.0, a};
  for (int i = 0; i < k; ++i) out = multiply(out, factor);
  return out;
}

int degree(std::span<const double> c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) return static_cast<int>(c.size() - 1 - i);
  return -1;
}

void divide(std::span<const double> a, std::span<const double> b, RealPoly& quotient,
            RealPoly& remainder) {
  const int db = degree(b);
  if (db < 0) throw std::invalid_argument("poly::divide: zero divisor");
  const std::span<const double> bb = b.subspan(b.size() - 1 - static_cast<std::size_t>(db));
  RealPoly r(a.begin(), a.end());
  const int da = static_cast<int>(r.size()) - 1;
  if (da < db) {
    quotient = {0.0};
    remainder = r;
    return;
  }
  quotient.assign(static_cast<std::size_t>(da - db + 1), 0.0);
  for (int i = 0; i <= da - db; ++i) {
    const double q = r[static_cast<std::size_t>(i)] / bb[0];
    quotient[static_cast<std::size_t>(i)] = q;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i + j)] -= q * bb[static_cast<std::size_t>(j)];
  }
  remainder.assign(r.end() - db, r.end());
  if (remainder.empty()) remainder = {0.0};
}

}  // namespace delaystab::poly
