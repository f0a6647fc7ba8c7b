#include "delaystab/pade.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "delaystab/error.hpp"
#include "delaystab/polyroots.hpp"

namespace delaystab {

namespace {

constexpr int kMaxNormOrder = 25;
constexpr int kGridPoints = 2048;
constexpr int kRefined = 5;

RealPoly strip(RealPoly p) {
  const auto first = std::find_if(p.begin(), p.end(), [](double c) { return c != 0.0; });
  if (first == p.end()) return {0.0};
  p.erase(p.begin(), first);
  return p;
}

// num(s) / den(s), evaluated in 1/s for |s| > 1 so that high degrees do not
// overflow.
cplx eval_rational(const RealPoly& num, const RealPoly& den, cplx s) {
  if (std::abs(s) <= 1.0) return poly::eval(num, s) / poly::eval(den, s);
  const RealPoly rn(num.rbegin(), num.rend());
  const RealPoly rd(den.rbegin(), den.rend());
  const cplx inv = 1.0 / s;
  const int shift = static_cast<int>(num.size()) - static_cast<int>(den.size());
  return poly::eval(rn, inv) / poly::eval(rd, inv) * std::pow(s, shift);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double width) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

// sup over omega >= 0 of mag(omega): omega = 0, a log grid, then golden-section
// refinement (in log omega) around the largest local maxima.
double sampled_sup(const std::function<double(double)>& mag) {
  const double u0 = std::log(1e-4);
  const double u1 = std::log(1e4);
  std::vector<double> u(kGridPoints);
  std::vector<double> f(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    u[i] = u0 + (u1 - u0) * i / (kGridPoints - 1);
    f[i] = mag(std::exp(u[i]));
  }
  double best = std::max(mag(0.0), *std::max_element(f.begin(), f.end()));

  std::vector<int> peaks;
  for (int i = 0; i < kGridPoints; ++i) {
    const bool left = i == 0 || f[i] >= f[i - 1];
    const bool right = i == kGridPoints - 1 || f[i] >= f[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return f[a] > f[b]; });
  if (peaks.size() > kRefined) peaks.resize(kRefined);

  const auto in_log = [&](double v) { return mag(std::exp(v)); };
  for (int i : peaks) {
    const double a = u[std::max(i - 1, 0)];
    const double b = u[std::min(i + 1, kGridPoints - 1)];
    best = std::max(best, golden_max(in_log, a, b, 1e-10));
  }
  return best;
}

void check_request(const DelaySystem& sys, int delta) {
  if (sys.is_fractional())
    throw Error(ErrorCode::FractionalUnsupported,
                "Pade approximation is only available for standard systems (alpha = 1)");
  if (delta <= sys.degree()) {
    std::ostringstream msg;
    msg << "delta must be an integer greater than deg P0 = " << sys.degree() << ", got " << delta;
    throw Error(ErrorCode::DeltaTooSmall, msg.str());
  }
}

}  // namespace

std::pair<RealPoly, RealPoly> pade_exp(int q) {
  if (q < 1) throw Error(ErrorCode::BadRequest, "Pade degree must be at least 1");
  // ascending: c_0 = 1, c_j = c_{j-1} (q - j + 1) / ((2q - j + 1) j)
  std::vector<double> c(static_cast<std::size_t>(q) + 1, 1.0);
  for (int j = 1; j <= q; ++j) c[j] = c[j - 1] * (q - j + 1) / ((2.0 * q - j + 1) * j);
  RealPoly num(c.rbegin(), c.rend());
  RealPoly den = num;
  for (int j = 0; j <= q; ++j)
    if (j % 2 == 1) num[static_cast<std::size_t>(q - j)] = -num[static_cast<std::size_t>(q - j)];
  return {num, den};
}

RealPoly pade_exp_integer(int q) {
  if (q < 1) throw Error(ErrorCode::BadRequest, "Pade degree must be at least 1");
  // ascending: c_q = 1, c_{j-1} = c_j (2q - j + 1) j / (q - j + 1)
  std::vector<double> c(static_cast<std::size_t>(q) + 1, 1.0);
  for (int j = q; j >= 1; --j) c[j - 1] = c[j] * (2.0 * q - j + 1) * j / (q - j + 1);
  return RealPoly(c.rbegin(), c.rend());
}

PadeResult pade_of_order(const DelaySystem& sys, int delta, int m) {
  check_request(sys, delta);
  if (m < 1) throw Error(ErrorCode::BadRequest, "Pade order must be at least 1");
  const int q = 2 * m;
  const RealPoly base = pade_exp_integer(q);

  // D_k(s) = N(n_k tau s), N_k(s) = N(-n_k tau s)
  const std::size_t rows = sys.coeffs().size();
  std::vector<RealPoly> dk(rows);
  std::vector<RealPoly> nk(rows);
  for (std::size_t k = 1; k < rows; ++k) {
    const double h = sys.delay_multiples()[k - 1] * sys.tau();
    RealPoly d = base;
    RealPoly n = base;
    double hp = 1.0;
    for (int j = 0; j <= q; ++j) {
      const auto idx = static_cast<std::size_t>(q - j);
      d[idx] *= hp;
      n[idx] *= (j % 2 == 1 ? -hp : hp);
      hp *= h;
    }
    dk[k] = std::move(d);
    nk[k] = std::move(n);
  }

  RealPoly prod_d{1.0};
  for (std::size_t k = 1; k < rows; ++k) prod_d = poly::multiply(prod_d, dk[k]);

  RealPoly num = poly::multiply(sys.coeffs()[0], prod_d);
  for (std::size_t k = 1; k < rows; ++k) {
    RealPoly term = poly::multiply(sys.coeffs()[k], nk[k]);
    for (std::size_t l = 1; l < rows; ++l)
      if (l != k) term = poly::multiply(term, dk[l]);
    num = poly::add(num, term);
  }
  const RealPoly lag = poly::binomial_power(1.0, delta);
  num = strip(poly::multiply(num, lag));
  const RealPoly den = strip(poly::multiply(poly::multiply(lag, lag), prod_d));

  PadeResult out;
  out.num_approx = num;
  out.den_approx = den;
  out.pade_order = m;
  const HinfError err = hinf_error(sys, delta, num, den);
  out.abs_error = err.absolute;
  out.error_norm = err.relative;
  return out;
}

PadeResult compute_pade(const PadeRequest& req) {
  check_request(req.sys, req.delta);
  if (!std::isfinite(req.mod_arg) || req.mod_arg <= 0.0)
    throw Error(ErrorCode::BadRequest, "the mode argument must be positive");
  if (req.mode == PadeMode::Order) {
    if (req.mod_arg != std::floor(req.mod_arg) || req.mod_arg > 1e6)
      throw Error(ErrorCode::BadRequest, "the order must be a positive integer");
    return pade_of_order(req.sys, req.delta, static_cast<int>(req.mod_arg));
  }
  PadeResult last;
  for (int m = 1; m <= kMaxNormOrder; ++m) {
    last = pade_of_order(req.sys, req.delta, m);
    if (last.error_norm <= req.mod_arg) return last;
  }
  std::ostringstream msg;
  msg << "no order up to " << kMaxNormOrder << " reaches error " << req.mod_arg
      << " (best " << last.error_norm << ")";
  throw Error(ErrorCode::UnstableApprox, msg.str());
}

HinfError hinf_error(const DelaySystem& sys, int delta, const RealPoly& num, const RealPoly& den) {
  check_request(sys, delta);
  const RealPoly n = strip(num);
  const RealPoly d = strip(den);
  if (poly::degree(d) < 0) throw Error(ErrorCode::BadRequest, "zero denominator");
  for (const cplx& r : poly_roots(std::span<const double>(d)).roots)
    if (std::abs(r.real()) < 1e-9) {
      std::ostringstream msg;
      msg << "approximation has a pole at " << r.real() << (r.imag() < 0 ? " - " : " + ")
          << std::abs(r.imag()) << "j";
      throw Error(ErrorCode::PoleOnAxis, msg.str());
    }

  const auto g = [&](double w) {
    const cplx s(0.0, w);
    return eval_d(sys, s, sys.tau()) / std::pow(s + 1.0, delta);
  };
  HinfError out;
  out.absolute = sampled_sup([&](double w) { return std::abs(g(w) - eval_rational(n, d, {0.0, w})); });
  out.reference = sampled_sup([&](double w) { return std::abs(g(w)); });
  out.relative = out.reference > 0.0 ? out.absolute / out.reference : out.absolute;
  return out;
}

}  // namespace delaystab
