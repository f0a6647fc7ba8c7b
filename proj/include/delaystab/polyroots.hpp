#pragma once

#include <span>
#include <vector>

#include "delaystab/poly.hpp"

namespace delaystab {

struct PolyRoots {
  std::vector<cplx> roots;
  /// |p(r)| / sum_j |c_j| |r|^j for each root.
  std::vector<double> residuals;
};

/// All roots of a polynomial given highest power first. Leading coefficients
/// below 1e-12 max|c| are stripped first. A constant polynomial has no roots.
/// Throws ZeroPolynomial if every coefficient is zero.
PolyRoots poly_roots(std::span<const cplx> coeffs);
PolyRoots poly_roots(std::span<const double> coeffs);

}  // namespace delaystab
