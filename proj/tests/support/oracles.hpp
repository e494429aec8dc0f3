#pragma once

// Independent brute-force evaluators the tests check the library against.
// Everything here follows the defining formulas by explicit loops and
// stays clear of the implementation paths it judges.

#include <vector>

#include "gaugefiber/core.hpp"
#include "gaugefiber/tensor.hpp"

namespace oracle {

using gaugefiber::cplx;
using gaugefiber::Mat;

/// Permutation sign by explicit case table (independent of the library's
/// product-form helper).
inline int parity3(int i, int j, int k) {
  if (i == 0 && j == 1 && k == 2) return 1;
  if (i == 1 && j == 2 && k == 0) return 1;
  if (i == 2 && j == 0 && k == 1) return 1;
  if (i == 0 && j == 2 && k == 1) return -1;
  if (i == 1 && j == 0 && k == 2) return -1;
  if (i == 2 && j == 1 && k == 0) return -1;
  return 0;
}

/// Covariant 2-form components from the scalar.
inline Mat skew2_components(cplx delta) {
  Mat d(2, 2);
  d(0, 1) = delta;
  d(1, 0) = -delta;
  return d;
}

/// Dual 2-form components: the plain 2x2 matrix inverse of the covariant
/// components, entry by entry.
inline Mat skew2_dual(cplx delta) {
  // [[0, delta], [-delta, 0]]^{-1} = [[0, -1/delta], [1/delta, 0]]
  Mat du(2, 2);
  du(0, 1) = -1.0 / delta;
  du(1, 0) = 1.0 / delta;
  return du;
}

/// Raised metric by the full four-index summation.
inline Mat raised_metric(const Mat& dmat, cplx delta) {
  const Mat du = skew2_dual(delta);
  Mat out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          s += du(i, p) * std::conj(du(j, q)) * dmat(p, q);
      out(i, j) = s;
    }
  return out;
}

/// Max-abs defect of the two dim-2 inverse identities, from the raised
/// metric computed above.
inline double concordance2_residual(const Mat& dmat, cplx delta) {
  const Mat up = raised_metric(dmat, delta);
  double res = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s1 = 0.0, s2 = 0.0;
      for (int a = 0; a < 2; ++a) {
        s1 += up(i, a) * dmat(j, a);
        s2 += dmat(a, j) * up(a, i);
      }
      const cplx want = i == j ? cplx(1.0) : cplx(0.0);
      res = std::max(res, std::abs(s1 - want));
      res = std::max(res, std::abs(s2 - want));
    }
  return res;
}

/// Max-abs defect of the dim-3 identity
/// sum_{ijk} d^{ijk} D(i,i') D(j,j') D(k,k') = conj(d_{i'j'k'}),
/// with d^{ijk} = parity * (1 / d_123).
inline double concordance3_residual(const Mat& dmat, cplx delta) {
  const cplx b = 1.0 / delta;
  double res = 0.0;
  for (int i1 = 0; i1 < 3; ++i1)
    for (int j1 = 0; j1 < 3; ++j1)
      for (int k1 = 0; k1 < 3; ++k1) {
        cplx lhs = 0.0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              lhs += static_cast<double>(parity3(i, j, k)) * b * dmat(i, i1) *
                     dmat(j, j1) * dmat(k, k1);
        const cplx rhs =
            std::conj(static_cast<double>(parity3(i1, j1, k1)) * delta);
        res = std::max(res, std::abs(lhs - rhs));
      }
  return res;
}

/// Pairing sum_{i,j} D(i,j) conj(X^j) Y^i by the naive double loop.
inline cplx pairing(const Mat& dmat, const std::vector<cplx>& x,
                    const std::vector<cplx>& y) {
  cplx s = 0.0;
  for (int i = 0; i < dmat.rows(); ++i)
    for (int j = 0; j < dmat.cols(); ++j)
      s += dmat(i, j) * std::conj(x[static_cast<size_t>(j)]) *
           y[static_cast<size_t>(i)];
  return s;
}

}  // namespace oracle
