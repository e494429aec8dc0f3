#pragma once

#include <cmath>
#include <string>

#include "gaugefiber/core.hpp"
#include "gaugefiber/metrics.hpp"

namespace gaugefiber {

enum class GroupTag { U1, SU2, SU3, Unitary, GeneralLinear };

inline const char* to_string(GroupTag g) {
  switch (g) {
    case GroupTag::U1: return "U1";
    case GroupTag::SU2: return "SU2";
    case GroupTag::SU3: return "SU3";
    case GroupTag::Unitary: return "Unitary";
    case GroupTag::GeneralLinear: return "GeneralLinear";
  }
  return "?";
}

/// Structural group a bundle's orthonormal-frame transitions must lie in.
inline GroupTag expected_group(BundleTag t) {
  switch (t) {
    case BundleTag::U1: return GroupTag::U1;
    case BundleTag::SU2: return GroupTag::SU2;
    case BundleTag::SU3: return GroupTag::SU3;
    default:
      raise(errc::unsupported_dimension,
            std::string("no structural group tracked for ") + to_string(t));
  }
}

struct GroupClassification {
  GroupTag tag = GroupTag::GeneralLinear;
  double unitarity_residual = 0.0;  // max |S†S - I| (| |s| - 1 | for dim 1)
  double det_residual = 0.0;        // |det S - 1|
};

/// Classifies a transition matrix: U1 for a unit-modulus scalar, SU2/SU3
/// for unitary matrices with unit determinant, Unitary when only S†S = I
/// holds, GeneralLinear otherwise.
inline GroupClassification classify_group(const Mat& s, double tol) {
  if (!s.square()) raise(errc::not_square, "transition matrices are square");
  const int n = s.rows();
  if (n > 3)
    raise(errc::unsupported_dimension, "structural groups live in dim 1..3");
  if (s.singular()) raise(errc::singular_matrix, "singular transition matrix");

  GroupClassification out;
  if (n == 1) {
    out.unitarity_residual = std::abs(std::abs(s(0, 0)) - 1.0);
    out.det_residual = out.unitarity_residual;
    out.tag = out.unitarity_residual <= tol ? GroupTag::U1
                                            : GroupTag::GeneralLinear;
    return out;
  }
  out.unitarity_residual = unitarity_residual(s);
  out.det_residual = std::abs(s.det() - cplx(1.0));
  if (out.unitarity_residual <= tol)
    out.tag = out.det_residual <= tol
                  ? (n == 2 ? GroupTag::SU2 : GroupTag::SU3)
                  : GroupTag::Unitary;
  else
    out.tag = GroupTag::GeneralLinear;
  return out;
}

struct Orthonormalization {
  Mat transition;            // columns: orthonormal frame vectors in the source frame
  ConcordanceCheck concordance;  // input check (dims 2 and 3)
  OrthonormalityCheck post;      // residuals of the transformed metrics
};

/// Constructs the transition from the frame the metric components are
/// expressed in to an orthonormal frame. Dim 1 rescales the single section
/// by 1/sqrt(D_11). Dims 2 and 3 run modified Gram-Schmidt in index order
/// against the Hermitian pairing, which drives D to the identity, then
/// multiply the first frame vector by the unit-modulus phase conj(d')/|d'|
/// that makes the transformed skew scalar equal to 1. Succeeds exactly on
/// concordant input; refuses otherwise with the offending residual.
inline Orthonormalization orthonormalize(const HermitianMetric& dm,
                                         const SkewMetric* d, double tol) {
  const int n = dm.dim();
  if (n == 1) {
    const double d11 = dm.components()(0, 0).real();
    if (!(d11 > 0.0))
      raise(errc::not_positive_definite, "D_11 must be positive");
    Mat s(1, 1);
    s(0, 0) = 1.0 / std::sqrt(d11);
    Orthonormalization out{s, {true, 0.0, 1.0}, {}};  // concordance is vacuous in dim 1
    out.post = is_orthonormal(transform_hermitian(dm, s), nullptr, tol);
    return out;
  }

  if (d == nullptr)
    raise(errc::zero_skew, "orthonormalization of a dim>=2 fiber needs the skew metric");
  require_covariant(*d, "orthonormalize");
  if (d->dim() != n)
    raise(errc::dimension_mismatch, "metric dimensions disagree");

  const ConcordanceCheck conc = is_concordant(dm, *d, tol);
  if (!conc.concordant)
    throw Error(errc::not_concordant,
                "metrics are not concordant (residual " +
                    fmt_sci(conc.residual) + ", scale " + fmt_sci(conc.scale) +
                    ")")
        .with_residual(conc.residual);

  // modified Gram-Schmidt on the standard sections, ascending index;
  // pairing(X, Y) = sum D(i,j) conj(X^j) Y^i is antilinear in X.
  const Mat& m = dm.components();
  const auto pair = [&](const Mat& cols, int x, int y) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += m(i, j) * std::conj(cols(j, x)) * cols(i, y);
    return s;
  };
  Mat s = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    for (int prev = 0; prev < k; ++prev) {
      const cplx coeff = pair(s, prev, k);
      for (int r = 0; r < n; ++r) s(r, k) -= coeff * s(r, prev);
    }
    const double norm2 = pair(s, k, k).real();
    if (!(norm2 > 0.0))
      raise(errc::not_positive_definite,
            "Gram-Schmidt hit a non-positive norm at index " + std::to_string(k));
    const double inv = 1.0 / std::sqrt(norm2);
    for (int r = 0; r < n; ++r) s(r, k) *= inv;
  }

  const cplx skew_after = d->scalar() * s.det();
  const cplx phase = std::conj(skew_after) / std::abs(skew_after);
  for (int r = 0; r < n; ++r) s(r, 0) *= phase;

  Orthonormalization out{s, conc, {}};
  const HermitianMetric dmt = transform_hermitian(dm, s);
  const SkewMetric dt = transform_skew(*d, s);
  out.post = is_orthonormal(dmt, &dt, tol);
  if (!out.post.ok())
    throw Error(errc::not_concordant,
                "orthonormalized frame misses the tolerance (residuals " +
                    fmt_sci(out.post.hermitian_residual) + ", " +
                    fmt_sci(out.post.skew_residual) + ")")
        .with_residual(std::max(out.post.hermitian_residual,
                                out.post.skew_residual));
  return out;
}

}  // namespace gaugefiber
