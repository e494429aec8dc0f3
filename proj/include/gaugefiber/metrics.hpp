#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaugefiber/core.hpp"
#include "gaugefiber/tensor.hpp"

namespace gaugefiber {

/// Hermitian metric on a U1 / SU2 / SU3 fiber. Components D(i, j) carry
/// one down and one barred-down index. Construction rejects anything that
/// is not exactly conjugate-symmetric and positive-definite, so every
/// accepted value admits an orthonormal frame.
class HermitianMetric {
 public:
  HermitianMetric(BundleTag tag, const Mat& components)
      : tag_(tag), d_(components) {
    if (tag != BundleTag::U1 && tag != BundleTag::SU2 && tag != BundleTag::SU3)
      raise(errc::dimension_mismatch,
            std::string("no Hermitian metric on ") + to_string(tag) + " fibers");
    const int n = fiber_dim(tag);
    if (components.rows() != n || components.cols() != n)
      raise(errc::dimension_mismatch,
            std::string("metric components must be ") + std::to_string(n) +
                "x" + std::to_string(n) + " for " + to_string(tag));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (d_(i, j) != std::conj(d_(j, i)))
          raise(errc::not_hermitian,
                "component (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is not the conjugate of its mirror");
    // Sylvester: all leading principal minors positive.
    for (int k = 1; k <= n; ++k) {
      Mat lead(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) lead(i, j) = d_(i, j);
      if (!(lead.det().real() > 0.0))
        raise(errc::not_positive_definite,
              "leading principal minor " + std::to_string(k) +
                  " is not positive");
    }
  }

  BundleTag tag() const { return tag_; }
  int dim() const { return fiber_dim(tag_); }
  const Mat& components() const { return d_; }
  double det() const { return d_.det().real(); }

  TensorField to_tensor(std::string chart, std::string frame) const {
    TypeSignature sig = TypeSignature::make({BlockCounts{tag_, 0, 1, 0, 1}});
    TensorField t(sig, std::move(chart), std::move(frame));
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) t.at({i, j}) = d_(i, j);
    return t;
  }

 private:
  BundleTag tag_;
  Mat d_;
};

/// Totally antisymmetric metric on an SU2 or SU3 fiber, stored as its one
/// independent component: d_12 for the 2-form, d_123 for the 3-form. The
/// contravariant flag distinguishes the inverse tensor, whose single
/// component is b^12 / b^123 in the same storage.
class SkewMetric {
 public:
  SkewMetric(BundleTag tag, cplx scalar, bool contravariant = false)
      : tag_(tag), scalar_(scalar), contravariant_(contravariant) {
    if (tag != BundleTag::SU2 && tag != BundleTag::SU3)
      raise(errc::dimension_mismatch,
            std::string("no skew metric on ") + to_string(tag) + " fibers");
    if (scalar == cplx(0.0, 0.0))
      raise(errc::zero_skew, "skew metric scalar must be nonzero");
  }

  BundleTag tag() const { return tag_; }
  int dim() const { return fiber_dim(tag_); }
  cplx scalar() const { return scalar_; }
  bool contravariant() const { return contravariant_; }

  TensorField to_tensor(std::string chart, std::string frame) const;

 private:
  BundleTag tag_;
  cplx scalar_;
  bool contravariant_;
};

inline void require_covariant(const SkewMetric& d, const char* what) {
  if (d.contravariant())
    raise(errc::variance_mismatch,
          std::string(what) + " expects the covariant skew metric");
}

/// Full component array of the skew tensor, row-major: 2x2 for dim 2,
/// 3x3x3 for dim 3. Entries are the scalar times the permutation sign.
inline std::vector<cplx> skew_expand(const SkewMetric& d) {
  if (d.dim() == 2) {
    const cplx s = d.scalar();
    return {cplx(0.0), s, -s, cplx(0.0)};
  }
  std::vector<cplx> out(27, cplx(0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out[static_cast<size_t>(i * 9 + j * 3 + k)] =
            static_cast<double>(levi_civita3(i, j, k)) * d.scalar();
  return out;
}

/// 2x2 matrix view of the dim-2 skew tensor.
inline Mat skew_expand_matrix(const SkewMetric& d) {
  if (d.dim() != 2)
    raise(errc::dimension_mismatch, "matrix view exists for dim 2 only");
  Mat m(2, 2);
  m(0, 1) = d.scalar();
  m(1, 0) = -d.scalar();
  return m;
}

inline TensorField SkewMetric::to_tensor(std::string chart,
                                         std::string frame) const {
  const int slots = dim() == 2 ? 2 : 3;
  BlockCounts b{tag_, 0, 0, 0, 0};
  (contravariant_ ? b.up : b.down) = slots;
  TensorField t(TypeSignature::make({b}), std::move(chart), std::move(frame));
  t.components() = skew_expand(*this);
  return t;
}

/// The dual skew metric. For dim 2 the expanded matrices are mutually
/// inverse, which puts d^12 = -1/d_12; for dim 3 the normalization is
/// d_123 * b^123 = 1. Applying the operation twice restores the input.
inline SkewMetric skew_inverse(const SkewMetric& d) {
  const cplx inv = 1.0 / d.scalar();
  return SkewMetric(d.tag(), d.dim() == 2 ? -inv : inv, !d.contravariant());
}

/// Components of the raised Hermitian metric on a dim-2 fiber:
/// raised(i, j) = sum_{p,q} d^{ip} conj(d^{jq}) D(p, q).
inline Mat raise_hermitian(const HermitianMetric& dm, const SkewMetric& d) {
  if (dm.dim() != 2 || d.dim() != 2)
    raise(errc::dimension_mismatch, "raised metric is defined on dim-2 fibers");
  require_covariant(d, "raise_hermitian");
  const Mat du = skew_expand_matrix(skew_inverse(d));
  const int n = 2;
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          s += du(i, p) * std::conj(du(j, q)) * dm.components()(p, q);
      out(i, j) = s;
    }
  return out;
}

enum class IndexMove { raise, lower };

/// Moves one SU2 slot between up and down position with the skew metric:
/// lowering maps T^j to sum_j d_{ij} T^j, raising maps T_j to
/// sum_j d^{ij} T_j; barred slots use the conjugated components. The moved
/// slot joins the end of its destination class group. Only the dim-2 block
/// supports this; the 3-form pairs one index with two and is not offered.
inline TensorField apply_skew_metric(const SkewMetric& d, const TensorField& t,
                                     int slot, IndexMove move) {
  require_covariant(d, "apply_skew_metric");
  const auto slots = t.signature().slots();
  if (slot < 0 || slot >= static_cast<int>(slots.size()))
    raise(errc::slot_out_of_range,
          "slot " + std::to_string(slot) + " out of range");
  const auto& sl = slots[static_cast<size_t>(slot)];
  if (sl.tag != BundleTag::SU2 || d.tag() != BundleTag::SU2)
    raise(errc::unsupported_block,
          std::string("index moves are supported on SU2 slots only, slot ") +
              std::to_string(slot) + " is " + to_string(sl.tag));
  const bool barred = is_barred(sl.cls);
  if (move == IndexMove::lower && !is_up_class(sl.cls))
    raise(errc::slot_class_mismatch, "lowering needs an up slot");
  if (move == IndexMove::raise && is_up_class(sl.cls))
    raise(errc::slot_class_mismatch, "raising needs a down slot");

  Mat m = move == IndexMove::lower ? skew_expand_matrix(d)
                                   : skew_expand_matrix(skew_inverse(d));
  if (barred) m = m.conjugate();

  const TensorField mixed = detail::apply_axis(t, slot, m);

  const SlotClass dst = [&] {
    if (move == IndexMove::lower)
      return barred ? SlotClass::barred_down : SlotClass::down;
    return barred ? SlotClass::barred_up : SlotClass::up;
  }();
  std::vector<BlockCounts> blocks;
  for (BundleTag bt : kBundleOrder) {
    BlockCounts b = t.signature().block(bt);
    if (bt == BundleTag::SU2) {
      auto& cnt = [&]() -> int& {
        switch (sl.cls) {
          case SlotClass::up: return b.up;
          case SlotClass::down: return b.down;
          case SlotClass::barred_up: return b.barred_up;
          default: return b.barred_down;
        }
      }();
      cnt -= 1;
      switch (dst) {
        case SlotClass::up: b.up += 1; break;
        case SlotClass::down: b.down += 1; break;
        case SlotClass::barred_up: b.barred_up += 1; break;
        default: b.barred_down += 1; break;
      }
    }
    blocks.push_back(b);
  }
  TypeSignature sig = TypeSignature::make(blocks);
  TensorField out(sig, t.chart(), t.frame());

  // axis permutation: the moved axis lands at the end of its new class
  const int dst_pos =
      sig.slot_offset(BundleTag::SU2, dst) + sig.count(BundleTag::SU2, dst) - 1;
  std::vector<int> src_axis(static_cast<size_t>(out.rank()));
  {
    std::vector<int> remaining;  // source axes except the moved one
    for (int a = 0; a < mixed.rank(); ++a)
      if (a != slot) remaining.push_back(a);
    size_t r = 0;
    for (int a = 0; a < out.rank(); ++a)
      src_axis[static_cast<size_t>(a)] =
          (a == dst_pos) ? slot : remaining[r++];
  }
  std::vector<int> ia(static_cast<size_t>(mixed.rank()), 0);
  detail::for_each_index(out.shape(), [&](std::span<const int> idx) {
    for (size_t r = 0; r < idx.size(); ++r)
      ia[static_cast<size_t>(src_axis[r])] = idx[r];
    out.at(idx) = mixed.at(ia);
  });
  return out;
}

/// Hermitian pairing of two single-up-slot vectors:
/// sum_{i,j} D(i, j) conj(X^j) Y^i. Antilinear in the first argument.
inline cplx hermitian_pairing(const HermitianMetric& dm, const TensorField& x,
                              const TensorField& y) {
  const auto check_vector = [&](const TensorField& v, const char* name) {
    const auto slots = v.signature().slots();
    if (slots.size() != 1 || slots[0].cls != SlotClass::up ||
        slots[0].tag != dm.tag())
      raise(errc::dimension_mismatch,
            std::string(name) + " must be a single unbarred up-slot vector on " +
                to_string(dm.tag()));
  };
  check_vector(x, "X");
  check_vector(y, "Y");
  if (x.chart() != y.chart())
    raise(errc::chart_mismatch, "pairing across charts");
  if (x.frame() != y.frame())
    raise(errc::frame_mismatch, "pairing across frames");
  cplx s = 0.0;
  for (int i = 0; i < dm.dim(); ++i)
    for (int j = 0; j < dm.dim(); ++j)
      s += dm.components()(i, j) * std::conj(x.components()[static_cast<size_t>(j)]) *
           y.components()[static_cast<size_t>(i)];
  return s;
}

struct ConcordanceCheck {
  bool concordant = false;
  double residual = 0.0;  // raw max-abs defect of the defining identity
  double scale = 1.0;     // tolerance is applied as residual <= tol * scale
};

/// Concordance of the Hermitian and skew metrics. Dim 2 tests that the
/// raised metric inverts the original one (both orders); dim 3 tests
/// sum_{ijk} d^{ijk} D(i,i') D(j,j') D(k,k') = conj(d_{i'j'k'}) and scales
/// the tolerance by |d_123| so the verdict is frame-independent.
inline ConcordanceCheck is_concordant(const HermitianMetric& dm,
                                      const SkewMetric& d, double tol) {
  if (dm.dim() != d.dim())
    raise(errc::dimension_mismatch, "metric dimensions disagree");
  require_covariant(d, "is_concordant");
  ConcordanceCheck out;
  if (dm.dim() == 2) {
    const Mat raised = raise_hermitian(dm, d);
    const Mat dmat = dm.components();
    const Mat id = Mat::identity(2);
    const double r1 = max_abs_diff(raised * dmat.transpose(), id);
    const double r2 = max_abs_diff(raised.transpose() * dmat, id);
    out.residual = std::max(r1, r2);
    out.scale = 1.0;
  } else {
    const cplx b = skew_inverse(d).scalar();
    const Mat& m = dm.components();
    double res = 0.0;
    for (int i1 = 0; i1 < 3; ++i1)
      for (int j1 = 0; j1 < 3; ++j1)
        for (int k1 = 0; k1 < 3; ++k1) {
          cplx lhs = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k) {
                const int sg = levi_civita3(i, j, k);
                if (sg == 0) continue;
                lhs += static_cast<double>(sg) * b * m(i, i1) * m(j, j1) * m(k, k1);
              }
          const cplx rhs =
              std::conj(static_cast<double>(levi_civita3(i1, j1, k1)) * d.scalar());
          res = std::max(res, std::abs(lhs - rhs));
        }
    out.residual = res;
    out.scale = std::abs(d.scalar());
  }
  out.concordant = out.residual <= tol * out.scale;
  return out;
}

/// Residual of the alternative dim-2 identity
/// sum_{ij} d^{ij} D(i,i') D(j,j') - conj(d_{i'j'}). At the canonical pair
/// D = I, d_12 = 1 this evaluates to 2 under the inverse convention used
/// here, so it serves as a diagnostic, not as the concordance predicate.
inline double concordance_residual_2d_alt(const HermitianMetric& dm,
                                          const SkewMetric& d) {
  if (dm.dim() != 2 || d.dim() != 2)
    raise(errc::dimension_mismatch, "the alternative identity is dim-2 only");
  require_covariant(d, "concordance_residual_2d_alt");
  const Mat du = skew_expand_matrix(skew_inverse(d));
  const Mat dl = skew_expand_matrix(d);
  const Mat& m = dm.components();
  double res = 0.0;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1) {
      cplx lhs = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) lhs += du(i, j) * m(i, i1) * m(j, j1);
      res = std::max(res, std::abs(lhs - std::conj(dl(i1, j1))));
    }
  return res;
}

struct OrthonormalityCheck {
  bool hermitian_ok = false;
  double hermitian_residual = 0.0;
  std::optional<bool> skew_ok;  // absent when no skew metric applies
  double skew_residual = std::nan("");

  bool ok() const { return hermitian_ok && skew_ok.value_or(true); }
};

/// Tests whether the frame the metric components are expressed in is
/// orthonormal: D(0,0) = 1 for dim 1, D = I and d_12 = 1 (resp. d_123 = 1)
/// for dims 2 and 3.
inline OrthonormalityCheck is_orthonormal(const HermitianMetric& dm,
                                          const SkewMetric* d, double tol) {
  OrthonormalityCheck out;
  if (dm.dim() == 1) {
    if (d != nullptr)
      raise(errc::dimension_mismatch, "U1 fibers carry no skew metric");
    out.hermitian_residual = std::abs(dm.components()(0, 0) - cplx(1.0));
  } else {
    out.hermitian_residual =
        max_abs_diff(dm.components(), Mat::identity(dm.dim()));
    if (d != nullptr) {
      if (d->dim() != dm.dim())
        raise(errc::dimension_mismatch, "metric dimensions disagree");
      require_covariant(*d, "is_orthonormal");
      out.skew_residual = std::abs(d->scalar() - cplx(1.0));
      out.skew_ok = out.skew_residual <= tol;
    }
  }
  out.hermitian_ok = out.hermitian_residual <= tol;
  return out;
}

/// Metric components after the frame change: Sᵗ D conj(S), assembled so
/// the result is exactly conjugate-symmetric and constructible.
inline HermitianMetric transform_hermitian(const HermitianMetric& dm,
                                           const Mat& s) {
  const int n = dm.dim();
  if (s.rows() != n || s.cols() != n)
    raise(errc::dimension_mismatch, "transition matrix shape mismatch");
  if (s.singular())
    raise(errc::singular_transition, "transition matrix is singular");
  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cplx v = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          v += s(p, i) * dm.components()(p, q) * std::conj(s(q, j));
      if (j == i) v = cplx(v.real(), 0.0);
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return HermitianMetric(dm.tag(), out);
}

/// Skew scalar after the frame change: the covariant scalar picks up
/// det(S), the contravariant one 1/det(S).
inline SkewMetric transform_skew(const SkewMetric& d, const Mat& s) {
  const int n = d.dim();
  if (s.rows() != n || s.cols() != n)
    raise(errc::dimension_mismatch, "transition matrix shape mismatch");
  if (s.singular())
    raise(errc::singular_transition, "transition matrix is singular");
  const cplx det = s.det();
  return SkewMetric(d.tag(),
                    d.contravariant() ? d.scalar() / det : d.scalar() * det,
                    d.contravariant());
}

}  // namespace gaugefiber
