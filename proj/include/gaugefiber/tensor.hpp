#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaugefiber/core.hpp"
#include "gaugefiber/signature.hpp"

namespace gaugefiber {

namespace detail {

/// Visits every multi-index of `shape` in row-major order.
template <typename F>
void for_each_index(std::span<const int> shape, F&& f) {
  std::vector<int> idx(shape.size(), 0);
  if (shape.empty()) {
    f(std::span<const int>(idx));
    return;
  }
  for (;;) {
    f(std::span<const int>(idx));
    int axis = static_cast<int>(shape.size()) - 1;
    while (axis >= 0) {
      if (++idx[static_cast<size_t>(axis)] < shape[static_cast<size_t>(axis)]) break;
      idx[static_cast<size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) return;
  }
}

inline std::vector<size_t> row_major_strides(std::span<const int> shape) {
  std::vector<size_t> strides(shape.size(), 1);
  for (int i = static_cast<int>(shape.size()) - 2; i >= 0; --i)
    strides[static_cast<size_t>(i)] =
        strides[static_cast<size_t>(i) + 1] *
        static_cast<size_t>(shape[static_cast<size_t>(i) + 1]);
  return strides;
}

}  // namespace detail

/// A sample of a tensor field: a dense complex component array in the
/// canonical slot order of its type signature, tagged with the chart and
/// frame the components refer to. Values are immutable in all library
/// operations; each operation returns a fresh field.
class TensorField {
 public:
  TensorField(TypeSignature sig, std::string chart, std::string frame)
      : sig_(std::move(sig)),
        chart_(std::move(chart)),
        frame_(std::move(frame)),
        shape_(sig_.shape()),
        strides_(detail::row_major_strides(shape_)) {
    size_t n = 1;
    for (int d : shape_) n *= static_cast<size_t>(d);
    comp_.assign(n, cplx(0.0, 0.0));
  }

  static TensorField scalar(cplx v, std::string chart, std::string frame) {
    TensorField t(TypeSignature{}, std::move(chart), std::move(frame));
    t.comp_[0] = v;
    return t;
  }

  const TypeSignature& signature() const { return sig_; }
  const std::string& chart() const { return chart_; }
  const std::string& frame() const { return frame_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::vector<cplx>& components() { return comp_; }
  const std::vector<cplx>& components() const { return comp_; }

  size_t flat_index(std::span<const int> idx) const {
    size_t f = 0;
    for (size_t a = 0; a < idx.size(); ++a)
      f += static_cast<size_t>(idx[a]) * strides_[a];
    return f;
  }

  cplx& at(std::span<const int> idx) { return comp_[flat_index(idx)]; }
  const cplx& at(std::span<const int> idx) const { return comp_[flat_index(idx)]; }
  cplx& at(std::initializer_list<int> idx) {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  const cplx& at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }

  void retag_frame(std::string frame) { frame_ = std::move(frame); }

 private:
  TypeSignature sig_;
  std::string chart_;
  std::string frame_;
  std::vector<int> shape_;
  std::vector<size_t> strides_;
  std::vector<cplx> comp_;
};

inline double max_abs_diff(const TensorField& a, const TensorField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.components().size(); ++i)
    m = std::max(m, std::abs(a.components()[i] - b.components()[i]));
  return m;
}

inline double max_abs(const TensorField& a) {
  double m = 0.0;
  for (const cplx& v : a.components()) m = std::max(m, std::abs(v));
  return m;
}

/// Outer product with axes re-sorted to canonical slot order. Within each
/// (block, class) group the left factor's slots precede the right's.
inline TensorField tensor_product(const TensorField& a, const TensorField& b) {
  if (a.chart() != b.chart())
    raise(errc::chart_mismatch, "tensor product across charts '" + a.chart() +
                                    "' and '" + b.chart() + "'");
  if (a.frame() != b.frame())
    raise(errc::frame_mismatch, "tensor product across frames '" + a.frame() +
                                    "' and '" + b.frame() + "'");
  TypeSignature sig = product_signature(a.signature(), b.signature());
  TensorField out(sig, a.chart(), a.frame());

  // result slot -> (source tensor, source slot)
  struct Src {
    bool from_b;
    int slot;
  };
  std::vector<Src> src;
  src.reserve(static_cast<size_t>(sig.rank()));
  for (BundleTag t : kBundleOrder)
    for (int ci = 0; ci < 4; ++ci) {
      const SlotClass c = static_cast<SlotClass>(ci);
      const int ka = a.signature().count(t, c);
      const int kb = b.signature().count(t, c);
      for (int k = 0; k < ka; ++k)
        src.push_back({false, a.signature().slot_offset(t, c) + k});
      for (int k = 0; k < kb; ++k)
        src.push_back({true, b.signature().slot_offset(t, c) + k});
    }

  std::vector<int> ia(static_cast<size_t>(a.rank()), 0);
  std::vector<int> ib(static_cast<size_t>(b.rank()), 0);
  detail::for_each_index(out.shape(), [&](std::span<const int> idx) {
    for (size_t r = 0; r < src.size(); ++r) {
      if (src[r].from_b)
        ib[static_cast<size_t>(src[r].slot)] = idx[r];
      else
        ia[static_cast<size_t>(src[r].slot)] = idx[r];
    }
    out.at(idx) = a.at(ia) * b.at(ib);
  });
  return out;
}

/// Sums the paired up/down slots over their shared fiber dimension and
/// drops them from the signature.
inline TensorField contract(const TensorField& a, int up_slot, int down_slot) {
  validate_contraction(a.signature(), up_slot, down_slot);
  TypeSignature sig = contracted_signature(a.signature(), up_slot, down_slot);
  TensorField out(sig, a.chart(), a.frame());

  const int dim = a.shape()[static_cast<size_t>(up_slot)];
  std::vector<int> keep;  // result axis -> source axis
  for (int s = 0; s < a.rank(); ++s)
    if (s != up_slot && s != down_slot) keep.push_back(s);

  std::vector<int> ia(static_cast<size_t>(a.rank()), 0);
  detail::for_each_index(out.shape(), [&](std::span<const int> idx) {
    for (size_t r = 0; r < keep.size(); ++r)
      ia[static_cast<size_t>(keep[r])] = idx[r];
    cplx s = 0.0;
    for (int k = 0; k < dim; ++k) {
      ia[static_cast<size_t>(up_slot)] = k;
      ia[static_cast<size_t>(down_slot)] = k;
      s += a.at(ia);
    }
    out.at(idx) = s;
  });
  return out;
}

/// The conjugation involution: swaps barred and unbarred slot classes in
/// every block and conjugates the components. Applying it twice restores
/// the argument bit for bit.
inline TensorField tau(const TensorField& a) {
  TypeSignature sig = tau_signature(a.signature());
  TensorField out(sig, a.chart(), a.frame());

  // result slot -> source slot: class k-th slot maps to the bar-swapped
  // class k-th slot, dimensions agree per block.
  const auto out_slots = sig.slots();
  std::vector<int> src_of(out_slots.size());
  for (size_t r = 0; r < out_slots.size(); ++r) {
    const auto& s = out_slots[r];
    src_of[r] = a.signature().slot_offset(s.tag, bar_swapped(s.cls)) +
                s.index_in_class;
  }

  std::vector<int> ia(static_cast<size_t>(a.rank()), 0);
  detail::for_each_index(out.shape(), [&](std::span<const int> idx) {
    for (size_t r = 0; r < src_of.size(); ++r)
      ia[static_cast<size_t>(src_of[r])] = idx[r];
    out.at(idx) = std::conj(a.at(ia));
  });
  return out;
}

/// A change of frame on one bundle at one point. `matrix` holds the new
/// frame's sections in the old frame: column i gives the coefficients of
/// the i-th new section.
struct FrameChange {
  std::string from;
  std::string to;
  BundleTag bundle;
  Mat matrix;
};

namespace detail {

/// out[..., i, ...] = sum_j m(i, j) * in[..., j, ...] along `axis`.
inline TensorField apply_axis(const TensorField& a, int axis, const Mat& m) {
  TensorField out(a.signature(), a.chart(), a.frame());
  const int dim = a.shape()[static_cast<size_t>(axis)];
  std::vector<int> ia(static_cast<size_t>(a.rank()), 0);
  detail::for_each_index(out.shape(), [&](std::span<const int> idx) {
    for (size_t r = 0; r < idx.size(); ++r) ia[r] = idx[r];
    cplx s = 0.0;
    for (int j = 0; j < dim; ++j) {
      ia[static_cast<size_t>(axis)] = j;
      s += m(idx[static_cast<size_t>(axis)], j) * a.at(ia);
    }
    out.at(idx) = s;
  });
  return out;
}

}  // namespace detail

/// Re-expresses the components in the target frame of `s`. Down slots of
/// the bundle transform with the transition matrix, up slots with its
/// inverse, barred slots with the conjugated matrices; slots of other
/// bundles are untouched. The result is tagged with the target frame.
inline TensorField change_frame(const TensorField& a, const FrameChange& s) {
  if (a.frame() != s.from)
    raise(errc::frame_mismatch, "tensor is in frame '" + a.frame() +
                                    "', transition starts at '" + s.from + "'");
  const int dim = fiber_dim(s.bundle);
  if (s.matrix.rows() != dim || s.matrix.cols() != dim)
    raise(errc::dimension_mismatch,
          std::string("transition matrix shape does not match the ") +
              to_string(s.bundle) + " fiber");
  if (s.matrix.singular())
    raise(errc::singular_transition, "transition matrix is singular");

  const Mat inv = s.matrix.inverse();
  const Mat by_class[4] = {
      inv,                   // up:          alpha~^i = sum_j inv(i,j) alpha^j
      s.matrix.transpose(),  // down:        alpha~_i = sum_j S(j,i) alpha_j
      inv.conjugate(),       // barred-up
      s.matrix.adjoint(),    // barred-down
  };

  TensorField out = a;
  const auto slots = a.signature().slots();
  for (size_t i = 0; i < slots.size(); ++i)
    if (slots[i].tag == s.bundle)
      out = detail::apply_axis(out, static_cast<int>(i),
                               by_class[static_cast<int>(slots[i].cls)]);
  out.retag_frame(s.to);
  return out;
}

}  // namespace gaugefiber
