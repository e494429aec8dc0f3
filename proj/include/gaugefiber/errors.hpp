#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaugefiber {

/// Failure codes shared by the whole library. Contract violations throw
/// Error; checks that can legitimately fail (concordance, cocycle, group
/// membership) return result structs instead.
enum class errc {
  // signatures and tensors
  duplicate_block,
  negative_count,
  frame_mismatch,
  chart_mismatch,
  slot_class_mismatch,
  slot_out_of_range,
  singular_transition,
  // metrics
  dimension_mismatch,
  variance_mismatch,
  zero_skew,
  unsupported_block,
  not_hermitian,
  not_positive_definite,
  not_concordant,
  // frames and groups
  not_square,
  singular_matrix,
  unsupported_dimension,
  // atlas
  no_overlap,
  unknown_frame,
  unknown_chart,
  unknown_point,
  bundle_mismatch,
  // type language
  syntax_error,
  block_count_error,
  context_mismatch,
  unknown_context,
  // documents
  document_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::duplicate_block: return "DuplicateBlock";
    case errc::negative_count: return "NegativeCount";
    case errc::frame_mismatch: return "FrameMismatch";
    case errc::chart_mismatch: return "ChartMismatch";
    case errc::slot_class_mismatch: return "SlotClassMismatch";
    case errc::slot_out_of_range: return "SlotOutOfRange";
    case errc::singular_transition: return "SingularTransition";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::variance_mismatch: return "VarianceMismatch";
    case errc::zero_skew: return "ZeroSkew";
    case errc::unsupported_block: return "UnsupportedBlock";
    case errc::not_hermitian: return "NotHermitian";
    case errc::not_positive_definite: return "NotPositiveDefinite";
    case errc::not_concordant: return "NotConcordant";
    case errc::not_square: return "NotSquare";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::unsupported_dimension: return "UnsupportedDimension";
    case errc::no_overlap: return "NoOverlap";
    case errc::unknown_frame: return "UnknownFrame";
    case errc::unknown_chart: return "UnknownChart";
    case errc::unknown_point: return "UnknownPoint";
    case errc::bundle_mismatch: return "BundleMismatch";
    case errc::syntax_error: return "SyntaxError";
    case errc::block_count_error: return "BlockCountError";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::unknown_context: return "UnknownContext";
    case errc::document_error: return "DocumentError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Error& with_residual(double r) {
    residual_ = r;
    return *this;
  }
  Error& with_position(std::ptrdiff_t p) {
    position_ = p;
    return *this;
  }

  errc code() const { return code_; }
  /// Residual attached to NotConcordant and friends; NaN when absent.
  double residual() const { return residual_; }
  /// 0-based offset into the offending input text; -1 when absent.
  std::ptrdiff_t position() const { return position_; }

 private:
  errc code_;
  double residual_ = std::nan("");
  std::ptrdiff_t position_ = -1;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gaugefiber
