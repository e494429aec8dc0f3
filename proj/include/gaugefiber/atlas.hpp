#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gaugefiber/frames.hpp"
#include "gaugefiber/metrics.hpp"
#include "gaugefiber/report.hpp"

namespace gaugefiber {

/// Finite sample of an open domain: a named set of point ids.
struct Chart {
  std::string id;
  std::vector<std::string> points;  // kept sorted and unique
};

/// Local frame of one bundle over a chart. The basis matrix at a point
/// expresses the frame's sections in the reference trivialization shared
/// by all charts: column i holds the coefficients of the i-th section.
struct Frame {
  std::string id;
  std::string chart;
  BundleTag bundle;
  std::map<std::string, Mat> basis;
};

/// Explicit transition data imported from a document; audits compare it
/// against the transitions the stored bases imply.
struct TransitionMap {
  std::string from;
  std::string to;
  std::map<std::string, Mat> matrices;
};

/// Raw per-point metric components in the reference trivialization. Kept
/// unvalidated here; checks construct the typed metrics and report
/// construction failures instead of refusing to load.
struct MetricSample {
  Mat hermitian;
  std::optional<cplx> skew;
};

/// Charts, frames, per-point metric fields and imported transitions of
/// one document. Immutable after validate(); every query is pure.
class Atlas {
 public:
  void add_chart(Chart c) {
    if (charts_.count(c.id))
      raise(errc::document_error, "duplicate chart id '" + c.id + "'");
    std::sort(c.points.begin(), c.points.end());
    c.points.erase(std::unique(c.points.begin(), c.points.end()),
                   c.points.end());
    charts_.emplace(c.id, std::move(c));
  }

  void add_frame(Frame f) {
    if (frames_.count(f.id))
      raise(errc::document_error, "duplicate frame id '" + f.id + "'");
    frames_.emplace(f.id, std::move(f));
  }

  void set_metric(BundleTag tag, const std::string& point, Mat hermitian,
                  std::optional<cplx> skew) {
    metrics_[tag].insert_or_assign(point,
                                   MetricSample{std::move(hermitian), skew});
  }

  void add_transition(TransitionMap t) { transitions_.push_back(std::move(t)); }

  /// Structural invariants: ids resolve, bases cover their charts and are
  /// invertible, metric samples are well-shaped and present wherever a
  /// frame lives, transitions connect same-bundle frames on overlaps.
  void validate() const {
    for (const auto& [id, c] : charts_)
      if (c.points.empty())
        raise(errc::document_error, "chart '" + id + "' has no points");
    for (const auto& [id, f] : frames_) {
      auto ci = charts_.find(f.chart);
      if (ci == charts_.end())
        raise(errc::unknown_chart,
              "frame '" + id + "' names missing chart '" + f.chart + "'");
      if (f.bundle != BundleTag::U1 && f.bundle != BundleTag::SU2 &&
          f.bundle != BundleTag::SU3)
        raise(errc::document_error, "frame '" + id + "' has unsupported bundle");
      const int n = fiber_dim(f.bundle);
      for (const std::string& p : ci->second.points) {
        auto bi = f.basis.find(p);
        if (bi == f.basis.end())
          raise(errc::document_error,
                "frame '" + id + "' lacks a basis at point '" + p + "'");
        const Mat& b = bi->second;
        if (b.rows() != n || b.cols() != n)
          raise(errc::document_error, "frame '" + id + "' basis at '" + p +
                                          "' has the wrong shape");
        if (b.singular())
          raise(errc::document_error, "frame '" + id + "' basis at '" + p +
                                          "' is singular");
      }
      if (f.basis.size() != ci->second.points.size())
        raise(errc::document_error,
              "frame '" + id + "' has bases at points outside its chart");
      auto mi = metrics_.find(f.bundle);
      for (const std::string& p : ci->second.points)
        if (mi == metrics_.end() || !mi->second.count(p))
          raise(errc::document_error,
                std::string("no ") + to_string(f.bundle) + " metric at point '" +
                    p + "' of chart '" + f.chart + "'");
    }
    for (const auto& [tag, samples] : metrics_) {
      const int n = fiber_dim(tag);
      const bool needs_skew = tag == BundleTag::SU2 || tag == BundleTag::SU3;
      for (const auto& [p, s] : samples) {
        if (s.hermitian.rows() != n || s.hermitian.cols() != n)
          raise(errc::document_error, std::string(to_string(tag)) +
                                          " metric at '" + p +
                                          "' has the wrong shape");
        if (needs_skew && !s.skew)
          raise(errc::document_error, std::string(to_string(tag)) +
                                          " metric at '" + p +
                                          "' lacks the skew scalar");
      }
    }
    for (const TransitionMap& t : transitions_) {
      const Frame& a = frame(t.from);
      const Frame& b = frame(t.to);
      if (a.bundle != b.bundle)
        raise(errc::bundle_mismatch, "transition '" + t.from + "' -> '" +
                                         t.to + "' crosses bundles");
      if (t.matrices.empty())
        raise(errc::document_error, "transition '" + t.from + "' -> '" +
                                        t.to + "' has no points");
      const auto ov = overlap(a.chart, b.chart);
      const int n = fiber_dim(a.bundle);
      for (const auto& [p, m] : t.matrices) {
        if (!std::binary_search(ov.begin(), ov.end(), p))
          raise(errc::document_error, "transition '" + t.from + "' -> '" +
                                          t.to + "' lists point '" + p +
                                          "' outside the overlap");
        if (m.rows() != n || m.cols() != n)
          raise(errc::document_error, "transition '" + t.from + "' -> '" +
                                          t.to + "' matrix at '" + p +
                                          "' has the wrong shape");
      }
    }
  }

  const std::map<std::string, Chart>& charts() const { return charts_; }
  const std::map<std::string, Frame>& frames() const { return frames_; }
  const std::map<BundleTag, std::map<std::string, MetricSample>>& metrics()
      const {
    return metrics_;
  }
  const std::vector<TransitionMap>& transitions() const { return transitions_; }

  const Chart& chart(const std::string& id) const {
    auto it = charts_.find(id);
    if (it == charts_.end())
      raise(errc::unknown_chart, "unknown chart '" + id + "'");
    return it->second;
  }

  const Frame& frame(const std::string& id) const {
    auto it = frames_.find(id);
    if (it == frames_.end())
      raise(errc::unknown_frame, "unknown frame '" + id + "'");
    return it->second;
  }

  /// Sorted intersection of two charts' point sets.
  std::vector<std::string> overlap(const std::string& chart_a,
                                   const std::string& chart_b) const {
    const Chart& a = chart(chart_a);
    const Chart& b = chart(chart_b);
    std::vector<std::string> out;
    std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(),
                          b.points.end(), std::back_inserter(out));
    return out;
  }

  const MetricSample& metric_at(BundleTag tag, const std::string& point) const {
    auto mi = metrics_.find(tag);
    if (mi == metrics_.end() || !mi->second.count(point))
      raise(errc::unknown_point, std::string("no ") + to_string(tag) +
                                     " metric at point '" + point + "'");
    return mi->second.at(point);
  }

 private:
  std::map<std::string, Chart> charts_;
  std::map<std::string, Frame> frames_;
  std::map<BundleTag, std::map<std::string, MetricSample>> metrics_;
  std::vector<TransitionMap> transitions_;
};

/// Transition matrix relating two frames at a shared point: the matrix S
/// with b's sections = sum_j S^j_i a's sections, computed from the stored
/// bases as B_a^{-1} B_b.
inline Mat transition_matrix(const Atlas& atlas, const std::string& a,
                             const std::string& b, const std::string& p) {
  const Frame& fa = atlas.frame(a);
  const Frame& fb = atlas.frame(b);
  if (fa.bundle != fb.bundle)
    raise(errc::bundle_mismatch,
          "frames '" + a + "' and '" + b + "' live on different bundles");
  if (!fa.basis.count(p) || !fb.basis.count(p))
    raise(errc::no_overlap, "point '" + p + "' is not shared by frames '" + a +
                                "' and '" + b + "'");
  return fa.basis.at(p).inverse() * fb.basis.at(p);
}

namespace detail {

/// Imported transition matrix when the document provides one for exactly
/// this frame pair and point; otherwise the basis-derived matrix.
inline Mat stored_or_derived_transition(const Atlas& atlas,
                                        const std::string& a,
                                        const std::string& b,
                                        const std::string& p) {
  for (const TransitionMap& t : atlas.transitions())
    if (t.from == a && t.to == b) {
      auto it = t.matrices.find(p);
      if (it != t.matrices.end()) return it->second;
    }
  return transition_matrix(atlas, a, b, p);
}

}  // namespace detail

struct CocycleCheck {
  bool ok = false;
  double max_residual = 0.0;
  std::string worst_point;
  int points_checked = 0;
};

/// Triple-overlap consistency: || S_{a->c} - S_{b->c} S_{a->b} || <= tol at
/// every shared point. Imported transitions are used where present, so a
/// corrupted import surfaces here with a residual of its own size.
inline CocycleCheck check_cocycle(const Atlas& atlas, const std::string& a,
                                  const std::string& b, const std::string& c,
                                  double tol) {
  const Frame& fa = atlas.frame(a);
  const Frame& fb = atlas.frame(b);
  const Frame& fc = atlas.frame(c);
  if (fa.bundle != fb.bundle || fa.bundle != fc.bundle)
    raise(errc::bundle_mismatch, "cocycle frames must share a bundle");
  std::vector<std::string> shared = atlas.overlap(fa.chart, fb.chart);
  {
    const auto bc = atlas.overlap(fb.chart, fc.chart);
    std::vector<std::string> tmp;
    std::set_intersection(shared.begin(), shared.end(), bc.begin(), bc.end(),
                          std::back_inserter(tmp));
    shared = std::move(tmp);
  }
  if (shared.empty())
    raise(errc::no_overlap, "frames '" + a + "', '" + b + "', '" + c +
                                "' have no common point");
  CocycleCheck out;
  for (const std::string& p : shared) {
    const Mat s_ab = detail::stored_or_derived_transition(atlas, a, b, p);
    const Mat s_bc = detail::stored_or_derived_transition(atlas, b, c, p);
    const Mat s_ac = detail::stored_or_derived_transition(atlas, a, c, p);
    const double r = max_abs_diff(s_ac, s_bc * s_ab);
    if (r >= out.max_residual) {
      out.max_residual = r;
      out.worst_point = p;
    }
    ++out.points_checked;
  }
  out.ok = out.max_residual <= tol;
  return out;
}

namespace detail {

/// Metric components seen from a frame: the reference-frame samples pushed
/// through the frame's basis matrix.
struct FrameMetrics {
  HermitianMetric hermitian;
  std::optional<SkewMetric> skew;
};

inline FrameMetrics metrics_in_frame(const Atlas& atlas, const Frame& f,
                                     const std::string& p) {
  const MetricSample& s = atlas.metric_at(f.bundle, p);
  HermitianMetric dm(f.bundle, s.hermitian);
  const Mat& basis = f.basis.at(p);
  FrameMetrics out{transform_hermitian(dm, basis), std::nullopt};
  if (s.skew) {
    SkewMetric d(f.bundle, *s.skew);
    out.skew = transform_skew(d, basis);
  }
  return out;
}

}  // namespace detail

/// Full verification pass over an atlas. Per bundle it checks metric
/// validity and concordance at every charted point, orthonormalizes every
/// frame pointwise, classifies all transitions between the orthonormalized
/// frames on overlaps against the bundle's structural group, and compares
/// imported transitions with the basis-derived ones. Failures are reported
/// per location; nothing throws.
inline AuditReport audit_atlas(const Atlas& atlas, double tol) {
  AuditReport report;
  report.tol = tol;

  // concordance / positivity of the metric samples, located per chart
  for (const auto& [tag, samples] : atlas.metrics()) {
    for (const auto& [cid, chart] : atlas.charts()) {
      for (const std::string& p : chart.points) {
        auto si = samples.find(p);
        if (si == samples.end()) continue;
        CheckRecord rec;
        rec.location = {{"bundle", to_string(tag)}, {"chart", cid},
                        {"point", p}};
        if (tag == BundleTag::U1) {
          rec.check = "metric-positive";
          try {
            HermitianMetric dm(tag, si->second.hermitian);
            rec.pass = true;
            rec.residual = std::abs(dm.components()(0, 0).imag());
          } catch (const Error& e) {
            rec.pass = false;
            rec.detail = errc_name(e.code());
          }
        } else {
          rec.check = "concordance";
          try {
            HermitianMetric dm(tag, si->second.hermitian);
            SkewMetric d(tag, si->second.skew.value_or(cplx(0.0)));
            const ConcordanceCheck c = is_concordant(dm, d, tol);
            rec.pass = c.concordant;
            rec.residual = c.residual;
            if (!c.concordant) rec.detail = errc_name(errc::not_concordant);
          } catch (const Error& e) {
            rec.pass = false;
            rec.detail = errc_name(e.code());
          }
        }
        report.records.push_back(std::move(rec));
      }
    }
  }

  // orthonormalize every frame at every point; remember the results so the
  // transition checks reuse them
  std::map<std::pair<std::string, std::string>, Mat> ortho_basis;
  for (const auto& [fid, f] : atlas.frames()) {
    for (const std::string& p : atlas.chart(f.chart).points) {
      CheckRecord rec;
      rec.check = "frame-orthonormalize";
      rec.location = {{"bundle", to_string(f.bundle)}, {"frame", fid},
                      {"point", p}};
      try {
        const detail::FrameMetrics fm = detail::metrics_in_frame(atlas, f, p);
        const Orthonormalization o = orthonormalize(
            fm.hermitian, fm.skew ? &*fm.skew : nullptr, tol);
        rec.pass = true;
        rec.residual = std::max(o.post.hermitian_residual,
                                fm.skew ? o.post.skew_residual : 0.0);
        ortho_basis.emplace(std::make_pair(fid, p),
                            f.basis.at(p) * o.transition);
      } catch (const Error& e) {
        rec.pass = false;
        rec.detail = errc_name(e.code());
        if (!std::isnan(e.residual())) rec.residual = e.residual();
      }
      report.records.push_back(std::move(rec));
    }
  }

  // transitions between orthonormalized frames must lie in the bundle's
  // structural group
  for (auto ai = atlas.frames().begin(); ai != atlas.frames().end(); ++ai) {
    for (auto bi = std::next(ai); bi != atlas.frames().end(); ++bi) {
      const Frame& fa = ai->second;
      const Frame& fb = bi->second;
      if (fa.bundle != fb.bundle) continue;
      for (const std::string& p : atlas.overlap(fa.chart, fb.chart)) {
        CheckRecord rec;
        rec.check = "transition-group";
        rec.location = {{"bundle", to_string(fa.bundle)}, {"from", ai->first},
                        {"to", bi->first}, {"point", p}};
        auto oa = ortho_basis.find(std::make_pair(ai->first, p));
        auto ob = ortho_basis.find(std::make_pair(bi->first, p));
        if (oa == ortho_basis.end() || ob == ortho_basis.end()) {
          rec.pass = false;
          rec.detail = "orthonormalization failed at this point";
        } else {
          const Mat s = oa->second.inverse() * ob->second;
          const GroupClassification g = classify_group(s, tol);
          rec.group = to_string(g.tag);
          rec.residual = std::max(g.unitarity_residual, g.det_residual);
          rec.pass = g.tag == expected_group(fa.bundle);
          if (!rec.pass) rec.detail = "transition leaves the structural group";
        }
        report.records.push_back(std::move(rec));
      }
    }
  }

  // imported transitions must match the ones the bases imply
  for (const TransitionMap& t : atlas.transitions()) {
    for (const auto& [p, m] : t.matrices) {
      CheckRecord rec;
      rec.check = "transition-consistency";
      rec.location = {{"bundle", to_string(atlas.frame(t.from).bundle)},
                      {"from", t.from}, {"to", t.to}, {"point", p}};
      const Mat derived = transition_matrix(atlas, t.from, t.to, p);
      rec.residual = max_abs_diff(m, derived);
      rec.pass = rec.residual <= tol;
      if (!rec.pass) rec.detail = "imported transition disagrees with bases";
      report.records.push_back(std::move(rec));
    }
  }

  report.finalize();
  return report;
}

}  // namespace gaugefiber
