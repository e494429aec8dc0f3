#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "gaugefiber/atlas.hpp"
#include "gaugefiber/report.hpp"

namespace gaugefiber {

inline constexpr const char* kFormatVersion = "gaugefiber-v1";

namespace detail {

using json = nlohmann::json;

inline cplx parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    raise(errc::document_error,
          where + ": a complex number is a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Mat parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    raise(errc::document_error, where + ": expected a non-empty matrix");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty())
    raise(errc::document_error, where + ": matrix rows must be arrays");
  const int cols = static_cast<int>(j[0].size());
  if (rows > 4 || cols > 4)
    raise(errc::document_error, where + ": matrix larger than 4x4");
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      raise(errc::document_error, where + ": ragged matrix rows");
    for (int jj = 0; jj < cols; ++jj)
      m(i, jj) = parse_complex(row[static_cast<size_t>(jj)],
                               where + "[" + std::to_string(i) + "][" +
                                   std::to_string(jj) + "]");
  }
  return m;
}

inline BundleTag parse_bundle(const json& j, const std::string& where) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "U1") return BundleTag::U1;
  if (s == "SU2") return BundleTag::SU2;
  if (s == "SU3") return BundleTag::SU3;
  raise(errc::document_error,
        where + ": bundle must be one of U1, SU2, SU3, got '" + s + "'");
}

}  // namespace detail

/// Builds an Atlas from a parsed document. Structural problems (bad
/// version, unresolved ids, malformed matrices) raise DocumentError;
/// metric values are taken as-is and judged by the checks.
inline Atlas load_document(const nlohmann::json& doc) {
  using detail::parse_bundle;
  using detail::parse_complex;
  using detail::parse_matrix;
  if (!doc.is_object())
    raise(errc::document_error, "document root must be an object");
  if (!doc.contains("format") || doc["format"] != kFormatVersion)
    raise(errc::document_error,
          std::string("format field must be \"") + kFormatVersion + "\"");

  Atlas atlas;
  if (!doc.contains("charts") || !doc["charts"].is_array())
    raise(errc::document_error, "missing charts array");
  for (const auto& jc : doc["charts"]) {
    Chart c;
    if (!jc.contains("id") || !jc["id"].is_string())
      raise(errc::document_error, "chart without a string id");
    c.id = jc["id"].get<std::string>();
    if (!jc.contains("points") || !jc["points"].is_array())
      raise(errc::document_error, "chart '" + c.id + "' without points");
    for (const auto& p : jc["points"]) {
      if (!p.is_string())
        raise(errc::document_error, "chart '" + c.id + "' has a non-string point");
      c.points.push_back(p.get<std::string>());
    }
    atlas.add_chart(std::move(c));
  }

  for (const auto& jf : doc.value("frames", nlohmann::json::array())) {
    Frame f;
    if (!jf.contains("id") || !jf["id"].is_string())
      raise(errc::document_error, "frame without a string id");
    f.id = jf["id"].get<std::string>();
    if (!jf.contains("chart") || !jf["chart"].is_string())
      raise(errc::document_error, "frame '" + f.id + "' without a chart");
    f.chart = jf["chart"].get<std::string>();
    f.bundle = parse_bundle(jf.value("bundle", nlohmann::json()),
                            "frame '" + f.id + "'");
    if (!jf.contains("basis") || !jf["basis"].is_object())
      raise(errc::document_error, "frame '" + f.id + "' without basis matrices");
    for (const auto& [point, jm] : jf["basis"].items())
      f.basis.emplace(point, parse_matrix(jm, "frame '" + f.id + "' basis at '" +
                                                  point + "'"));
    atlas.add_frame(std::move(f));
  }

  for (const auto& jm : doc.value("metrics", nlohmann::json::array())) {
    const BundleTag tag =
        parse_bundle(jm.value("bundle", nlohmann::json()), "metrics entry");
    if (!jm.contains("hermitian") || !jm["hermitian"].is_object())
      raise(errc::document_error,
            std::string(to_string(tag)) + " metrics without hermitian samples");
    const bool has_skew = jm.contains("skew");
    if (has_skew && !jm["skew"].is_object())
      raise(errc::document_error,
            std::string(to_string(tag)) + " skew samples must be an object");
    for (const auto& [point, jmat] : jm["hermitian"].items()) {
      std::optional<cplx> skew;
      if (has_skew && jm["skew"].contains(point))
        skew = parse_complex(jm["skew"][point], std::string(to_string(tag)) +
                                                    " skew at '" + point + "'");
      atlas.set_metric(tag, point,
                       parse_matrix(jmat, std::string(to_string(tag)) +
                                              " hermitian at '" + point + "'"),
                       skew);
    }
  }

  for (const auto& jt : doc.value("transitions", nlohmann::json::array())) {
    TransitionMap t;
    if (!jt.contains("from") || !jt.contains("to") ||
        !jt["from"].is_string() || !jt["to"].is_string())
      raise(errc::document_error, "transition without from/to frame ids");
    t.from = jt["from"].get<std::string>();
    t.to = jt["to"].get<std::string>();
    if (!jt.contains("matrices") || !jt["matrices"].is_object())
      raise(errc::document_error, "transition '" + t.from + "' -> '" + t.to +
                                      "' without matrices");
    for (const auto& [point, jm] : jt["matrices"].items())
      t.matrices.emplace(point,
                         parse_matrix(jm, "transition '" + t.from + "' -> '" +
                                              t.to + "' at '" + point + "'"));
    atlas.add_transition(std::move(t));
  }

  atlas.validate();
  return atlas;
}

/// Loads and validates a document file. Parse errors surface with the
/// byte position nlohmann reports.
inline Atlas load_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::document_error, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise(errc::document_error, "'" + path + "': " + e.what());
  }
  return load_document(doc);
}

inline nlohmann::ordered_json to_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  nlohmann::ordered_json loc;
  for (const auto& [k, v] : r.location) loc[k] = v;
  j["location"] = loc;
  j["pass"] = r.pass;
  if (!std::isnan(r.residual)) j["residual"] = r.residual;
  if (!r.group.empty()) j["group"] = r.group;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline nlohmann::ordered_json to_json(const AuditReport& rep) {
  nlohmann::ordered_json j;
  j["tol"] = rep.tol;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckRecord& r : rep.records) j["checks"].push_back(to_json(r));
  j["verdict"] = rep.ok() ? "PASS" : "FAIL";
  return j;
}

}  // namespace gaugefiber
