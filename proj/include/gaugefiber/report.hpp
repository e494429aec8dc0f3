#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gaugefiber/core.hpp"

namespace gaugefiber {

/// One verified fact: which check ran, where, and how it went. Location
/// entries are ordered (key, value) pairs so reports render and sort the
/// same way on every run.
struct CheckRecord {
  std::string check;
  std::vector<std::pair<std::string, std::string>> location;
  bool pass = false;
  double residual = std::nan("");  // NaN when the check has no residual
  std::string group;               // classification tag when applicable
  std::string detail;              // failure reason or note

  std::string location_text() const {
    std::string s;
    for (const auto& [k, v] : location) {
      if (!s.empty()) s += " ";
      s += k + "=" + v;
    }
    return s;
  }

  std::string to_line() const {
    std::string s = pass ? "PASS " : "FAIL ";
    s += check;
    const std::string loc = location_text();
    if (!loc.empty()) s += " " + loc;
    if (!std::isnan(residual)) s += " residual=" + fmt_sci(residual);
    if (!group.empty()) s += " group=" + group;
    if (!detail.empty()) s += " (" + detail + ")";
    return s;
  }
};

struct AuditReport {
  double tol = 0.0;
  std::vector<CheckRecord> records;

  bool ok() const {
    return std::all_of(records.begin(), records.end(),
                       [](const CheckRecord& r) { return r.pass; });
  }

  size_t failed_count() const {
    size_t n = 0;
    for (const auto& r : records)
      if (!r.pass) ++n;
    return n;
  }

  /// Deterministic order: by check name, then by location values.
  void finalize() {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) {
                       if (a.check != b.check) return a.check < b.check;
                       return a.location_text() < b.location_text();
                     });
  }

  std::string to_text() const {
    std::string s;
    for (const auto& r : records) s += r.to_line() + "\n";
    s += "verdict: ";
    s += ok() ? "PASS" : "FAIL";
    s += " (" + std::to_string(records.size()) + " checks, " +
         std::to_string(failed_count()) + " failed, tol " + fmt_sci(tol) + ")\n";
    return s;
  }
};

}  // namespace gaugefiber
