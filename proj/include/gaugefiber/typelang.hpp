#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaugefiber/signature.hpp"

namespace gaugefiber {

/// A signature string like "(0,1|0,1)" is ambiguous on its own: the same
/// tuple shape is reused for every bundle family. A context fixes how the
/// '|'-separated pairs map onto (bundle, barred-or-not) slots.
struct SignatureContext {
  std::string name;
  struct PairSlot {
    BundleTag tag;
    bool barred;
  };
  std::vector<PairSlot> pairs;  // 1..6 of them
};

inline const std::vector<SignatureContext>& signature_contexts() {
  using B = BundleTag;
  static const std::vector<SignatureContext> ctxs = {
      {"u1", {{B::U1, false}, {B::U1, true}}},
      {"su2", {{B::SU2, false}, {B::SU2, true}}},
      {"su3", {{B::SU3, false}, {B::SU3, true}}},
      {"dirac", {{B::Dirac, false}, {B::Dirac, true}}},
      {"tangent", {{B::Tangent, false}}},
      {"spin", {{B::Dirac, false}, {B::Dirac, true}, {B::Tangent, false}}},
      {"ew",
       {{B::SU2, false}, {B::SU2, true}, {B::U1, false}, {B::U1, true}}},
      {"color",
       {{B::SU3, false},
        {B::SU3, true},
        {B::SU2, false},
        {B::SU2, true},
        {B::U1, false},
        {B::U1, true}}},
  };
  return ctxs;
}

/// Resolves a context by name; "lepton" is the electro-weak ordering and
/// "quark" the color ordering, matching the composite bundle types.
inline const SignatureContext& context(std::string_view name) {
  std::string_view looked = name;
  if (name == "lepton") looked = "ew";
  if (name == "quark") looked = "color";
  for (const SignatureContext& c : signature_contexts())
    if (c.name == looked) return c;
  raise(errc::unknown_context, "unknown context '" + std::string(name) + "'");
}

inline std::vector<std::string> context_names() {
  std::vector<std::string> out;
  for (const SignatureContext& c : signature_contexts()) out.push_back(c.name);
  out.push_back("lepton");
  out.push_back("quark");
  return out;
}

namespace detail {

inline TypeSignature assemble_signature(
    const SignatureContext& ctx, std::span<const std::pair<int, int>> pairs) {
  if (pairs.size() != ctx.pairs.size())
    raise(errc::block_count_error,
          "context '" + ctx.name + "' expects " +
              std::to_string(ctx.pairs.size()) + " pairs, got " +
              std::to_string(pairs.size()));
  std::vector<BlockCounts> blocks;
  for (BundleTag t : kBundleOrder) blocks.push_back({t, 0, 0, 0, 0});
  for (size_t k = 0; k < pairs.size(); ++k) {
    const auto [first, second] = pairs[k];
    if (first < 0 || second < 0)
      raise(errc::negative_count, "negative slot count in pair " +
                                      std::to_string(k + 1));
    BlockCounts& b = blocks[static_cast<size_t>(ctx.pairs[k].tag)];
    if (ctx.pairs[k].barred) {
      b.barred_up += first;
      b.barred_down += second;
    } else {
      b.up += first;
      b.down += second;
    }
  }
  return TypeSignature::make(blocks);
}

}  // namespace detail

/// Parses the tuple grammar
///   SIG  := '(' PAIR ('|' PAIR)* ')'
///   PAIR := INT ',' INT
/// with whitespace ignored between tokens. Syntax errors carry the 0-based
/// offset of the offending character; a pair count that does not match the
/// context is a BlockCountError.
inline TypeSignature parse_signature(std::string_view text,
                                     const SignatureContext& ctx) {
  size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
      ++pos;
  };
  const auto fail = [&](const std::string& what) -> void {
    throw Error(errc::syntax_error,
                what + " at position " + std::to_string(pos))
        .with_position(static_cast<std::ptrdiff_t>(pos));
  };
  const auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  };
  const auto parse_int = [&]() -> int {
    skip_ws();
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
      fail("expected a digit");
    long v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      if (v > 999) fail("slot count too large");
      ++pos;
    }
    return static_cast<int>(v);
  };

  expect('(');
  std::vector<std::pair<int, int>> pairs;
  for (;;) {
    const int a = parse_int();
    expect(',');
    const int b = parse_int();
    pairs.emplace_back(a, b);
    skip_ws();
    if (pos < text.size() && text[pos] == '|') {
      ++pos;
      continue;
    }
    break;
  }
  expect(')');
  skip_ws();
  if (pos != text.size()) fail("trailing input");
  return detail::assemble_signature(ctx, pairs);
}

/// Canonical text of a signature in a context. Inverse of parse_signature
/// on canonical text. Signatures with slots outside the context's pairs
/// cannot be rendered and raise ContextMismatch.
inline std::string print_signature(const TypeSignature& sig,
                                   const SignatureContext& ctx) {
  bool covered[5][2] = {};
  std::string out = "(";
  for (size_t k = 0; k < ctx.pairs.size(); ++k) {
    const auto [tag, barred] = ctx.pairs[k];
    covered[static_cast<int>(tag)][barred ? 1 : 0] = true;
    const int a = sig.count(tag, barred ? SlotClass::barred_up : SlotClass::up);
    const int b =
        sig.count(tag, barred ? SlotClass::barred_down : SlotClass::down);
    if (k) out += "|";
    out += std::to_string(a) + "," + std::to_string(b);
  }
  out += ")";
  for (BundleTag t : kBundleOrder)
    for (int barred = 0; barred < 2; ++barred)
      if (!covered[static_cast<int>(t)][barred]) {
        const SlotClass u = barred ? SlotClass::barred_up : SlotClass::up;
        const SlotClass d = barred ? SlotClass::barred_down : SlotClass::down;
        if (sig.count(t, u) || sig.count(t, d))
          raise(errc::context_mismatch,
                std::string("signature has ") + (barred ? "barred " : "") +
                    to_string(t) + " slots, which context '" + ctx.name +
                    "' cannot express");
      }
  return out;
}

enum class ParticleKind { lepton, quark };

/// Composite wave-function type. Lepton fields take seven pairs
/// (SU2 | SU2-barred | U1 | U1-barred | Dirac | Dirac-barred | Tangent);
/// quark fields prepend the color pairs (SU3 | SU3-barred) for nine.
inline TypeSignature bundle_signature(
    ParticleKind kind, std::span<const std::pair<int, int>> counts) {
  using B = BundleTag;
  std::vector<SignatureContext::PairSlot> order;
  if (kind == ParticleKind::quark)
    order.insert(order.end(), {{B::SU3, false}, {B::SU3, true}});
  order.insert(order.end(), {{B::SU2, false},
                             {B::SU2, true},
                             {B::U1, false},
                             {B::U1, true},
                             {B::Dirac, false},
                             {B::Dirac, true},
                             {B::Tangent, false}});
  SignatureContext ctx{kind == ParticleKind::quark ? "quark-composite"
                                                   : "lepton-composite",
                       std::move(order)};
  return detail::assemble_signature(ctx, counts);
}

inline TypeSignature bundle_signature(
    ParticleKind kind, std::initializer_list<std::pair<int, int>> counts) {
  return bundle_signature(
      kind, std::span<const std::pair<int, int>>(counts.begin(), counts.size()));
}

/// One row of the built-in field catalog. `spin_type` is the Dirac/Tangent
/// part every field carries; extension fields add a `bundle_type` row in
/// their own context. `signature` is the parsed combination of both rows.
struct FieldRegistryEntry {
  std::string group;         // "base" | "ew" | "color"
  std::string symbol;        // ASCII name used in file formats
  std::vector<std::string> aliases;  // accented originals
  std::string display_name;
  std::string spin_type;
  std::string bundle_context;  // "" for base entries
  std::string bundle_type;     // "" for base entries
  TypeSignature signature;
};

/// The basic fields of the three bundle families, signatures verbatim.
inline const std::vector<FieldRegistryEntry>& builtin_registry() {
  static const std::vector<FieldRegistryEntry> entries = [] {
    struct Row {
      const char* group;
      const char* symbol;
      std::vector<std::string> aliases;
      const char* display;
      const char* spin;
      const char* bctx;
      const char* btype;
    };
    const std::vector<Row> rows = {
        {"base", "g", {}, "Metric tensor", "(0,0|0,0|0,2)", "", ""},
        {"base", "d", {}, "Skew-symmetric metric tensor", "(0,2|0,0|0,0)", "",
         ""},
        {"base", "H", {}, "Chirality operator", "(1,1|0,0|0,0)", "", ""},
        {"base", "D", {}, "Dirac form", "(0,1|0,1|0,0)", "", ""},
        {"base", "gamma", {"γ"}, "Dirac gamma-field", "(1,1|0,0|1,0)", "",
         ""},
        {"ew", "D1", {"D́"}, "Hermitian metric tensor (single-tick D)",
         "(0,0|0,0|0,0)", "ew", "(0,0|0,0|0,1|0,1)"},
        {"ew", "D2", {"D̋"}, "Hermitian metric tensor (double-tick D)",
         "(0,0|0,0|0,0)", "ew", "(0,1|0,1|0,0|0,0)"},
        {"ew", "d2", {"d̋"},
         "Skew-symmetric metric tensor (double-tick d)", "(0,0|0,0|0,0)", "ew",
         "(0,2|0,0|0,0|0,0)"},
        {"color", "D1", {"D́"}, "Hermitian metric tensor (single-tick D)",
         "(0,0|0,0|0,0)", "color", "(0,0|0,0|0,0|0,0|0,1|0,1)"},
        {"color", "D2", {"D̋"}, "Hermitian metric tensor (double-tick D)",
         "(0,0|0,0|0,0)", "color", "(0,0|0,0|0,1|0,1|0,0|0,0)"},
        {"color", "d2", {"d̋"},
         "Skew-symmetric metric tensor (double-tick d)", "(0,0|0,0|0,0)",
         "color", "(0,0|0,0|0,2|0,0|0,0|0,0)"},
        {"color", "D3", {"D̏"}, "Hermitian metric tensor (triple-tick D)",
         "(0,0|0,0|0,0)", "color", "(0,1|0,1|0,0|0,0|0,0|0,0)"},
        {"color", "d3", {"d̏"},
         "Completely skew-symmetric tensor (triple-tick d)", "(0,0|0,0|0,0)",
         "color", "(0,3|0,0|0,0|0,0|0,0|0,0)"},
    };
    std::vector<FieldRegistryEntry> out;
    for (const Row& r : rows) {
      FieldRegistryEntry e;
      e.group = r.group;
      e.symbol = r.symbol;
      e.aliases = r.aliases;
      e.display_name = r.display;
      e.spin_type = r.spin;
      e.bundle_context = r.bctx;
      e.bundle_type = r.btype;
      e.signature = parse_signature(r.spin, context("spin"));
      if (*r.btype)
        e.signature = product_signature(
            e.signature, parse_signature(r.btype, context(r.bctx)));
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

/// Looks a field up by symbol, accented alias, display name, or
/// "display name symbol"; optionally restricted to one group. Unknown
/// queries yield an empty result.
inline std::vector<const FieldRegistryEntry*> find_entries(
    std::string_view query, std::string_view group = "") {
  std::vector<const FieldRegistryEntry*> out;
  for (const FieldRegistryEntry& e : builtin_registry()) {
    if (!group.empty() && e.group != group) continue;
    bool hit = e.symbol == query || e.display_name == query ||
               e.display_name + " " + e.symbol == query;
    for (const std::string& a : e.aliases) hit = hit || a == query;
    if (hit) out.push_back(&e);
  }
  return out;
}

/// Canonical text dump of the registry; the fixture the tests compare
/// against holds exactly this.
inline std::string render_registry() {
  const auto pad = [](std::string s, size_t w) {
    while (s.size() < w) s += ' ';
    return s;
  };
  std::string out;
  const char* last_group = "";
  for (const FieldRegistryEntry& e : builtin_registry()) {
    if (e.group != last_group) {
      if (e.group == "base") out += "base fields\n";
      if (e.group == "ew") out += "electro-weak fields\n";
      if (e.group == "color") out += "color fields\n";
      last_group = e.group.c_str();
    }
    out += "  " + pad(e.symbol, 8) + pad(e.display_name, 50) +
           "spin=" + e.spin_type;
    if (!e.bundle_type.empty())
      out += " " + e.bundle_context + "=" + e.bundle_type;
    out += "\n";
  }
  return out;
}

/// Well-formedness of a single contraction, checked on the signature
/// alone. Same accept/reject behaviour as the component-level contraction.
inline void check_contraction(const TypeSignature& sig, int up_slot,
                              int down_slot) {
  validate_contraction(sig, up_slot, down_slot);
}

}  // namespace gaugefiber
