#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gaugefiber/errors.hpp"

namespace gaugefiber {

/// Bundle blocks in canonical order. Component arrays, slot numbering and
/// signature text all follow this order.
enum class BundleTag : int { SU3 = 0, SU2 = 1, U1 = 2, Dirac = 3, Tangent = 4 };

inline constexpr std::array<BundleTag, 5> kBundleOrder = {
    BundleTag::SU3, BundleTag::SU2, BundleTag::U1, BundleTag::Dirac,
    BundleTag::Tangent};

constexpr int fiber_dim(BundleTag t) {
  switch (t) {
    case BundleTag::SU3: return 3;
    case BundleTag::SU2: return 2;
    case BundleTag::U1: return 1;
    case BundleTag::Dirac:
    case BundleTag::Tangent: return 4;
  }
  return 0;
}

inline const char* to_string(BundleTag t) {
  switch (t) {
    case BundleTag::SU3: return "SU3";
    case BundleTag::SU2: return "SU2";
    case BundleTag::U1: return "U1";
    case BundleTag::Dirac: return "Dirac";
    case BundleTag::Tangent: return "Tangent";
  }
  return "?";
}

/// Slot classes in canonical order within a block.
enum class SlotClass : int { up = 0, down = 1, barred_up = 2, barred_down = 3 };

inline const char* to_string(SlotClass c) {
  switch (c) {
    case SlotClass::up: return "up";
    case SlotClass::down: return "down";
    case SlotClass::barred_up: return "barred-up";
    case SlotClass::barred_down: return "barred-down";
  }
  return "?";
}

constexpr bool is_barred(SlotClass c) {
  return c == SlotClass::barred_up || c == SlotClass::barred_down;
}

constexpr bool is_up_class(SlotClass c) {
  return c == SlotClass::up || c == SlotClass::barred_up;
}

/// The conjugation involution swaps barred and unbarred classes.
constexpr SlotClass bar_swapped(SlotClass c) {
  switch (c) {
    case SlotClass::up: return SlotClass::barred_up;
    case SlotClass::down: return SlotClass::barred_down;
    case SlotClass::barred_up: return SlotClass::up;
    case SlotClass::barred_down: return SlotClass::down;
  }
  return c;
}

/// Slot counts of one bundle block.
struct BlockCounts {
  BundleTag tag;
  int up = 0;
  int down = 0;
  int barred_up = 0;
  int barred_down = 0;
};

/// Tensor type: slot counts per bundle block, blocks held in the fixed
/// canonical order. Blocks with all-zero counts carry no slots, so a
/// signature listing them equals one that omits them.
class TypeSignature {
 public:
  TypeSignature() = default;  // scalar type

  static TypeSignature make(std::span<const BlockCounts> blocks) {
    TypeSignature sig;
    std::array<bool, 5> seen{};
    for (const BlockCounts& b : blocks) {
      const int t = static_cast<int>(b.tag);
      if (seen[static_cast<size_t>(t)])
        raise(errc::duplicate_block, std::string("bundle block ") +
                                         to_string(b.tag) + " listed twice");
      seen[static_cast<size_t>(t)] = true;
      for (int c : {b.up, b.down, b.barred_up, b.barred_down})
        if (c < 0)
          raise(errc::negative_count, std::string("negative slot count in ") +
                                          to_string(b.tag) + " block");
      sig.set(b.tag, SlotClass::up, b.up);
      sig.set(b.tag, SlotClass::down, b.down);
      sig.set(b.tag, SlotClass::barred_up, b.barred_up);
      sig.set(b.tag, SlotClass::barred_down, b.barred_down);
    }
    return sig;
  }

  static TypeSignature make(std::initializer_list<BlockCounts> blocks) {
    return make(std::span<const BlockCounts>(blocks.begin(), blocks.size()));
  }

  int count(BundleTag t, SlotClass c) const {
    return counts_[static_cast<size_t>(t)][static_cast<size_t>(c)];
  }

  BlockCounts block(BundleTag t) const {
    return {t, count(t, SlotClass::up), count(t, SlotClass::down),
            count(t, SlotClass::barred_up), count(t, SlotClass::barred_down)};
  }

  int rank() const {
    int n = 0;
    for (const auto& blk : counts_)
      for (int c : blk) n += c;
    return n;
  }

  struct Slot {
    BundleTag tag;
    SlotClass cls;
    int index_in_class;  // position within its (tag, class) group
    int dim;
  };

  /// All slots in canonical order: blocks in bundle order, classes in
  /// up, down, barred-up, barred-down order within each block.
  std::vector<Slot> slots() const {
    std::vector<Slot> out;
    out.reserve(static_cast<size_t>(rank()));
    for (BundleTag t : kBundleOrder)
      for (int ci = 0; ci < 4; ++ci) {
        const SlotClass c = static_cast<SlotClass>(ci);
        for (int k = 0; k < count(t, c); ++k)
          out.push_back({t, c, k, fiber_dim(t)});
      }
    return out;
  }

  std::vector<int> shape() const {
    std::vector<int> s;
    s.reserve(static_cast<size_t>(rank()));
    for (BundleTag t : kBundleOrder)
      for (int ci = 0; ci < 4; ++ci)
        for (int k = 0; k < count(t, static_cast<SlotClass>(ci)); ++k)
          s.push_back(fiber_dim(t));
    return s;
  }

  /// Global index of the first slot of (tag, class).
  int slot_offset(BundleTag t, SlotClass c) const {
    int off = 0;
    for (BundleTag bt : kBundleOrder)
      for (int ci = 0; ci < 4; ++ci) {
        if (bt == t && static_cast<SlotClass>(ci) == c) return off;
        off += count(bt, static_cast<SlotClass>(ci));
      }
    return off;
  }

  std::vector<BlockCounts> nonzero_blocks() const {
    std::vector<BlockCounts> out;
    for (BundleTag t : kBundleOrder) {
      BlockCounts b = block(t);
      if (b.up || b.down || b.barred_up || b.barred_down) out.push_back(b);
    }
    return out;
  }

  friend bool operator==(const TypeSignature&, const TypeSignature&) = default;

 private:
  void set(BundleTag t, SlotClass c, int v) {
    counts_[static_cast<size_t>(t)][static_cast<size_t>(c)] = v;
  }

  std::array<std::array<int, 4>, 5> counts_{};  // [tag][class]
};

/// Blockwise sum of slot counts (the type of a tensor product).
inline TypeSignature product_signature(const TypeSignature& a,
                                       const TypeSignature& b) {
  std::vector<BlockCounts> blocks;
  for (BundleTag t : kBundleOrder) {
    BlockCounts x = a.block(t), y = b.block(t);
    blocks.push_back({t, x.up + y.up, x.down + y.down,
                      x.barred_up + y.barred_up,
                      x.barred_down + y.barred_down});
  }
  return TypeSignature::make(blocks);
}

/// Type of the conjugated tensor: (up, down) and (barred-up, barred-down)
/// swap in every block.
inline TypeSignature tau_signature(const TypeSignature& a) {
  std::vector<BlockCounts> blocks;
  for (BundleTag t : kBundleOrder) {
    BlockCounts b = a.block(t);
    blocks.push_back({t, b.barred_up, b.barred_down, b.up, b.down});
  }
  return TypeSignature::make(blocks);
}

/// Checks that (up_slot, down_slot) form a contractible pair: both in
/// range, in the same bundle block and bar class, one up and one down.
/// Throws SlotOutOfRange / SlotClassMismatch with a message naming both
/// slots' blocks.
inline void validate_contraction(const TypeSignature& sig, int up_slot,
                                 int down_slot) {
  const auto slots = sig.slots();
  const int n = static_cast<int>(slots.size());
  for (int s : {up_slot, down_slot})
    if (s < 0 || s >= n)
      raise(errc::slot_out_of_range,
            "slot " + std::to_string(s) + " out of range (signature has " +
                std::to_string(n) + " slots)");
  if (up_slot == down_slot)
    raise(errc::slot_class_mismatch, "cannot contract a slot with itself");
  const auto& u = slots[static_cast<size_t>(up_slot)];
  const auto& d = slots[static_cast<size_t>(down_slot)];
  const auto describe = [](int idx, const TypeSignature::Slot& s) {
    return "slot " + std::to_string(idx) + " is " +
           std::string(to_string(s.tag)) + " " + to_string(s.cls);
  };
  const std::string both = describe(up_slot, u) + ", " + describe(down_slot, d);
  if (!is_up_class(u.cls) || is_up_class(d.cls))
    raise(errc::slot_class_mismatch,
          both + "; contraction needs one up and one down slot");
  if (u.tag != d.tag)
    raise(errc::slot_class_mismatch,
          both + "; slots lie in different bundle blocks");
  if (is_barred(u.cls) != is_barred(d.cls))
    raise(errc::slot_class_mismatch,
          both + "; barred and unbarred slots never contract");
}

/// Signature after contracting the validated slot pair.
inline TypeSignature contracted_signature(const TypeSignature& sig,
                                          int up_slot, int down_slot) {
  validate_contraction(sig, up_slot, down_slot);
  const auto slots = sig.slots();
  const auto& u = slots[static_cast<size_t>(up_slot)];
  const auto& d = slots[static_cast<size_t>(down_slot)];
  std::vector<BlockCounts> blocks;
  for (BundleTag t : kBundleOrder) {
    BlockCounts b = sig.block(t);
    if (t == u.tag) {
      (is_barred(u.cls) ? b.barred_up : b.up) -= 1;
      (is_barred(d.cls) ? b.barred_down : b.down) -= 1;
    }
    blocks.push_back(b);
  }
  return TypeSignature::make(blocks);
}

}  // namespace gaugefiber
