#include <catch2/catch_amalgamated.hpp>

#include "gaugefiber/signature.hpp"
#include "gaugefiber/typelang.hpp"

#include "../support/helpers.hpp"

using namespace gaugefiber;
using testsupport::throws_code;

TEST_CASE("signature of the SU2 Hermitian metric") {
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 1, 0, 1}});
  CHECK(sig.rank() == 2);
  CHECK(sig.count(BundleTag::SU2, SlotClass::down) == 1);
  CHECK(sig.count(BundleTag::SU2, SlotClass::barred_down) == 1);
  CHECK(print_signature(sig, context("su2")) == "(0,1|0,1)");
  CHECK(sig.shape() == std::vector<int>{2, 2});
}

TEST_CASE("empty block list is the scalar type") {
  const TypeSignature sig = TypeSignature::make({});
  CHECK(sig.rank() == 0);
  CHECK(sig.shape().empty());
  CHECK(sig == TypeSignature{});
}

TEST_CASE("duplicate bundle blocks are rejected") {
  CHECK(throws_code(errc::duplicate_block, [] {
    TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 1, 0, 1},
                         BlockCounts{BundleTag::SU2, 1, 0, 0, 0}});
  }));
}

TEST_CASE("negative counts are rejected") {
  CHECK(throws_code(errc::negative_count, [] {
    TypeSignature::make({BlockCounts{BundleTag::U1, -1, 0, 0, 0}});
  }));
}

TEST_CASE("blocks listed out of order land in canonical order") {
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::Tangent, 1, 0, 0, 0},
                           BlockCounts{BundleTag::SU3, 1, 0, 0, 0},
                           BlockCounts{BundleTag::U1, 0, 1, 0, 0}});
  const auto slots = sig.slots();
  REQUIRE(slots.size() == 3);
  CHECK(slots[0].tag == BundleTag::SU3);
  CHECK(slots[1].tag == BundleTag::U1);
  CHECK(slots[2].tag == BundleTag::Tangent);
  CHECK(sig.shape() == std::vector<int>{3, 1, 4});
}

TEST_CASE("slot classes order up, down, barred-up, barred-down") {
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 2, 1, 1, 1}});
  const auto slots = sig.slots();
  REQUIRE(slots.size() == 5);
  CHECK(slots[0].cls == SlotClass::up);
  CHECK(slots[1].cls == SlotClass::up);
  CHECK(slots[2].cls == SlotClass::down);
  CHECK(slots[3].cls == SlotClass::barred_up);
  CHECK(slots[4].cls == SlotClass::barred_down);
  CHECK(sig.slot_offset(BundleTag::SU2, SlotClass::down) == 2);
  CHECK(sig.slot_offset(BundleTag::SU2, SlotClass::barred_down) == 4);
}

TEST_CASE("conjugation swaps barred and unbarred counts") {
  // U1 type (1,0|0,2) -> (0,2|1,0)
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::U1, 1, 0, 0, 2}});
  const TypeSignature t = tau_signature(sig);
  CHECK(t.count(BundleTag::U1, SlotClass::up) == 0);
  CHECK(t.count(BundleTag::U1, SlotClass::down) == 2);
  CHECK(t.count(BundleTag::U1, SlotClass::barred_up) == 1);
  CHECK(t.count(BundleTag::U1, SlotClass::barred_down) == 0);
  CHECK(tau_signature(t) == sig);
}

TEST_CASE("product signature adds counts blockwise") {
  const TypeSignature a =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 1, 0, 1}});
  const TypeSignature b =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 2, 0, 0}});
  const TypeSignature p = product_signature(a, b);
  CHECK(p == TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 3, 0, 1}}));
}

TEST_CASE("contraction validation") {
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 1, 1},
                           BlockCounts{BundleTag::U1, 0, 1, 0, 0}});
  // slots: SU2 up(0) down(1) barred-up(2) barred-down(3), U1 down(4)
  CHECK_NOTHROW(validate_contraction(sig, 0, 1));
  CHECK_NOTHROW(validate_contraction(sig, 2, 3));
  CHECK(throws_code(errc::slot_class_mismatch,
                    [&] { validate_contraction(sig, 0, 4); }));
  CHECK(throws_code(errc::slot_class_mismatch,
                    [&] { validate_contraction(sig, 2, 1); }));
  CHECK(throws_code(errc::slot_class_mismatch,
                    [&] { validate_contraction(sig, 0, 3); }));
  CHECK(throws_code(errc::slot_out_of_range,
                    [&] { validate_contraction(sig, 0, 9); }));
  CHECK(throws_code(errc::slot_out_of_range,
                    [&] { validate_contraction(sig, -1, 1); }));

  const TypeSignature after = contracted_signature(sig, 0, 1);
  CHECK(after ==
        TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 0, 1, 1},
                             BlockCounts{BundleTag::U1, 0, 1, 0, 0}}));
}

TEST_CASE("contraction error messages name both slots' blocks") {
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 0, 0},
                           BlockCounts{BundleTag::U1, 0, 1, 0, 0}});
  try {
    validate_contraction(sig, 0, 1);
    FAIL("expected SlotClassMismatch");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("SU2") != std::string::npos);
    CHECK(msg.find("U1") != std::string::npos);
  }
}
