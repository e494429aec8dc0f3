#include <catch2/catch_amalgamated.hpp>

#include "gaugefiber/metrics.hpp"
#include "gaugefiber/tensor.hpp"

#include "../support/helpers.hpp"
#include "../support/rng.hpp"

using namespace gaugefiber;
using testsupport::Rng;
using testsupport::throws_code;

namespace {

TensorField su2_vector(cplx a, cplx b, const std::string& frame = "ref") {
  TensorField v(TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 0, 0}}),
                "U", frame);
  v.at({0}) = a;
  v.at({1}) = b;
  return v;
}

TensorField random_tensor(Rng& rng, const TypeSignature& sig,
                          const std::string& frame = "ref") {
  TensorField t(sig, "U", frame);
  for (cplx& v : t.components()) v = rng.gaussian_cplx();
  return t;
}

TensorField random_int_tensor(Rng& rng, const TypeSignature& sig) {
  TensorField t(sig, "U", "ref");
  for (cplx& v : t.components())
    v = cplx(rng.uniform_int(-8, 8), rng.uniform_int(-8, 8));
  return t;
}

}  // namespace

TEST_CASE("scalar one is the unit of the tensor product") {
  Rng rng(11);
  const TensorField t = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 0, 0}}));
  const TensorField one = TensorField::scalar(1.0, "U", "ref");
  const TensorField p = tensor_product(one, t);
  CHECK(p.signature() == t.signature());
  CHECK(max_abs_diff(p, t) == 0.0);
}

TEST_CASE("product type adds SU2 counts") {
  Rng rng(12);
  const TensorField a = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 1, 0, 1}}));
  const TensorField b = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 2, 0, 0}}));
  CHECK(tensor_product(a, b).signature() ==
        TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 3, 0, 1}}));
}

TEST_CASE("outer product of two 2-vectors against the hand loop") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const TensorField x = su2_vector(rng.gaussian_cplx(), rng.gaussian_cplx());
    const TensorField y = su2_vector(rng.gaussian_cplx(), rng.gaussian_cplx());
    const TensorField p = tensor_product(x, y);
    REQUIRE(p.rank() == 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(p.at({i, j}) == x.at({i}) * y.at({j}));
  }
}

TEST_CASE("product interleaves slots canonically across factors") {
  Rng rng(14);
  // a carries an SU2 down slot, b an SU2 up slot: the up slot sorts first
  const TensorField a = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 1, 0, 0}}));
  const TensorField b = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 0, 0}}));
  const TensorField p = tensor_product(a, b);
  const auto slots = p.signature().slots();
  REQUIRE(slots.size() == 2);
  CHECK(slots[0].cls == SlotClass::up);
  CHECK(slots[1].cls == SlotClass::down);
  for (int u = 0; u < 2; ++u)
    for (int d = 0; d < 2; ++d) CHECK(p.at({u, d}) == b.at({u}) * a.at({d}));
}

TEST_CASE("product is associative, exactly, on integer components") {
  Rng rng(15);
  const TypeSignature sa =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 0, 0}});
  const TypeSignature sb =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 1, 0, 0},
                           BlockCounts{BundleTag::U1, 1, 0, 0, 0}});
  const TypeSignature sc =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 0, 0, 1, 0}});
  for (int trial = 0; trial < 100; ++trial) {
    const TensorField a = random_int_tensor(rng, sa);
    const TensorField b = random_int_tensor(rng, sb);
    const TensorField c = random_int_tensor(rng, sc);
    const TensorField left = tensor_product(tensor_product(a, b), c);
    const TensorField right = tensor_product(a, tensor_product(b, c));
    REQUIRE(left.signature() == right.signature());
    CHECK(max_abs_diff(left, right) == 0.0);
  }
}

TEST_CASE("product requires matching chart and frame") {
  const TensorField a = TensorField::scalar(1.0, "U", "ref");
  const TensorField b = TensorField::scalar(1.0, "V", "ref");
  const TensorField c = TensorField::scalar(1.0, "U", "other");
  CHECK(throws_code(errc::chart_mismatch, [&] { tensor_product(a, b); }));
  CHECK(throws_code(errc::frame_mismatch, [&] { tensor_product(a, c); }));
}

TEST_CASE("trace of the SU2 identity tensor is 2") {
  TensorField delta(
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 0, 0}}), "U",
      "ref");
  delta.at({0, 0}) = 1.0;
  delta.at({1, 1}) = 1.0;
  const TensorField tr = contract(delta, 0, 1);
  REQUIRE(tr.rank() == 0);
  CHECK(tr.components()[0] == cplx(2.0));
}

TEST_CASE("contracting the dual skew metric with the skew metric gives the identity") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx delta = rng.cplx_in_annulus(0.3, 3.0);
    const SkewMetric d(BundleTag::SU2, delta);
    const TensorField dual = skew_inverse(d).to_tensor("U", "ref");
    const TensorField cov = d.to_tensor("U", "ref");
    // slots of the product: up(0) up(1) down(2) down(3); contract j = (1, 2)
    const TensorField p = tensor_product(dual, cov);
    const TensorField id = contract(p, 1, 2);
    REQUIRE(id.rank() == 2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        const cplx want = i == k ? cplx(1.0) : cplx(0.0);
        CHECK(std::abs(id.at({i, k}) - want) < 1e-12);
      }
  }
}

TEST_CASE("contraction agrees with the naive double loop") {
  Rng rng(17);
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 0, 0}});
  for (int trial = 0; trial < 100; ++trial) {
    const TensorField t = random_tensor(rng, sig);
    const TensorField c = contract(t, 0, 1);
    cplx want = 0.0;
    for (int i = 0; i < 2; ++i) want += t.at({i, i});
    CHECK(std::abs(c.components()[0] - want) < 1e-15);
  }
}

TEST_CASE("contraction drops exactly the paired slots") {
  Rng rng(18);
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 0, 0},
                           BlockCounts{BundleTag::U1, 1, 0, 0, 0}});
  const TensorField t = random_tensor(rng, sig);
  const TensorField c = contract(t, 0, 1);
  CHECK(c.signature() ==
        TypeSignature::make({BlockCounts{BundleTag::U1, 1, 0, 0, 0}}));
  cplx want = 0.0;
  for (int i = 0; i < 2; ++i) want += t.at({i, i, 0});
  CHECK(c.at({0}) == want);
}

TEST_CASE("tau is an involution, bit for bit") {
  Rng rng(19);
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 1, 0},
                           BlockCounts{BundleTag::U1, 1, 0, 0, 2}});
  for (int trial = 0; trial < 200; ++trial) {
    const TensorField t = random_tensor(rng, sig);
    const TensorField tt = tau(tau(t));
    REQUIRE(tt.signature() == t.signature());
    for (size_t i = 0; i < t.components().size(); ++i)
      CHECK(tt.components()[i] == t.components()[i]);
  }
}

TEST_CASE("tau swaps the U1 type (1,0|0,2) to (0,2|1,0)") {
  Rng rng(20);
  const TensorField t = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::U1, 1, 0, 0, 2}}));
  const TensorField c = tau(t);
  CHECK(c.signature() ==
        TypeSignature::make({BlockCounts{BundleTag::U1, 0, 2, 1, 0}}));
}

TEST_CASE("tau conjugates and permutes axes per class") {
  Rng rng(21);
  const TensorField t = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 1, 0}}));
  const TensorField c = tau(t);
  // new up axis comes from the old barred-up axis and vice versa
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(c.at({i, j}) == std::conj(t.at({j, i})));
}

TEST_CASE("tau fixes real components under a symmetric signature") {
  TensorField t(TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 1, 0}}),
                "U", "ref");
  t.at({0, 0}) = 1.0;
  t.at({0, 1}) = 2.0;
  t.at({1, 0}) = 2.0;
  t.at({1, 1}) = -3.0;
  const TensorField c = tau(t);
  REQUIRE(c.signature() == t.signature());
  for (size_t i = 0; i < t.components().size(); ++i)
    CHECK(c.components()[i] == t.components()[i]);
}

TEST_CASE("identity transition leaves components unchanged") {
  Rng rng(22);
  const TensorField t = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 1, 1}}));
  const FrameChange s{"ref", "ref2", BundleTag::SU2, Mat::identity(2)};
  const TensorField moved = change_frame(t, s);
  CHECK(moved.frame() == "ref2");
  CHECK(max_abs_diff(moved, t) == 0.0);
}

TEST_CASE("frame vectors transform with the transition matrix") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat s = rng.invertible(2);
    const FrameChange fc{"old", "new", BundleTag::SU2, s};
    for (int i = 0; i < 2; ++i) {
      // old-frame components of the i-th new frame vector: column i of S
      const TensorField v = su2_vector(s(0, i), s(1, i), "old");
      const TensorField moved = change_frame(v, fc);
      for (int r = 0; r < 2; ++r) {
        const cplx want = r == i ? cplx(1.0) : cplx(0.0);
        CHECK(std::abs(moved.at({r}) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("change of frame round trips through the inverse") {
  Rng rng(24);
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 1, 1}});
  for (int trial = 0; trial < 200; ++trial) {
    const TensorField t = random_tensor(rng, sig);
    const Mat s = rng.invertible(2);
    const TensorField there =
        change_frame(t, {"ref", "other", BundleTag::SU2, s});
    const TensorField back =
        change_frame(there, {"other", "ref", BundleTag::SU2, s.inverse()});
    CHECK(max_abs_diff(back, t) <= 1e-12 * std::max(1.0, max_abs(t)));
  }
}

TEST_CASE("contraction commutes with changes of frame") {
  Rng rng(25);
  const TypeSignature sig =
      TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 1, 1, 1}});
  for (int trial = 0; trial < 200; ++trial) {
    const TensorField t = random_tensor(rng, sig);
    const Mat s = rng.invertible(2);
    const FrameChange fc{"ref", "other", BundleTag::SU2, s};

    for (auto [up, down] : {std::pair{0, 1}, std::pair{2, 3}}) {
      const TensorField a = change_frame(contract(t, up, down), fc);
      const TensorField b = contract(change_frame(t, fc), up, down);
      const double scale = std::max(1.0, max_abs(a));
      CHECK(max_abs_diff(a, b) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("change of frame only touches the matching bundle block") {
  Rng rng(26);
  const TensorField t = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::U1, 1, 0, 0, 0},
                                BlockCounts{BundleTag::Tangent, 0, 1, 0, 0}}));
  const FrameChange fc{"ref", "other", BundleTag::SU2, rng.invertible(2)};
  const TensorField moved = change_frame(t, fc);
  CHECK(max_abs_diff(moved, t) == 0.0);
}

TEST_CASE("change of frame rejects mismatches and singular matrices") {
  Rng rng(27);
  const TensorField t = random_tensor(
      rng, TypeSignature::make({BlockCounts{BundleTag::SU2, 1, 0, 0, 0}}));
  CHECK(throws_code(errc::frame_mismatch, [&] {
    change_frame(t, {"elsewhere", "x", BundleTag::SU2, Mat::identity(2)});
  }));
  CHECK(throws_code(errc::singular_transition, [&] {
    change_frame(t, {"ref", "x", BundleTag::SU2, Mat(2, 2)});
  }));
  CHECK(throws_code(errc::dimension_mismatch, [&] {
    change_frame(t, {"ref", "x", BundleTag::SU2, Mat::identity(3)});
  }));
}
