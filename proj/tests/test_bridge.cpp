#include <doctest.h>

#include "fibmult/examples.hpp"
#include "fibmult/fibration_bridge.hpp"
#include "fibmult/presentation.hpp"
#include "oracles.hpp"

using namespace fibmult;

TEST_SUITE("bridge") {
  TEST_CASE("the identity fibration has the pullbacks as special squares") {
    auto base = BaseCategory::finset(2);
    auto id = from_fibration(base, identity_functor(base->category_ptr()));
    CHECK(verify_axioms(*id.fm).empty());
    CHECK(id.fm->special_squares().size() == base->pullbacks().size());
    auto fc = fibchar_check(*id.fm, id.inclusion);
    CHECK(fc.hypothesis);
    CHECK(fc.conclusion);
  }

  TEST_CASE("family fibrations match the sequential construction") {
    auto base = BaseCategory::finset(2);
    auto pres = ring_presentation(2);
    auto p = family_fibration(pres->category_ptr(), *base);
    CHECK(classify_fibration(p).is_fibration);
    auto fam = from_fibration(base, p);
    CHECK(verify_axioms(*fam.fm).empty());
    CHECK(fam.fm->families().arrow_count() == oracle::ring_arrows(2, 2));
    auto seq = gen_example("ring", {}, 2);
    CHECK(fam.fm->object_count() == seq.fm->object_count());
    CHECK(fam.fm->special_squares().size() == seq.fm->special_squares().size());
  }

  TEST_CASE("pullback squares by cone enumeration") {
    auto base = BaseCategory::finset(2);
    const auto& B = base->category();
    for (const auto& sq : base->pullbacks()) CHECK(is_pullback_square(B, sq.top, sq.left, sq.bottom, sq.right));
    // the diagonal square over [2] → [1] is not a pullback
    auto two = *base->object_of(standard_set(2));
    auto one = *base->object_of(standard_set(1));
    const ArrowId bang = B.hom(two, one).front();
    CHECK_FALSE(is_pullback_square(B, B.identity(two), B.identity(two), bang, bang));
  }

  TEST_CASE("pseudofunctor over the arrow category") {
    auto pf = arrow_pseudofunctor();
    CHECK(verify_pseudofunctor(pf).empty());
    auto g = grothendieck(pf);
    CHECK(validate_category(*g.dom).empty());
    // two objects per fiber; arrows W → X over f are W → f*X, one per pair in a codiscrete fiber
    CHECK(g.dom->object_count() == 4);
    CHECK(g.dom->arrow_count() == 4 + 4 + 4);
    CHECK(classify_fibration(g).is_fibration);
  }

  TEST_CASE("a broken unit comparison is caught") {
    auto pf = arrow_pseudofunctor();
    pf.identity[0] = {0, 3};  // identity arrows no longer match id0* swapping a and b
    CHECK_FALSE(verify_pseudofunctor(pf).empty());
  }

  TEST_CASE("unary round trip on a family fibration") {
    auto base = BaseCategory::finset(2);
    auto fam = from_fibration(base, family_fibration(ring_presentation(2)->category_ptr(), *base));
    auto unary = unary_part(*fam.fm);
    CHECK(verify_axioms(*unary).empty());
    CHECK(verify_pseudofunctor(pseudofunctor_of(*unary)).empty());
    CHECK(roundtrip_unary(*unary).ok());
  }
}
