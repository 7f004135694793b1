#include <doctest.h>

#include "fibmult/examples.hpp"
#include "fibmult/fincat.hpp"

using namespace fibmult;

namespace {

std::shared_ptr<FinCategory> terminal_category() {
  auto c = std::make_shared<FinCategory>();
  c->add_object("*");
  c->set_identity(0, c->add_arrow("id", 0, 0));
  c->set_compose(0, 0, 0);
  return c;
}

}  // namespace

TEST_SUITE("fincat") {
  TEST_CASE("chains and codiscrete groupoids are categories") {
    for (int n = 1; n <= 4; ++n) {
      auto c = chain_category(n);
      CHECK(validate_category(*c).empty());
      // n objects, one arrow per pair i <= j
      CHECK(c->arrow_count() == static_cast<std::size_t>(n * (n + 1) / 2));
    }
    auto g = codiscrete({"a", "b", "c"});
    CHECK(validate_category(*g).empty());
    for (ArrowId a = 0; a < g->arrow_count(); ++a) CHECK(g->inverse(a).has_value());
  }

  TEST_CASE("a composite with the wrong codomain is reported") {
    auto c = chain_category(3);
    auto bad = std::make_shared<FinCategory>(*c);
    // 0→1 followed by 1→2 should be 0→2; point it at 0→1 instead
    ArrowId a01 = kNoArrow, a12 = kNoArrow, a02 = kNoArrow;
    for (ArrowId a = 0; a < bad->arrow_count(); ++a) {
      if (bad->dom(a) == 0 && bad->cod(a) == 1) a01 = a;
      if (bad->dom(a) == 1 && bad->cod(a) == 2) a12 = a;
      if (bad->dom(a) == 0 && bad->cod(a) == 2) a02 = a;
    }
    REQUIRE(bad->compose(a12, a01) == a02);
    bad->set_compose(a12, a01, a01);
    auto vs = validate_category(*bad);
    CHECK(count_kind(vs, ViolationKind::DomCodViolation) >= 1);
  }

  TEST_CASE("fibration classification") {
    auto one = terminal_category();
    auto g = codiscrete({"a", "b"});
    FinFunctor to_one{g, one, {0, 0}, {0, 0, 0, 0}};
    CHECK(validate_functor(to_one).empty());
    auto r = classify_fibration(to_one);
    CHECK(r.is_fibration);
    CHECK(r.is_fibration_in_groupoids);
    CHECK_FALSE(r.is_discrete_fibration);

    auto id = identity_functor(chain_category(2));
    auto ri = classify_fibration(id);
    CHECK(ri.is_discrete_fibration);
    CHECK(ri.is_discrete_opfibration);

    // {1} ⊂ {0 → 1} has no lift of 0 → 1
    auto arrow = chain_category(2);
    ArrowId id1 = arrow->identity(1);
    FinFunctor incl{one, arrow, {1}, {id1}};
    CHECK(validate_functor(incl).empty());
    CHECK_FALSE(classify_fibration(incl).is_fibration);
  }

  TEST_CASE("cartesian lifts in a groupoid fibration") {
    auto one = terminal_category();
    auto g = codiscrete({"a", "b"});
    FinFunctor to_one{g, one, {0, 0}, {0, 0, 0, 0}};
    // every arrow into a is cartesian over the identity
    CHECK(cartesian_lift(to_one, 0, 0).size() == 2);
  }
}
