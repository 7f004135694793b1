#include <doctest.h>

#include <set>

#include "fibmult/examples.hpp"
#include "oracles.hpp"

using namespace fibmult;

namespace {

std::set<ViolationKind> kinds(const Violations& vs) {
  std::set<ViolationKind> out;
  for (const auto& v : vs) out.insert(v.kind);
  return out;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("small corpus instances satisfy the axioms") {
    for (const char* name : {"terminal", "ring", "sequential"}) {
      CAPTURE(name);
      auto e = gen_example(name, {}, 2);
      CHECK(verify_axioms(*e.fm).empty());
    }
  }

  TEST_CASE("mutants give the predicted violation") {
    auto e = gen_example("ring", {}, 2);
    auto del = mutant_delete_square(*e.fm);
    REQUIRE(del);
    auto vs = verify_axioms(*del);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == ViolationKind::ExistenceViolation);
    CHECK_FALSE(vs[0].witness.empty());

    auto dup = mutant_duplicate_lift(*e.fm);
    REQUIRE(dup);
    vs = verify_axioms(*dup);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == ViolationKind::UniquenessViolation);

    auto gone = mutant_delete_family_arrow(*e.fm);
    REQUIRE(gone);
    CHECK(kinds(verify_axioms(*gone)).count(ViolationKind::DomCodViolation) == 1);
  }

  TEST_CASE("special lifts along identity squares are trivial") {
    auto e = gen_example("ring", {}, 2);
    const auto& fm = *e.fm;
    const auto& B = fm.base().category();
    const auto& M = fm.families();
    for (ArrowId a = 0; a < M.arrow_count(); ++a) {
      const ArrowId f = fm.p(a);
      const BaseSquare sq{B.identity(B.dom(f)), f, B.identity(B.cod(f)), f};
      CHECK(reindex(fm, a, sq) == a);
    }
  }

  TEST_CASE("reindexing lands over the pullback side") {
    auto e = gen_example("ring", {}, 2);
    const auto& fm = *e.fm;
    const auto& base = fm.base();
    const auto& M = fm.families();
    std::size_t tried = 0;
    for (ArrowId a = 0; a < M.arrow_count(); ++a) {
      for (auto k : base.pullbacks_with_right(fm.p(a))) {
        const auto& sq = base.pullbacks()[k];
        const ArrowId b = reindex(fm, a, sq);
        CHECK(fm.p(b) == sq.left);
        ++tried;
      }
    }
    CHECK(tried > 0);
  }

  TEST_CASE("instance sizes match counting") {
    for (int r : {1, 2, 3}) {
      ExampleParams params;
      params.ring_order = r;
      auto e = gen_example(r == 1 ? "terminal" : "ring", params, 2);
      CHECK(e.fm->families().arrow_count() == oracle::ring_arrows(static_cast<std::size_t>(r), 2));
      CHECK(e.fm->reindexings().arrow_count() == oracle::finset_maps(2));
    }
  }

  TEST_CASE("base pullbacks are pullbacks of the underlying maps") {
    auto base = BaseCategory::finset(2);
    const auto& B = base->category();
    for (const auto& sq : base->pullbacks()) {
      CHECK(is_pullback(base->map(sq.top), base->map(sq.left), base->map(sq.bottom), base->map(sq.right)));
      CHECK(B.comp(sq.right, sq.top) == B.comp(sq.bottom, sq.left));
    }
  }
}
