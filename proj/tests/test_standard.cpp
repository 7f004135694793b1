#include <doctest.h>

#include <set>

#include "fibmult/error.hpp"
#include "fibmult/examples.hpp"
#include "fibmult/presentation.hpp"

using namespace fibmult;

namespace {

// Value at each domain element of an arrow of a one-object ring instance.
std::vector<int> entries(const StandardMulticategory& s, ArrowId a) {
  const auto& fm = s.fm();
  const FinMap& f = fm.base().map(fm.p(a));
  const auto& comps = s.components(a);
  std::vector<std::size_t> seen(f.cod.size(), 0);
  std::vector<int> out;
  for (std::size_t i = 0; i < f.dom.size(); ++i) out.push_back(comps[f(i)][seen[f(i)]++]);
  return out;
}

}  // namespace

TEST_SUITE("standard") {
  TEST_CASE("presentation laws") {
    CHECK_NOTHROW(check_presentation_laws(*ring_presentation(2), 3));
    CHECK_NOTHROW(check_presentation_laws(*ring_presentation(3), 3));
    CHECK_NOTHROW(check_presentation_laws(*matrix_presentation(1), 2));
    CHECK_NOTHROW(check_presentation_laws(AffinePresentation(), 3));
    CHECK_NOTHROW(check_presentation_laws(FunctionPresentation({"A", "B"}, {2, 1}), 2));
  }

  TEST_CASE("composition multiplies entries pointwise") {
    ExampleParams params;
    params.ring_order = 3;
    auto e = gen_example("ring", params, 2);
    const auto& s = *e.standard;
    const auto& M = s.fm().families();
    std::size_t checked = 0;
    M.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
      const auto vf = entries(s, f), vg = entries(s, g), vgf = entries(s, gf);
      const FinMap& map = s.fm().base().map(s.fm().p(f));
      for (std::size_t i = 0; i < vf.size(); ++i) CHECK(vgf[i] == (vg[map(i)] * vf[i]) % 3);
      ++checked;
    });
    CHECK(checked > 0);
  }

  TEST_CASE("extensivity holds on the corpus") {
    for (const char* name : {"terminal", "ring", "sequential"}) {
      CAPTURE(name);
      CHECK(check_extensivity(*gen_example(name, {}, 2).fm).empty());
    }
  }

  TEST_CASE("split and assemble are inverse") {
    auto e = gen_example("ring", {}, 2);
    const auto& fm = *e.fm;
    const auto& M = fm.families();
    for (ArrowId a = 0; a < M.arrow_count(); ++a) {
      auto singles = split(fm, a);
      CHECK(singles.size() == fm.base().set(fm.base().category().cod(fm.p(a))).size());
      CHECK(assemble(fm, M.dom(a), M.cod(a), fm.p(a), singles) == a);
    }
  }

  TEST_CASE("extensivity mutants") {
    auto e = gen_example("ring", {}, 2);
    auto gone = mutant_delete_family_arrow(*e.fm);
    REQUIRE(gone);
    auto vs = check_extensivity(*gone);
    REQUIRE_FALSE(vs.empty());
    for (const auto& v : vs) CHECK(v.kind == ViolationKind::ExistenceViolation);

    auto twice = mutant_duplicate_amalgamation(*e.fm);
    REQUIRE(twice);
    CHECK(count_kind(check_extensivity(*twice), ViolationKind::UniquenessViolation) >= 1);
  }

  TEST_CASE("unknown generator names are rejected") {
    try {
      gen_example("nope", {}, 2);
      FAIL("expected BadParams");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::BadParams);
    }
  }
}
