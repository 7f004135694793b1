#include <doctest.h>

#include "fibmult/cartesian.hpp"
#include "fibmult/error.hpp"
#include "fibmult/examples.hpp"
#include "oracles.hpp"

using namespace fibmult;

namespace {

struct Ring {
  Example ex;
  CartesianStructure cs;
};

const Ring& ring2(std::size_t bound) {
  static std::map<std::size_t, Ring> cache;
  auto it = cache.find(bound);
  if (it == cache.end()) {
    auto ex = gen_example("ring", {}, bound);
    auto cs = cartesian_structure(*ex.standard);
    it = cache.emplace(bound, Ring{ex, cs}).first;
  }
  return it->second;
}

}  // namespace

TEST_SUITE("cartesian") {
  TEST_CASE("the canonical structure on the ring instance is valid") {
    const auto& r = ring2(2);
    CHECK(verify_cartesian_structure(r.cs).empty());
    CHECK(coherence_check(r.cs).failures.empty());
  }

  TEST_CASE("coreindex sums over fibers") {
    const auto& r = ring2(3);
    const auto& st = *r.ex.standard;
    const auto& base = st.base();
    const FinSet three = standard_set(3);
    const ObjectId i3 = *base.object_of(three);
    const ObjectId i1 = *base.object_of(standard_set(1));
    const ObjectId x = *st.object_of(i3, {0, 0, 0});
    const ObjectId z = *st.object_of(i1, {0});
    const ArrowId bang = *base.arrow_of(make_map(three, standard_set(1), {0, 0, 0}));
    std::size_t checked = 0;
    for (const auto& map : all_maps(three, three)) {
      const ArrowId f = *base.arrow_of(map);
      const ArrowId lift = st.reindexing(f, x);
      for (int mask = 0; mask < 8; ++mask) {
        Payload t{(mask >> 2) & 1, (mask >> 1) & 1, mask & 1};
        const ArrowId a = *st.arrow_of(x, z, bang, {t});
        const auto& got = st.components(coreindex(r.cs, a, lift, bang)).front();
        std::vector<int> want(3, 0);
        for (std::size_t i = 0; i < 3; ++i) want[map(i)] ^= t[i];
        CHECK(std::vector<int>(got.begin(), got.end()) == want);
        ++checked;
      }
    }
    CHECK(checked == 27 * 8);
  }

  TEST_CASE("coreindex in the finite-product instance precomposes") {
    auto st = finite_product_instance();
    auto cs = cartesian_structure(*st);
    const auto& base = st->base();
    const FinSet three = standard_set(3);
    const FinSet other = make_set("[3']", three.elements);
    const ArrowId f = *base.arrow_of(make_map(three, other, {2, 0, 2}));
    const ArrowId bang = *base.arrow_of(make_map(other, standard_set(1), {0, 0, 0}));
    const ArrowId bang_x = *base.arrow_of(make_map(three, standard_set(1), {0, 0, 0}));
    const ObjectId y = *st->object_of(*base.object_of(other), {1, 2, 0});  // (B, C, A)
    const ObjectId d = *st->object_of(*base.object_of(standard_set(1)), {3});
    const ArrowId lift = st->reindexing(f, y);
    const ObjectId x = st->fm().reindexings().dom(lift);
    CHECK(st->family(x) == std::vector<int>{0, 1, 0});  // (A, B, A)
    std::size_t checked = 0;
    for (int mask = 0; mask < 256; ++mask) {
      Payload t(8);
      for (int k = 0; k < 8; ++k) t[k] = (mask >> k) & 1;
      auto a = st->arrow_of(x, d, bang_x, {t});
      REQUIRE(a);
      const auto& pushed = st->components(coreindex(cs, *a, lift, bang)).front();
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int aa = 0; aa < 2; ++aa) CHECK(pushed[oracle::row2({b, c, aa})] == t[oracle::row2({aa, b, aa})]);
      ++checked;
    }
    CHECK(checked == 256);
  }

  TEST_CASE("FR and BC equations on the ring instance") {
    const auto& r = ring2(2);
    auto fr = frobenius_equations(r.cs);
    auto bc = beck_chevalley_equations(r.cs);
    CHECK(fr.configurations > 0);
    CHECK(fr.failures.empty());
    CHECK(bc.configurations > 0);
    CHECK(bc.failures.empty());
  }

  TEST_CASE("a missing triangle breaks the opfibration law") {
    const auto& r = ring2(2);
    std::vector<SpecialTriangle> ts(r.cs.triangles().begin(), r.cs.triangles().end());
    const auto& D = r.cs.host().reindexings();
    auto it = std::find_if(ts.begin(), ts.end(), [&](const SpecialTriangle& t) { return !D.is_identity(t.top); });
    REQUIRE(it != ts.end());
    ts.erase(it);
    auto vs = verify_cartesian_structure(r.cs.with_triangles(ts));
    CHECK(count_kind(vs, ViolationKind::OpfibrationExistence) >= 1);
  }

  TEST_CASE("covariant squares round trip and a BC2 mutant") {
    const auto& r = ring2(2);
    auto squares = triangles_to_cosquares(r.cs);
    CHECK(verify_covariant_presentation(r.cs.host(), squares).empty());
    auto back = cosquares_to_triangles(r.cs.host_ptr(), squares);
    CHECK(std::equal(back.triangles().begin(), back.triangles().end(), r.cs.triangles().begin(), r.cs.triangles().end()));

    const auto& D = r.cs.host().reindexings();
    const auto& M = r.cs.host().families();
    auto it = std::find_if(squares.begin(), squares.end(), [&](const CovariantSquare& s) {
      return !D.is_identity(s.top) && !M.is_identity(s.bottom);
    });
    REQUIRE(it != squares.end());
    squares.erase(it);
    CHECK_FALSE(verify_covariant_presentation(r.cs.host(), squares).empty());
    CHECK_THROWS_AS(cosquares_to_triangles(r.cs.host_ptr(), squares), Error);
  }

  TEST_CASE("products in the ring instance exist only along bijections") {
    const auto& r = ring2(2);
    auto report = products_equivalence_report(r.cs, 2);
    CHECK(report.equivalent());
    const auto& base = r.cs.host().base();
    for (const auto& row : report.rows) {
      CAPTURE(base.category().arrow_name(row.f));
      const bool iso = is_bijective(base.map(row.f));
      CHECK(row.up == iso);
      CHECK(row.sr == iso);
      if (row.ap) CHECK(*row.ap == iso);
    }
  }

  TEST_CASE("matrix products exist when the dimensions fit") {
    ExampleParams params;
    params.max_dim = 1;
    auto ex = gen_example("matrix", params, 2);
    auto cs = cartesian_structure(*ex.standard);
    auto report = products_equivalence_report(cs, 2);
    CHECK(report.equivalent());
    const auto& base = cs.host().base();
    for (const auto& row : report.rows) {
      const FinMap& f = base.map(row.f);
      const bool fit = oracle::dims_fit(ex.standard->family(row.x), f.assignment, f.cod.size(), 1);
      CHECK(row.up == fit);
      CHECK(row.sr == fit);
      if (row.ap) CHECK(*row.ap == fit);
    }
  }

  TEST_CASE("fibered hom monoid of the family fibration") {
    auto base = BaseCategory::finset(2);
    auto pres = ring_presentation(2);
    std::vector<std::vector<ArrowId>> comps;
    auto p = family_fibration(pres->category_ptr(), *base, &comps);
    auto fam = from_fibration(base, p);
    auto cs = enriched_family_structure(fam, *pres, comps);
    CHECK(verify_cartesian_structure(cs).empty());
    const auto& fm = *fam.fm;
    std::vector<ArrowId> s(base->category().arrow_count());
    for (ArrowId h = 0; h < fm.reindexings().arrow_count(); ++h) s[fm.d(h)] = fam.inclusion.on_arrows[h];
    auto hom = fibered_hom_monoid(cs, fam.inclusion, s, s);
    CHECK(hom.violations.empty());
    // one endomorphism per tuple of ring elements over each index set
    CHECK(hom.carrier.size() == 1 + 2 + 4);

    auto mutant = s;
    const auto& M = fm.families();
    for (ArrowId f = 0; f < s.size() && mutant == s; ++f) {
      for (ArrowId a = 0; a < M.arrow_count(); ++a) {
        if (a != s[f] && fm.p(a) == f && M.dom(a) == M.dom(s[f]) && M.cod(a) == M.cod(s[f])) {
          mutant[f] = a;
          break;
        }
      }
    }
    REQUIRE(mutant != s);
    try {
      fibered_hom_monoid(cs, fam.inclusion, mutant, s);
      FAIL("expected NotASection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotASection);
    }
  }
}
