// One PASS/FAIL line per acceptance check; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "fibmult/cartesian.hpp"
#include "fibmult/cli.hpp"
#include "fibmult/examples.hpp"
#include "fibmult/presentation.hpp"
#include "oracles.hpp"

using namespace fibmult;
using clk = std::chrono::steady_clock;

namespace {

double since(clk::time_point t) { return std::chrono::duration<double>(clk::now() - t).count(); }

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

struct Corpus {
  std::string name;
  std::shared_ptr<const FiberedMulticategory> fm;
  std::optional<CartesianStructure> cs;
};

// Instances carrying a cartesian structure.
std::vector<Corpus> cartesian_corpus() {
  std::vector<Corpus> out;
  auto add = [&](const std::string& name, std::shared_ptr<const StandardMulticategory> s) {
    out.push_back({name, s->fm_ptr(), cartesian_structure(*s)});
  };
  ExampleParams z3;
  z3.ring_order = 3;
  add("terminal(3)", gen_example("terminal", {}, 3).standard);
  add("ring Z/2(3)", gen_example("ring", {}, 3).standard);
  add("ring Z/3(2)", gen_example("ring", z3, 2).standard);
  add("matrix Z/2 dims 0..1(2)", gen_example("matrix", [] { ExampleParams p; p.max_dim = 1; return p; }(), 2).standard);
  add("finite products", finite_product_instance());
  add("affine Z/2 over the diagonal base", eckmann_hilton_instance());
  auto base = BaseCategory::finset(2);
  auto pres = ring_presentation(2);
  std::vector<std::vector<ArrowId>> comps;
  auto fam = from_fibration(base, family_fibration(pres->category_ptr(), *base, &comps));
  out.push_back({"Fam(Z/2)(2)", fam.fm, enriched_family_structure(fam, *pres, comps)});
  return out;
}

const std::vector<Corpus>& corpus() {
  static const auto c = cartesian_corpus();
  return c;
}

Outcome axioms_and_mutants() {
  Outcome o;
  const auto start = clk::now();
  ExampleParams z3;
  z3.ring_order = 3;
  std::vector<std::pair<std::string, Example>> cases{{"terminal(3)", gen_example("terminal", {}, 3)},
                                                     {"ring Z/2(3)", gen_example("ring", {}, 3)},
                                                     {"ring Z/3(2)", gen_example("ring", z3, 2)},
                                                     {"sequential(2)", gen_example("sequential", {}, 2)},
                                                     {"finset_self_indexed(2)", finset_self_indexed(2)}};
  for (const auto& [name, e] : cases) {
    o.require(verify_axioms(*e.fm).empty(), name + " axioms");
    o.require(check_extensivity(*e.fm).empty(), name + " extensivity");
  }
  const auto& ring = *cases[1].second.fm;
  auto del = mutant_delete_square(ring);
  auto dup = mutant_duplicate_lift(ring);
  auto gone = mutant_delete_family_arrow(ring);
  o.require(del && dup && gone, "mutants exist");
  if (o.ok) {
    auto vs = verify_axioms(*del);
    o.require(vs.size() == 1 && vs[0].kind == ViolationKind::ExistenceViolation, "deleted square");
    vs = verify_axioms(*dup);
    o.require(vs.size() == 1 && vs[0].kind == ViolationKind::UniquenessViolation, "duplicated lift");
    vs = check_extensivity(*gone);
    std::set<ViolationKind> kinds;
    for (const auto& v : vs) kinds.insert(v.kind);
    o.require(kinds == std::set<ViolationKind>{ViolationKind::ExistenceViolation}, "deleted family arrow");
  }
  o.require(since(start) < 30.0, "over 30 s");
  return o;
}

Outcome coreindex_values() {
  Outcome o;
  {
    auto ex = gen_example("ring", {}, 3);
    auto cs = cartesian_structure(*ex.standard);
    const auto& st = *ex.standard;
    const auto& base = st.base();
    const FinSet three = standard_set(3);
    const ArrowId f = *base.arrow_of(make_map(three, three, {2, 0, 2}));
    const ArrowId bang = *base.arrow_of(make_map(three, standard_set(1), {0, 0, 0}));
    const ObjectId x = *st.object_of(*base.object_of(three), {0, 0, 0});
    const ObjectId z = *st.object_of(*base.object_of(standard_set(1)), {0});
    const ArrowId lift = st.reindexing(f, x);
    // Push each basis vector e_i and read off which output positions it reaches.
    const std::vector<std::string> t{"b", "c", "a"};
    std::vector<std::string> got(3);
    for (std::size_t i = 0; i < 3; ++i) {
      Payload e(3, 0);
      e[i] = 1;
      const auto& out = st.components(coreindex(cs, *st.arrow_of(x, z, bang, {e}), lift, bang)).front();
      for (std::size_t j = 0; j < 3; ++j)
        if (out[j]) got[j] += (got[j].empty() ? "" : "+") + t[i];
    }
    for (auto& s : got)
      if (s.empty()) s = "0";
    o.require(got == std::vector<std::string>{"c", "0", "b+a"}, "ring coreindex");
    o.require(got == oracle::fiber_sums({2, 0, 2}, t, 3), "ring oracle");
  }
  {
    auto st = finite_product_instance();
    auto cs = cartesian_structure(*st);
    const auto& base = st->base();
    const FinSet three = standard_set(3), other = make_set("[3']", three.elements);
    const ArrowId f = *base.arrow_of(make_map(three, other, {2, 0, 2}));
    const ArrowId bang = *base.arrow_of(make_map(other, standard_set(1), {0, 0, 0}));
    const ArrowId bang_x = *base.arrow_of(make_map(three, standard_set(1), {0, 0, 0}));
    const ObjectId y = *st->object_of(*base.object_of(other), {1, 2, 0});
    const ObjectId d = *st->object_of(*base.object_of(standard_set(1)), {3});
    const ArrowId lift = st->reindexing(f, y);
    const ObjectId x = st->fm().reindexings().dom(lift);
    o.require(st->family(x) == std::vector<int>{0, 1, 0}, "f*Y = (A,B,A)");
    for (int mask = 0; mask < 256 && o.ok; ++mask) {
      Payload t(8);
      for (int k = 0; k < 8; ++k) t[k] = (mask >> k) & 1;
      const auto& pushed = st->components(coreindex(cs, *st->arrow_of(x, d, bang_x, {t}), lift, bang)).front();
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int a = 0; a < 2; ++a)
            o.require(pushed[oracle::row2({b, c, a})] == t[oracle::row2({a, b, a})], "f!t(b,c,a) = t(a,b,a)");
    }
  }
  return o;
}

Outcome product_predicates() {
  Outcome o;
  {
    const auto start = clk::now();
    ExampleParams p;
    p.max_dim = 2;
    auto ex = gen_example("matrix", p, 2);
    auto cs = cartesian_structure(*ex.standard);
    auto report = products_equivalence_report(cs, 2);
    o.require(report.equivalent(), "Mat(Z/2) counterexample");
    const auto& base = cs.host().base();
    std::size_t in_range = 0;
    for (const auto& row : report.rows) {
      const FinMap& f = base.map(row.f);
      const bool fit = oracle::dims_fit(ex.standard->family(row.x), f.assignment, f.cod.size(), 2);
      in_range += fit;
      o.require(row.up == fit && row.sr == fit && (!row.ap || *row.ap == fit), "Mat(Z/2) row disagrees with dimensions");
    }
    o.require(in_range > 0, "Mat(Z/2) no rows in range");
    o.require(since(start) < 60.0, "Mat(Z/2) over 60 s");
  }
  {
    const auto start = clk::now();
    auto ex = gen_example("ring", {}, 3);
    auto cs = cartesian_structure(*ex.standard);
    auto report = products_equivalence_report(cs, 3);
    o.require(report.equivalent(), "M_Z/2 counterexample");
    const auto& base = cs.host().base();
    std::size_t merging = 0;
    for (const auto& row : report.rows) {
      if (is_injective(base.map(row.f))) continue;
      ++merging;
      o.require(!row.up && !row.sr && (!row.ap || !*row.ap), "M_Z/2 product along a merging map");
    }
    o.require(merging > 0, "M_Z/2 no merging maps");
    o.require(since(start) < 60.0, "M_Z/2 over 60 s");
  }
  return o;
}

Outcome coherence(std::size_t& configurations) {
  Outcome o;
  for (const auto& c : corpus()) {
    auto r = coherence_check(*c.cs);
    configurations += r.configurations;
    o.require(r.failures.empty(), c.name);
  }
  o.require(configurations > 0, "no invertible tops");
  return o;
}

Outcome frobenius_bc(std::size_t& configurations) {
  Outcome o;
  for (const auto& c : corpus()) {
    auto fr = frobenius_equations(*c.cs);
    auto bc = beck_chevalley_equations(*c.cs);
    configurations += fr.configurations + bc.configurations;
    o.require(fr.failures.empty(), c.name + " FR");
    o.require(bc.failures.empty(), c.name + " BC");
  }
  return o;
}

Outcome two_monoids() {
  Outcome o;
  auto s = eckmann_hilton_instance();
  const auto& fm = s->fm();
  const ObjectId i = *fm.base().category().find_object("[2]");
  // n-ary operation c(n) + Σ x_i; c = 0 is xor, c = n + 1 mod 2 is xnor
  std::vector<int> units{0, 1};
  std::vector<MonoidInM> monoids;
  for (int unit : units) {
    monoids.push_back(monoid_from_operations(*s, 0, [unit](std::size_t n) {
      Payload p(n + 1, 1);
      p[0] = unit ? static_cast<int>((n + 1) % 2) : 0;
      return p;
    }));
    o.require(verify_monoid(fm, monoids.back()).empty(), "monoid laws");
  }
  std::size_t collapsed = 0;
  for (std::size_t a = 0; a < monoids.size(); ++a) {
    for (std::size_t b = 0; b < monoids.size(); ++b) {
      auto r = eckmann_hilton(fm, monoids[a], monoids[b], i);
      o.require(r.sound(), "Eckmann-Hilton implication");
      o.require(r.shared_identity == (units[a] == units[b]), "shared identity oracle");
      o.require(r.commuting == oracle::interchange(units[a], units[b]), "interchange oracle");
      if (r.shared_identity && r.commuting) {
        ++collapsed;
        o.require(r.collapse_over_I, "a! = a'!");
      }
      if (r.delta_commuting) o.require(r.identities_coincide, "a_Δ = a'_Δ");
    }
  }
  o.require(collapsed > 0, "hypothesis never met");
  return o;
}

Outcome bridge() {
  Outcome o;
  auto pf = arrow_pseudofunctor();
  o.require(verify_pseudofunctor(pf).empty(), "pseudofunctor laws");
  auto base = BaseCategory::explicit_category(*pf.base);
  auto total = from_fibration(base, grothendieck(pf));
  auto unary = unary_part(*total.fm);
  o.require(verify_axioms(*unary).empty(), "unary instance axioms");
  auto g = grothendieck_unary(*unary);
  o.require(classify_fibration(g).is_fibration, "classify_fibration");
  auto back = from_fibration(base, g);
  auto fc = fibchar_check(*back.fm, back.inclusion);
  o.require(!fc.hypothesis || fc.conclusion, "fibchar implication");
  o.require(fc.hypothesis, "fibchar hypothesis");
  o.require(roundtrip_unary(*unary).ok(), "round trip");
  return o;
}

Outcome commutation(std::size_t& pairs) {
  Outcome o;
  auto check = [&](const FiberedMulticategory& fm, const Endomorphism& e1, const Endomorphism& e2) {
    auto flags = commutation_choices(fm, e1, e2);
    if (flags.size() < 2) return;
    ++pairs;
    for (bool f : flags) o.require(f == flags.front(), "choice-dependent flag");
  };
  {
    auto s = eckmann_hilton_instance();
    const auto& fm = s->fm();
    auto m = monoid_from_operations(*s, 0, [](std::size_t n) {
      Payload p(n + 1, 1);
      p[0] = 0;
      return p;
    });
    const auto& B = fm.base().category();
    for (ArrowId f = 0; f < B.arrow_count(); ++f)
      for (ArrowId g = 0; g < B.arrow_count(); ++g) check(fm, m.over(f), m.over(g));
  }
  for (const auto& c : corpus()) {
    if (c.name != "ring Z/3(2)" && c.name != "terminal(3)") continue;
    const auto& fm = *c.fm;
    const auto& M = fm.families();
    const auto& D = fm.reindexings();
    std::vector<Endomorphism> es;
    for (ArrowId a = 0; a < M.arrow_count(); ++a)
      for (ArrowId t : D.hom(M.dom(a), M.cod(a)))
        if (fm.d(t) == fm.p(a)) es.push_back({a, t});
    for (const auto& e1 : es)
      for (const auto& e2 : es)
        if (M.cod(e1.a) == M.cod(e2.a)) check(fm, e1, e2);
  }
  o.require(pairs > 0, "no pair with several choices");
  return o;
}

Outcome hom_monoid() {
  Outcome o;
  auto base = BaseCategory::finset(2);
  auto pres = ring_presentation(2);
  std::vector<std::vector<ArrowId>> comps;
  auto fam = from_fibration(base, family_fibration(pres->category_ptr(), *base, &comps));
  auto cs = enriched_family_structure(fam, *pres, comps);
  o.require(verify_cartesian_structure(cs).empty(), "enriched structure");
  const auto& fm = *fam.fm;
  std::vector<ArrowId> s(base->category().arrow_count());
  for (ArrowId h = 0; h < fm.reindexings().arrow_count(); ++h) s[fm.d(h)] = fam.inclusion.on_arrows[h];
  auto hom = fibered_hom_monoid(cs, fam.inclusion, s, s);
  o.require(hom.violations.empty(), "verify_fibered_monoid");
  o.require(hom.carrier.size() == 1 + 2 + 4, "carrier count");
  auto rows = sums_products_report(cs, 2);
  o.require(!rows.empty(), "no coincidence rows");
  for (const auto& r : rows) o.require(r.sum == r.product && (!r.sum || r.same_carrier), "sums differ from products");
  return o;
}

int run_tool(const std::string& args) {
#ifdef FIBMULT_TOOL
  const int status = std::system((std::string(FIBMULT_TOOL) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  (void)args;
  return -1;
#endif
}

Outcome cli_round_trip(std::size_t& fixtures) {
  Outcome o;
  const std::string dir = FIBMULT_FIXTURES;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name == "malformed.json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    o.require(serialize_presentation(parse_presentation(buf.str())) == buf.str(), name + " round trip");
    ++fixtures;
  }
  o.require(fixtures > 0, "no fixtures");
  o.require(run_tool("check " + dir + "/terminal.json") == 0, "exit 0 on terminal.json");
  o.require(run_tool("check " + dir + "/mutant_missing_square.json") == 1, "exit 1 on mutant_missing_square.json");
  o.require(run_tool("check " + dir + "/malformed.json") == 2, "exit 2 on malformed.json");
  return o;
}

}  // namespace

int main() {
  std::size_t inverse_lifts = 0, equations = 0, pairs = 0, fixtures = 0;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axiom suite and mutants", axioms_and_mutants},
      {"coreindex on the worked examples", coreindex_values},
      {"AP = UP = SR", product_predicates},
      {"coherence of coreindex with inverse lifts", [&] { return coherence(inverse_lifts); }},
      {"Frobenius and Beck-Chevalley equations", [&] { return frobenius_bc(equations); }},
      {"Eckmann-Hilton", two_monoids},
      {"Grothendieck bridge over {0 -> 1}", bridge},
      {"commutation independent of choices", [&] { return commutation(pairs); }},
      {"fibered hom monoid and sums = products", hom_monoid},
      {"CLI round trip and exit codes", [&] { return cli_round_trip(fixtures); }},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = clk::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("threw ") + e.what();
    }
    all = all && o.ok;
    std::printf("%s %2zu  %-45s %7.2fs%s%s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), since(start),
                o.note.empty() ? "" : "  ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("configurations: coherence %zu, FR+BC %zu; commuting pairs with several choices %zu; fixtures %zu\n",
              inverse_lifts, equations, pairs, fixtures);
  return all ? 0 : 1;
}
