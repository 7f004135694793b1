#include "fibmult/examples.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

std::vector<ObjectId> object_shapes(const FiberedMulticategory& fm) {
  std::vector<ObjectId> out(fm.object_count());
  for (ObjectId x = 0; x < out.size(); ++x) out[x] = fm.shape(x);
  return out;
}

std::vector<ArrowId> d_shapes(const FiberedMulticategory& fm) {
  std::vector<ArrowId> out(fm.reindexings().arrow_count());
  for (ArrowId h = 0; h < out.size(); ++h) out[h] = fm.d(h);
  return out;
}

std::vector<ArrowId> p_shapes(const FiberedMulticategory& fm) {
  std::vector<ArrowId> out(fm.families().arrow_count());
  for (ArrowId a = 0; a < out.size(); ++a) out[a] = fm.p(a);
  return out;
}

Example from_standard(std::string name, std::shared_ptr<const StandardMulticategory> s) {
  Example e;
  e.name = std::move(name);
  e.fm = s->fm_ptr();
  e.triangles.assign(s->triangles().begin(), s->triangles().end());
  e.standard = std::move(s);
  return e;
}

}  // namespace

std::shared_ptr<FinCategory> chain_category(int n) {
  auto c = std::make_shared<FinCategory>();
  for (int k = 0; k < n; ++k) c->add_object(std::to_string(k));
  std::map<std::pair<int, int>, ArrowId> le;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) le[{a, b}] = c->add_arrow(std::to_string(a) + "<=" + std::to_string(b), a, b);
    c->set_identity(a, le[{a, a}]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int k = b; k < n; ++k) c->set_compose(le[{b, k}], le[{a, b}], le[{a, k}]);
  return c;
}

Example gen_example(const std::string& name, const ExampleParams& params, std::size_t bound) {
  if (name == "terminal") return from_standard(name, build_standard(ring_presentation(1), bound));
  if (name == "ring") {
    if (params.ring_order < 1) throw Error(ErrorCode::BadParams, "ring order must be positive");
    return from_standard(name, build_standard(ring_presentation(params.ring_order), bound));
  }
  if (name == "sequential") {
    auto c = params.category ? params.category : chain_category(3);
    if (!validate_category(*c).empty()) throw Error(ErrorCode::BadParams, "sequential generator needs a valid category");
    return from_standard(name, build_standard(std::make_shared<SequentialPresentation>(c), bound));
  }
  if (name == "matrix") return from_standard(name, build_standard(matrix_presentation(params.max_dim), bound));
  if (name == "finset_self_indexed") return finset_self_indexed(bound);
  if (name == "pseudo_identity") {
    if (bound < 1) throw Error(ErrorCode::BoundTooSmall, "pseudo-identities need singletons");
    std::vector<FinSet> sets;
    for (std::size_t n = 0; n <= bound; ++n) sets.push_back(standard_set(n));
    sets.push_back(make_set("{*}", {"*"}));
    auto base = BaseCategory::finset_universe(std::move(sets), bound);
    auto s = build_standard(ring_presentation(1), base);
    auto e = from_standard(name, s);
    const auto& B = base->category();
    const ObjectId i = *B.find_object("[1]");
    const ObjectId j = *B.find_object("{*}");
    const ArrowId to_i = B.hom(j, i).front();
    const ObjectId x = s->fm().d_index().objects_over(i).front();
    const BaseSquare sq{to_i, to_i, B.identity(i), B.identity(i)};
    e.designated = reindex(s->fm(), s->fm().families().identity(x), sq);
    return e;
  }
  throw Error(ErrorCode::BadParams, "unknown example '" + name + "'");
}

Example finset_self_indexed(std::size_t bound) {
  std::vector<std::string> names;
  std::vector<int> sizes;
  for (std::size_t n = 0; n <= bound; ++n) {
    names.push_back(std::to_string(n));
    sizes.push_back(static_cast<int>(n));
  }
  auto pres = std::make_shared<FunctionPresentation>(names, sizes);
  StandardOptions opts;
  opts.triangles = false;
  auto s = build_standard(pres, BaseCategory::finset(bound), opts);
  const auto& sfm = s->fm();
  const auto& base = sfm.base();
  const auto& B = base.category();
  const auto& M = sfm.families();

  // D: reindexings together with a bijection on every fiber.
  struct Reindexing {
    ArrowId phi;
    ObjectId target;
    std::vector<std::vector<int>> perms;  // perms[i']: fiber of the domain → fiber of the target
  };
  auto D = std::make_shared<FinCategory>();
  for (ObjectId x = 0; x < sfm.object_count(); ++x) D->add_object(sfm.object_name(x));
  std::vector<Reindexing> info;
  std::vector<ArrowId> dshape;
  std::map<std::tuple<ArrowId, ObjectId, std::vector<std::vector<int>>>, ArrowId> index;
  std::map<std::pair<ArrowId, ObjectId>, std::vector<ArrowId>> lifts;
  for (ArrowId phi = 0; phi < B.arrow_count(); ++phi) {
    for (ObjectId x : sfm.d_index().objects_over(B.cod(phi))) {
      const ArrowId plain = s->reindexing(phi, x);
      const ObjectId src = sfm.reindexings().dom(plain);
      const auto& fam = s->family(src);
      std::vector<std::vector<int>> perms(fam.size());
      bool any = false;
      for (std::size_t k = 0; k < fam.size(); ++k) {
        perms[k].resize(static_cast<std::size_t>(fam[k]));
        std::iota(perms[k].begin(), perms[k].end(), 0);
        any = any || fam[k] > 1;
      }
      while (true) {
        std::string name = "d" + B.arrow_name(phi) + "<" + sfm.object_name(x) + ">";
        if (any) {
          name += "[";
          for (std::size_t k = 0; k < perms.size(); ++k) {
            if (k) name += ",";
            for (int v : perms[k]) name += std::to_string(v + 1);
          }
          name += "]";
        }
        const ArrowId h = D->add_arrow(name, src, x);
        info.push_back(Reindexing{phi, x, perms});
        dshape.push_back(phi);
        index.emplace(std::make_tuple(phi, x, perms), h);
        lifts[{phi, x}].push_back(h);
        bool identity = B.is_identity(phi);
        for (const auto& p : perms)
          for (std::size_t e = 0; e < p.size(); ++e) identity = identity && p[e] == static_cast<int>(e);
        if (identity) D->set_identity(x, h);
        std::size_t k = perms.size();
        while (k > 0 && !std::next_permutation(perms[k - 1].begin(), perms[k - 1].end())) --k;
        if (k == 0) break;
      }
    }
  }
  for (ArrowId h = 0; h < D->arrow_count(); ++h) {
    for (ArrowId k : D->in_arrows(D->dom(h))) {
      const auto& hi = info[h];
      const auto& ki = info[k];
      const FinMap& psi = base.map(ki.phi);
      std::vector<std::vector<int>> perms(ki.perms.size());
      for (std::size_t i = 0; i < perms.size(); ++i) {
        for (int e : ki.perms[i]) perms[i].push_back(hi.perms[psi(i)][e]);
      }
      D->set_compose(h, k, index.at(std::make_tuple(B.comp(hi.phi, ki.phi), hi.target, perms)));
    }
  }

  // Special squares: b_l(u) = β'_l⁻¹ a_{bottom l}(β_k(u_k)), with the inputs
  // of a matched to the fiber of l through top.
  std::vector<SpecialSquare> squares;
  for (const auto& sq : base.pullbacks()) {
    const FinMap& top = base.map(sq.top);
    const FinMap& left = base.map(sq.left);
    const FinMap& bottom = base.map(sq.bottom);
    const FinMap& right = base.map(sq.right);
    for (ArrowId a : sfm.p_index().over(sq.right)) {
      const ObjectId x = M.dom(a);
      const ObjectId y = M.cod(a);
      for (ArrowId h1 : lifts[{sq.top, x}]) {
        const ObjectId u = D->dom(h1);
        for (ArrowId h2 : lifts[{sq.bottom, y}]) {
          const ObjectId v = D->dom(h2);
          std::vector<Payload> comps(left.cod.size());
          for (std::size_t l = 0; l < comps.size(); ++l) {
            const std::size_t j = bottom(l);
            std::vector<int> ks, is;
            for (std::size_t k = 0; k < left.dom.size(); ++k)
              if (left(k) == l) ks.push_back(static_cast<int>(k));
            for (std::size_t i = 0; i < right.dom.size(); ++i)
              if (right(i) == j) is.push_back(static_cast<int>(i));
            std::vector<int> udom, xdom;
            for (int k : ks) udom.push_back(s->family(u)[k]);
            for (int i : is) xdom.push_back(s->family(x)[i]);
            const auto& inverse_target = info[h2].perms[l];
            std::vector<int> back(inverse_target.size());
            for (std::size_t e = 0; e < back.size(); ++e) back[inverse_target[e]] = static_cast<int>(e);
            const std::size_t rows = pres->table_size(udom);
            Payload table(rows);
            std::vector<int> args(ks.size(), 0), xargs(is.size(), 0);
            for (std::size_t r = 0; r < rows; ++r) {
              for (std::size_t q = 0; q < ks.size(); ++q) {
                const int i = static_cast<int>(top(ks[q]));
                const auto pos = std::find(is.begin(), is.end(), i) - is.begin();
                xargs[pos] = info[h1].perms[ks[q]][args[q]];
              }
              table[r] = back[s->components(a)[j][pres->row(xdom, xargs)]];
              for (std::size_t q = ks.size(); q > 0; --q) {
                if (++args[q - 1] < udom[q - 1]) break;
                args[q - 1] = 0;
              }
            }
            comps[l] = std::move(table);
          }
          auto b = s->arrow_of(u, v, sq.left, comps);
          if (!b) throw Error(ErrorCode::LawViolation, "restricted family is not a family of functions");
          squares.push_back(SpecialSquare{h1, h2, a, *b});
        }
      }
    }
  }

  Example e;
  e.name = "finset_self_indexed";
  e.fm = std::make_shared<FiberedMulticategory>(sfm.base_ptr(), D, sfm.families_ptr(), object_shapes(sfm),
                                                std::move(dshape), p_shapes(sfm), std::move(squares));
  return e;
}

std::shared_ptr<const BaseCategory> diagonal_base() {
  std::vector<FinSet> sets{standard_set(1), standard_set(2), standard_set(4)};
  const FinSet& one = sets[0];
  const FinSet& two = sets[1];
  const FinSet& four = sets[2];
  // Element (a, b) of [2]×[2] is 2(a-1) + b.
  std::vector<FinMap> gens{FinMap{two, four, {0, 3}}, FinMap{four, two, {0, 0, 1, 1}}, FinMap{four, two, {0, 1, 0, 1}},
                           FinMap{two, one, {0, 0}}};
  return BaseCategory::generated(sets, gens);
}

std::shared_ptr<const StandardMulticategory> eckmann_hilton_instance() {
  return build_standard(std::make_shared<AffinePresentation>(), diagonal_base());
}

std::shared_ptr<const StandardMulticategory> finite_product_instance() {
  // f runs between two copies of {1,2,3} so that f∘f stays out of the base
  std::vector<FinSet> sets{standard_set(1), standard_set(3), make_set("[3']", standard_set(3).elements)};
  std::vector<FinMap> gens{FinMap{sets[1], sets[2], {2, 0, 2}}, FinMap{sets[1], sets[0], {0, 0, 0}},
                           FinMap{sets[2], sets[0], {0, 0, 0}}};
  auto base = BaseCategory::generated(sets, gens);
  auto pres = std::make_shared<FunctionPresentation>(std::vector<std::string>{"A", "B", "C", "D"},
                                                     std::vector<int>{2, 2, 2, 2});
  const auto& B = base->category();
  StandardOptions opts;
  opts.seeds = std::vector<std::pair<ObjectId, std::vector<int>>>{{*B.find_object("[3']"), {1, 2, 0}},
                                                                  {*B.find_object("[1]"), {3}}};
  return build_standard(pres, base, opts);
}

std::shared_ptr<FinCategory> codiscrete(const std::vector<std::string>& names) {
  auto c = std::make_shared<FinCategory>();
  const auto n = static_cast<ObjectId>(names.size());
  for (const auto& name : names) c->add_object(name);
  for (ObjectId x = 0; x < n; ++x) {
    for (ObjectId y = 0; y < n; ++y) {
      const ArrowId a = c->add_arrow(names[x] + ">" + names[y], x, y);
      if (x == y) c->set_identity(x, a);
    }
  }
  for (ObjectId x = 0; x < n; ++x) {
    for (ObjectId y = 0; y < n; ++y) {
      for (ObjectId z = 0; z < n; ++z) c->set_compose(y * n + z, x * n + y, x * n + z);
    }
  }
  return c;
}

Pseudofunctor arrow_pseudofunctor() {
  FinCategory arrow;
  arrow.add_object("0");
  arrow.add_object("1");
  const ArrowId id0 = arrow.add_arrow("id0", 0, 0);
  const ArrowId id1 = arrow.add_arrow("id1", 1, 1);
  const ArrowId u = arrow.add_arrow("u", 0, 1);
  arrow.set_identity(0, id0);
  arrow.set_identity(1, id1);
  arrow.set_compose(id0, id0, id0);
  arrow.set_compose(id1, id1, id1);
  arrow.set_compose(u, id0, u);
  arrow.set_compose(id1, u, u);

  Pseudofunctor pf;
  pf.base = std::make_shared<const FinCategory>(std::move(arrow));
  auto f0 = codiscrete({"a", "b"});
  auto f1 = codiscrete({"c", "d"});
  pf.fibers = {f0, f1};
  // arrow x>y of a 2-object codiscrete groupoid has id 2x + y
  auto swap = [](ArrowId a) { return ArrowId{3} - a; };
  pf.reindex.resize(3);
  pf.reindex[id0] = FinFunctor{f0, f0, {1, 0}, {swap(0), swap(1), swap(2), swap(3)}};
  pf.reindex[id1] = FinFunctor{f1, f1, {0, 1}, {0, 1, 2, 3}};
  pf.reindex[u] = FinFunctor{f1, f0, {0, 0}, {0, 0, 0, 0}};
  pf.identity = {{1, 2}, {0, 3}};
  pf.composition[{id0, id0}] = {1, 2};
  pf.composition[{id1, id1}] = {0, 3};
  pf.composition[{u, id0}] = {2, 2};
  pf.composition[{id1, u}] = {0, 0};
  return pf;
}

MonoidInM monoid_from_operations(const StandardMulticategory& s, int object,
                                 const std::function<Payload(std::size_t)>& op) {
  const auto& base = s.base();
  const auto& B = base.category();
  MonoidInM m;
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    auto x = s.object_of(i, std::vector<int>(base.set(i).size(), object));
    if (!x) throw Error(ErrorCode::BadParams, "constant family missing over " + B.object_name(i));
    m.objects.push_back(*x);
  }
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const FinMap& map = base.map(f);
    const ObjectId x = m.objects[B.dom(f)];
    const ObjectId y = m.objects[B.cod(f)];
    std::vector<std::size_t> arity(map.cod.size(), 0);
    for (std::size_t i = 0; i < map.dom.size(); ++i) ++arity[map(i)];
    std::vector<Payload> comps;
    for (std::size_t n : arity) comps.push_back(op(n));
    auto a = s.arrow_of(x, y, f, comps);
    if (!a) throw Error(ErrorCode::BadParams, "operation is not a single arrow");
    m.p_section.push_back(*a);
    m.d_section.push_back(s.reindexing(f, y));
  }
  return m;
}

std::shared_ptr<FinCategory> copy_without(const FinCategory& c, ArrowId removed, std::vector<ArrowId>& remap) {
  auto out = std::make_shared<FinCategory>();
  for (ObjectId x = 0; x < c.object_count(); ++x) out->add_object(c.object_name(x));
  remap.assign(c.arrow_count(), kNoArrow);
  for (ArrowId a = 0; a < c.arrow_count(); ++a) {
    if (a != removed) remap[a] = out->add_arrow(c.arrow_name(a), c.dom(a), c.cod(a));
  }
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    if (c.identity(x) != kNoArrow && remap[c.identity(x)] != kNoArrow) out->set_identity(x, remap[c.identity(x)]);
  }
  c.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    if (remap[g] != kNoArrow && remap[f] != kNoArrow && remap[gf] != kNoArrow) {
      out->set_compose(remap[g], remap[f], remap[gf]);
    }
  });
  return out;
}

namespace {

bool plain_square(const FiberedMulticategory& fm, const SpecialSquare& sq) {
  return !fm.reindexings().is_identity(sq.top) && !fm.reindexings().is_identity(sq.bottom) &&
         !fm.families().is_identity(sq.right) && !fm.families().is_identity(sq.left);
}

std::optional<ArrowId> binary_family(const FiberedMulticategory& fm) {
  if (!fm.base().set_backed()) return std::nullopt;
  const auto& B = fm.base().category();
  for (ArrowId a = 0; a < fm.families().arrow_count(); ++a) {
    const ArrowId f = fm.p(a);
    if (fm.families().is_identity(a)) continue;
    if (fm.base().set(B.cod(f)).size() == 2 && fm.base().set(B.dom(f)).size() == 2) return a;
  }
  return std::nullopt;
}

}  // namespace

std::optional<FiberedMulticategory> mutant_delete_square(const FiberedMulticategory& fm) {
  auto squares = std::vector<SpecialSquare>(fm.special_squares().begin(), fm.special_squares().end());
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (!plain_square(fm, squares[i])) continue;
    squares.erase(squares.begin() + static_cast<std::ptrdiff_t>(i));
    return fm.with_special_squares(std::move(squares));
  }
  return std::nullopt;
}

std::optional<FiberedMulticategory> mutant_duplicate_lift(const FiberedMulticategory& fm) {
  const auto& M = fm.families();
  auto squares = std::vector<SpecialSquare>(fm.special_squares().begin(), fm.special_squares().end());
  for (const auto& sq : fm.special_squares()) {
    if (!plain_square(fm, sq)) continue;
    for (ArrowId b : M.hom(M.dom(sq.left), M.cod(sq.left))) {
      if (b == sq.left || fm.p(b) != fm.p(sq.left)) continue;
      squares.push_back(SpecialSquare{sq.top, sq.bottom, sq.right, b});
      return fm.with_special_squares(std::move(squares));
    }
  }
  return std::nullopt;
}

std::optional<FiberedMulticategory> mutant_delete_family_arrow(const FiberedMulticategory& fm) {
  auto a = binary_family(fm);
  if (!a) return std::nullopt;
  std::vector<ArrowId> remap;
  auto M = copy_without(fm.families(), *a, remap);
  std::vector<ArrowId> p;
  for (ArrowId c = 0; c < fm.families().arrow_count(); ++c)
    if (c != *a) p.push_back(fm.p(c));
  std::vector<SpecialSquare> squares;
  for (const auto& sq : fm.special_squares()) {
    if (sq.right == *a || sq.left == *a) continue;
    squares.push_back(SpecialSquare{sq.top, sq.bottom, remap[sq.right], remap[sq.left]});
  }
  return FiberedMulticategory(fm.base_ptr(), fm.reindexings_ptr(), M, object_shapes(fm), d_shapes(fm), std::move(p),
                              std::move(squares));
}

std::optional<FiberedMulticategory> mutant_duplicate_amalgamation(const FiberedMulticategory& fm) {
  auto a = binary_family(fm);
  if (!a) return std::nullopt;
  std::vector<ArrowId> remap;
  auto M = copy_without(fm.families(), kNoArrow, remap);
  const auto& old = fm.families();
  const ArrowId copy = M->add_arrow(old.arrow_name(*a) + "'", old.dom(*a), old.cod(*a));
  M->set_compose(M->identity(old.cod(*a)), copy, copy);
  M->set_compose(copy, M->identity(old.dom(*a)), copy);
  auto p = p_shapes(fm);
  p.push_back(fm.p(*a));
  std::vector<SpecialSquare> squares(fm.special_squares().begin(), fm.special_squares().end());
  for (const auto& sq : fm.special_squares()) {
    if (sq.right == *a) squares.push_back(SpecialSquare{sq.top, sq.bottom, copy, sq.left});
  }
  return FiberedMulticategory(fm.base_ptr(), fm.reindexings_ptr(), M, object_shapes(fm), d_shapes(fm), std::move(p),
                              std::move(squares));
}

}  // namespace fibmult
