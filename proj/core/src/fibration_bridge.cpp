#include "fibmult/fibration_bridge.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

using Witness = std::vector<std::pair<std::string, std::string>>;

Violation make(ViolationKind kind, std::string detail, Witness witness) {
  return Violation{kind, std::move(detail), std::move(witness)};
}

}  // namespace

FibrationMulticategory from_fibration(std::shared_ptr<const BaseCategory> base, const FinFunctor& p) {
  const auto& B = base->category();
  if (p.cod->object_count() != B.object_count() || p.cod->arrow_count() != B.arrow_count()) {
    throw Error(ErrorCode::InvalidInput, "fibration is not over the given base");
  }
  auto report = classify_fibration(p);
  if (!report.is_fibration) {
    std::string detail = "functor is not a fibration";
    if (!report.witnesses.empty()) detail += ": " + report.witnesses.front().detail;
    throw Error(ErrorCode::NotAFibration, detail);
  }
  const auto& E = *p.dom;
  LiftIndex index(p);

  auto D = std::make_shared<FinCategory>();
  for (ObjectId x = 0; x < E.object_count(); ++x) D->add_object(E.object_name(x));
  std::vector<ArrowId> incl, back(E.arrow_count(), kNoArrow), dshape;
  for (ArrowId a = 0; a < E.arrow_count(); ++a) {
    if (!is_cartesian(p, index, a)) continue;
    back[a] = D->add_arrow(E.arrow_name(a), E.dom(a), E.cod(a));
    incl.push_back(a);
    dshape.push_back(p.on_arrows[a]);
  }
  for (ObjectId x = 0; x < E.object_count(); ++x) D->set_identity(x, back[E.identity(x)]);
  E.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    if (back[g] != kNoArrow && back[f] != kNoArrow && back[gf] != kNoArrow) D->set_compose(back[g], back[f], back[gf]);
  });

  FinFunctor d{D, p.cod, p.on_objects, dshape};
  LiftIndex dindex(d);
  std::vector<SpecialSquare> squares;
  for (const auto& sq : base->pullbacks()) {
    for (ArrowId a : index.over(sq.right)) {
      for (ArrowId h1 : dindex.lifts_into(sq.top, E.dom(a))) {
        const auto ah1 = E.compose(a, incl[h1]);
        for (ArrowId h2 : dindex.lifts_into(sq.bottom, E.cod(a))) {
          for (ArrowId b : E.hom(D->dom(h1), D->dom(h2))) {
            if (p.on_arrows[b] == sq.left && E.compose(incl[h2], b) == ah1) squares.push_back(SpecialSquare{h1, h2, a, b});
          }
        }
      }
    }
  }

  FibrationMulticategory out;
  out.fm = std::make_shared<FiberedMulticategory>(base, D, p.dom, p.on_objects, dshape, p.on_arrows, std::move(squares));
  out.inclusion = FinFunctor{D, p.dom, std::vector<ObjectId>(E.object_count()), incl};
  for (ObjectId x = 0; x < E.object_count(); ++x) out.inclusion.on_objects[x] = x;
  return out;
}

FinFunctor family_fibration(std::shared_ptr<const FinCategory> c, const BaseCategory& base,
                            std::vector<std::vector<ArrowId>>* components) {
  if (!base.set_backed()) throw Error(ErrorCode::BadParams, "family fibration needs a set-backed base");
  const auto& B = base.category();
  const std::size_t n = c->object_count();
  auto E = std::make_shared<FinCategory>();
  std::vector<ObjectId> shape;
  std::vector<std::vector<ObjectId>> family;
  std::map<std::pair<ObjectId, std::vector<ObjectId>>, ObjectId> object_index;
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    const std::size_t size = base.set(i).size();
    if (n == 0 && size > 0) continue;
    std::vector<ObjectId> fam(size, 0);
    while (true) {
      std::string name = B.object_name(i);
      if (n > 1) {
        name += "(";
        for (std::size_t k = 0; k < size; ++k) name += (k ? "," : "") + c->object_name(fam[k]);
        name += ")";
      }
      const ObjectId x = E->add_object(name);
      shape.push_back(i);
      family.push_back(fam);
      object_index[{i, fam}] = x;
      std::size_t k = size;
      while (k > 0 && ++fam[k - 1] == n) fam[--k] = 0;
      if (k == 0) break;
    }
  }

  struct Arrow {
    ArrowId phi;
    std::vector<ArrowId> comps;
  };
  std::vector<Arrow> arrows;
  std::vector<ArrowId> proj;
  std::map<std::tuple<ArrowId, ObjectId, ObjectId, std::vector<ArrowId>>, ArrowId> arrow_index;
  for (ArrowId phi = 0; phi < B.arrow_count(); ++phi) {
    const FinMap& map = base.map(phi);
    for (ObjectId src = 0; src < E->object_count(); ++src) {
      if (shape[src] != B.dom(phi)) continue;
      for (ObjectId tgt = 0; tgt < E->object_count(); ++tgt) {
        if (shape[tgt] != B.cod(phi)) continue;
        std::vector<std::span<const ArrowId>> homs;
        bool empty = false;
        for (std::size_t k = 0; k < map.dom.size(); ++k) {
          homs.push_back(c->hom(family[src][k], family[tgt][map(k)]));
          empty = empty || homs.back().empty();
        }
        if (empty) continue;
        std::vector<std::size_t> digit(homs.size(), 0);
        while (true) {
          std::vector<ArrowId> comps(homs.size());
          std::string name = B.arrow_name(phi) + "{";
          for (std::size_t k = 0; k < homs.size(); ++k) {
            comps[k] = homs[k][digit[k]];
            name += (k ? "," : "") + c->arrow_name(comps[k]);
          }
          name += "}";
          if (n > 1) name += "<" + E->object_name(src) + ";" + E->object_name(tgt) + ">";
          const ArrowId a = E->add_arrow(name, src, tgt);
          arrow_index[{phi, src, tgt, comps}] = a;
          arrows.push_back(Arrow{phi, comps});
          proj.push_back(phi);
          std::size_t k = homs.size();
          while (k > 0 && ++digit[k - 1] == homs[k - 1].size()) digit[--k] = 0;
          if (k == 0) break;
        }
      }
    }
  }
  for (ObjectId x = 0; x < E->object_count(); ++x) {
    std::vector<ArrowId> ids;
    for (ObjectId o : family[x]) ids.push_back(c->identity(o));
    E->set_identity(x, arrow_index.at({B.identity(shape[x]), x, x, ids}));
  }
  for (ArrowId g = 0; g < E->arrow_count(); ++g) {
    for (ArrowId f : E->in_arrows(E->dom(g))) {
      const FinMap& psi = base.map(arrows[f].phi);
      std::vector<ArrowId> comps(arrows[f].comps.size());
      for (std::size_t k = 0; k < comps.size(); ++k) comps[k] = c->comp(arrows[g].comps[psi(k)], arrows[f].comps[k]);
      E->set_compose(g, f, arrow_index.at({B.comp(arrows[g].phi, arrows[f].phi), E->dom(f), E->cod(g), comps}));
    }
  }
  if (components) {
    components->clear();
    for (const auto& a : arrows) components->push_back(a.comps);
  }
  return FinFunctor{E, base.category_ptr(), shape, proj};
}

bool is_pullback_square(const FinCategory& c, ArrowId top, ArrowId left, ArrowId bottom, ArrowId right) {
  const auto rt = c.compose(right, top);
  if (!rt || rt != c.compose(bottom, left)) return false;
  const ObjectId x = c.cod(top), v = c.cod(left), u = c.dom(top);
  for (ObjectId w = 0; w < c.object_count(); ++w) {
    std::unordered_map<ArrowId, std::size_t> via_right;
    for (ArrowId k : c.hom(w, x)) ++via_right[c.comp(right, k)];
    std::size_t cones = 0;
    for (ArrowId k : c.hom(w, v)) {
      auto it = via_right.find(c.comp(bottom, k));
      if (it != via_right.end()) cones += it->second;
    }
    std::set<std::pair<ArrowId, ArrowId>> images;
    for (ArrowId k : c.hom(w, u)) {
      if (!images.emplace(c.comp(top, k), c.comp(left, k)).second) return false;
    }
    if (images.size() != cones) return false;
  }
  return true;
}

namespace {

void check_functor_shape(const FiberedMulticategory& fm, const FinFunctor& f) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  if (f.on_objects.size() != D.object_count() || f.on_arrows.size() != D.arrow_count()) {
    throw Error(ErrorCode::ShapeMismatch, "functor tables do not match D");
  }
  for (ObjectId x = 0; x < D.object_count(); ++x) {
    if (f.on_objects[x] != x) throw Error(ErrorCode::ShapeMismatch, "functor is not the identity on objects");
  }
  for (ArrowId h = 0; h < D.arrow_count(); ++h) {
    const ArrowId a = f.on_arrows[h];
    if (a >= M.arrow_count() || fm.p(a) != fm.d(h) || M.dom(a) != D.dom(h) || M.cod(a) != D.cod(h)) {
      throw Error(ErrorCode::ShapeMismatch, "functor is not over the base at " + D.arrow_name(h));
    }
  }
  if (!validate_functor(f).empty()) throw Error(ErrorCode::ShapeMismatch, "not a functor");
}

}  // namespace

FibcharReport fibchar_check(const FiberedMulticategory& fm, const FinFunctor& f) {
  check_functor_shape(fm, f);
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  FibcharReport r;
  r.hypothesis = true;
  for (const auto& sq : fm.special_squares()) {
    if (is_pullback_square(M, f.on_arrows[sq.top], sq.left, f.on_arrows[sq.bottom], sq.right)) continue;
    r.hypothesis = false;
    r.witnesses.push_back(make(ViolationKind::SquareNotPullback, "image of a special square is not a pullback in M",
                               {{"top", D.arrow_name(sq.top)},
                                {"bottom", D.arrow_name(sq.bottom)},
                                {"right", M.arrow_name(sq.right)},
                                {"left", M.arrow_name(sq.left)}}));
    break;
  }
  r.conclusion = true;
  const auto p = fm.p_functor();
  for (ArrowId h = 0; h < D.arrow_count(); ++h) {
    if (is_cartesian(p, fm.p_index(), f.on_arrows[h])) continue;
    r.conclusion = false;
    r.witnesses.push_back(make(ViolationKind::NotFibrationInGroupoids, "image of a reindexing is not p-cartesian",
                               {{"reindexing", D.arrow_name(h)}, {"image", M.arrow_name(f.on_arrows[h])}}));
    break;
  }
  return r;
}

std::vector<FinFunctor> functors_over_base(const FiberedMulticategory& fm, std::size_t limit) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const std::size_t n = D.arrow_count();
  std::vector<std::vector<ArrowId>> cand(n);
  for (ArrowId h = 0; h < n; ++h) {
    if (D.is_identity(h)) {
      cand[h] = {M.identity(D.dom(h))};
      continue;
    }
    for (ArrowId a : M.hom(D.dom(h), D.cod(h)))
      if (fm.p(a) == fm.d(h)) cand[h].push_back(a);
  }
  std::vector<std::vector<std::array<ArrowId, 3>>> constraints(n);
  D.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    constraints[std::max({g, f, gf})].push_back({g, f, gf});
  });

  auto dptr = fm.reindexings_ptr();
  auto mptr = fm.families_ptr();
  std::vector<ObjectId> objects(D.object_count());
  for (ObjectId x = 0; x < objects.size(); ++x) objects[x] = x;
  std::vector<FinFunctor> out;
  std::vector<ArrowId> image(n, kNoArrow);
  std::function<void(ArrowId)> search = [&](ArrowId h) {
    if (out.size() >= limit) return;
    if (h == n) {
      out.push_back(FinFunctor{dptr, mptr, objects, image});
      return;
    }
    for (ArrowId a : cand[h]) {
      image[h] = a;
      bool ok = true;
      for (const auto& [g, f, gf] : constraints[h]) {
        if (M.compose(image[g], image[f]) != image[gf]) {
          ok = false;
          break;
        }
      }
      if (ok) search(h + 1);
      if (out.size() >= limit) return;
    }
    image[h] = kNoArrow;
  };
  search(0);
  return out;
}

std::vector<ArrowId> push_section(const FinFunctor& f, const std::vector<ArrowId>& d_section) {
  std::vector<ArrowId> out;
  for (ArrowId h : d_section) out.push_back(f.on_arrows.at(h));
  return out;
}

Violations verify_pseudofunctor(const Pseudofunctor& pf) {
  Violations out;
  const auto& B = *pf.base;
  if (pf.fibers.size() != B.object_count() || pf.reindex.size() != B.arrow_count() ||
      pf.identity.size() != B.object_count()) {
    throw Error(ErrorCode::ShapeMismatch, "pseudofunctor tables do not match the base");
  }
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    for (auto v : validate_category(*pf.fibers[i])) out.push_back(std::move(v));
  }
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const auto& r = pf.reindex[f];
    if (r.dom != pf.fibers[B.cod(f)] || r.cod != pf.fibers[B.dom(f)]) {
      throw Error(ErrorCode::ShapeMismatch, "reindexing along " + B.arrow_name(f) + " has the wrong fibers");
    }
    for (auto v : validate_functor(r)) out.push_back(std::move(v));
  }
  if (!out.empty()) return out;

  auto iso_check = [&](const FinCategory& c, ArrowId a, ObjectId dom, ObjectId cod, const std::string& what) {
    if (c.dom(a) != dom || c.cod(a) != cod) {
      out.push_back(make(ViolationKind::DomCodViolation, what + " has the wrong ends", {{"component", c.arrow_name(a)}}));
      return false;
    }
    if (!c.inverse(a)) {
      out.push_back(make(ViolationKind::FunctorViolation, what + " is not invertible", {{"component", c.arrow_name(a)}}));
      return false;
    }
    return true;
  };

  for (ObjectId i = 0; i < B.object_count(); ++i) {
    const auto& F = *pf.fibers[i];
    const auto& r = pf.reindex[B.identity(i)];
    const auto& psi = pf.identity[i];
    for (ObjectId x = 0; x < F.object_count(); ++x) iso_check(F, psi[x], x, r.on_objects[x], "unit comparison");
    for (ArrowId a = 0; a < F.arrow_count(); ++a) {
      if (F.compose(psi[F.cod(a)], a) != F.compose(r.on_arrows[a], psi[F.dom(a)])) {
        out.push_back(make(ViolationKind::FunctorViolation, "unit comparison is not natural",
                           {{"fiber", B.object_name(i)}, {"arrow", F.arrow_name(a)}}));
      }
    }
  }
  for (const auto& [gf_pair, comps] : pf.composition) {
    const auto [g, f] = gf_pair;
    const auto& Fk = *pf.fibers[B.cod(g)];
    const auto& Fi = *pf.fibers[B.dom(f)];
    const auto& rg = pf.reindex[g];
    const auto& rf = pf.reindex[f];
    const auto& rgf = pf.reindex[B.comp(g, f)];
    for (ObjectId y = 0; y < Fk.object_count(); ++y) {
      iso_check(Fi, comps[y], rf.on_objects[rg.on_objects[y]], rgf.on_objects[y], "composition comparison");
    }
    for (ArrowId a = 0; a < Fk.arrow_count(); ++a) {
      const auto lhs = Fi.compose(comps[Fk.cod(a)], rf.on_arrows[rg.on_arrows[a]]);
      const auto rhs = Fi.compose(rgf.on_arrows[a], comps[Fk.dom(a)]);
      if (lhs != rhs) {
        out.push_back(make(ViolationKind::FunctorViolation, "composition comparison is not natural",
                           {{"g", B.arrow_name(g)}, {"f", B.arrow_name(f)}, {"arrow", Fk.arrow_name(a)}}));
      }
    }
  }
  if (!out.empty()) return out;

  // Coherence: associativity and the two unit laws.
  for (ArrowId g = 0; g < B.arrow_count(); ++g) {
    for (ArrowId f : B.in_arrows(B.dom(g))) {
      const ArrowId gf = B.comp(g, f);
      const auto& Fi = *pf.fibers[B.dom(f)];
      const auto& Fk = *pf.fibers[B.cod(g)];
      const auto& phi_gf = pf.composition.at({g, f});
      for (ArrowId h : B.in_arrows(B.dom(f))) {
        const auto& Fh = *pf.fibers[B.dom(h)];
        const auto& rh = pf.reindex[h];
        const auto& phi_gf_h = pf.composition.at({gf, h});
        const auto& phi_g_fh = pf.composition.at({g, B.comp(f, h)});
        const auto& phi_f_h = pf.composition.at({f, h});
        for (ObjectId y = 0; y < Fk.object_count(); ++y) {
          const auto lhs = Fh.compose(phi_gf_h[y], rh.on_arrows[phi_gf[y]]);
          const auto rhs = Fh.compose(phi_g_fh[y], phi_f_h[pf.reindex[g].on_objects[y]]);
          if (lhs != rhs) {
            out.push_back(make(ViolationKind::AssociativityViolation, "composition comparisons are not coherent",
                               {{"g", B.arrow_name(g)}, {"f", B.arrow_name(f)}, {"h", B.arrow_name(h)},
                                {"object", Fk.object_name(y)}}));
          }
        }
      }
      (void)Fi;
    }
  }
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const ObjectId i = B.dom(f), j = B.cod(f);
    const auto& Fi = *pf.fibers[i];
    const auto& Fj = *pf.fibers[j];
    const auto& rf = pf.reindex[f];
    const auto& right_unit = pf.composition.at({f, B.identity(i)});
    const auto& left_unit = pf.composition.at({B.identity(j), f});
    for (ObjectId x = 0; x < Fj.object_count(); ++x) {
      const ObjectId fx = rf.on_objects[x];
      if (Fi.compose(right_unit[x], pf.identity[i][fx]) != Fi.identity(fx) ||
          Fi.compose(left_unit[x], rf.on_arrows[pf.identity[j][x]]) != Fi.identity(fx)) {
        out.push_back(make(ViolationKind::IdentityViolation, "unit comparisons are not coherent",
                           {{"f", B.arrow_name(f)}, {"object", Fj.object_name(x)}}));
      }
    }
  }
  return out;
}

namespace {

// Cleavage and fiber bookkeeping for a unary fibered multicategory.
struct Unary {
  const FiberedMulticategory& fm;
  const FinCategory& B;
  const FinCategory& D;
  const FinCategory& M;
  std::vector<ObjectId> local_object;          // global object → id in its fiber
  std::vector<std::vector<ObjectId>> globals;  // fiber → local id → global object
  std::vector<ArrowId> local_arrow;            // vertical M-arrow → id in its fiber
  std::vector<std::vector<ArrowId>> global_arrows;

  explicit Unary(const FiberedMulticategory& f)
      : fm(f), B(f.base().category()), D(f.reindexings()), M(f.families()) {
    for (ArrowId a = 0; a < M.arrow_count(); ++a) {
      if (!B.inverse(fm.p(a))) {
        throw Error(ErrorCode::NotUnary, "arrow " + M.arrow_name(a) + " lies over a non-invertible map");
      }
    }
    local_object.resize(fm.object_count());
    globals.resize(B.object_count());
    for (ObjectId x = 0; x < fm.object_count(); ++x) {
      auto& g = globals[fm.shape(x)];
      local_object[x] = static_cast<ObjectId>(g.size());
      g.push_back(x);
    }
    local_arrow.assign(M.arrow_count(), kNoArrow);
    global_arrows.resize(B.object_count());
    for (ArrowId a = 0; a < M.arrow_count(); ++a) {
      if (!B.is_identity(fm.p(a))) continue;
      auto& g = global_arrows[fm.shape(M.dom(a))];
      local_arrow[a] = static_cast<ArrowId>(g.size());
      g.push_back(a);
    }
  }

  ArrowId lift(ArrowId f, ObjectId x) const {
    if (B.is_identity(f)) return D.identity(x);
    auto lifts = fm.d_index().lifts_into(f, x);
    if (lifts.empty()) throw Error(ErrorCode::InvalidInput, "no d-lift of " + B.arrow_name(f) + " into " + M.object_name(x));
    return lifts.front();
  }

  // The vertical D-arrow v with k2∘v = k1.
  ArrowId comparison(ArrowId k1, ArrowId k2) const {
    const ObjectId i = fm.shape(D.dom(k1));
    for (ArrowId v : D.hom(D.dom(k1), D.dom(k2))) {
      if (fm.d(v) == B.identity(i) && D.compose(k2, v) == k1) return v;
    }
    throw Error(ErrorCode::InvalidInput, "d-lifts " + D.arrow_name(k1) + " and " + D.arrow_name(k2) + " are not comparable");
  }

  // Vertical D-arrow read as an M-arrow through the identity square.
  ArrowId vertical_image(ArrowId v) const {
    const ObjectId x = D.cod(v);
    const ArrowId id = B.identity(fm.shape(x));
    return special_lift(fm, M.identity(x), BaseSquare{id, id, id, id}, v, D.identity(x));
  }
};

}  // namespace

Pseudofunctor pseudofunctor_of(const FiberedMulticategory& fm) {
  Unary u(fm);
  const auto& B = u.B;
  const auto& M = u.M;
  Pseudofunctor pf;
  pf.base = fm.base().category_ptr();
  std::vector<std::shared_ptr<FinCategory>> fibers;
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    auto c = std::make_shared<FinCategory>();
    for (ObjectId x : u.globals[i]) c->add_object(M.object_name(x));
    for (ArrowId a : u.global_arrows[i]) c->add_arrow(M.arrow_name(a), u.local_object[M.dom(a)], u.local_object[M.cod(a)]);
    for (ObjectId x : u.globals[i]) c->set_identity(u.local_object[x], u.local_arrow[M.identity(x)]);
    fibers.push_back(c);
  }
  M.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    if (u.local_arrow[g] == kNoArrow || u.local_arrow[f] == kNoArrow) return;
    fibers[fm.shape(M.dom(f))]->set_compose(u.local_arrow[g], u.local_arrow[f], u.local_arrow[gf]);
  });
  pf.fibers.assign(fibers.begin(), fibers.end());

  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const ObjectId i = B.dom(f), j = B.cod(f);
    FinFunctor r{pf.fibers[j], pf.fibers[i], {}, {}};
    for (ObjectId x : u.globals[j]) r.on_objects.push_back(u.local_object[u.D.dom(u.lift(f, x))]);
    const BaseSquare sq{f, B.identity(i), f, B.identity(j)};
    for (ArrowId a : u.global_arrows[j]) {
      const ArrowId b = special_lift(fm, a, sq, u.lift(f, M.dom(a)), u.lift(f, M.cod(a)));
      r.on_arrows.push_back(u.local_arrow[b]);
    }
    pf.reindex.push_back(std::move(r));
  }

  for (ArrowId g = 0; g < B.arrow_count(); ++g) {
    for (ArrowId f : B.in_arrows(B.dom(g))) {
      const ArrowId gf = B.comp(g, f);
      std::vector<ArrowId> comps;
      for (ObjectId y : u.globals[B.cod(g)]) {
        const ArrowId lg = u.lift(g, y);
        const ArrowId k1 = u.D.comp(lg, u.lift(f, u.D.dom(lg)));
        comps.push_back(u.local_arrow[u.vertical_image(u.comparison(k1, u.lift(gf, y)))]);
      }
      pf.composition[{g, f}] = std::move(comps);
    }
  }
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    std::vector<ArrowId> comps;
    for (ObjectId x : u.globals[i]) {
      comps.push_back(u.local_arrow[u.vertical_image(u.comparison(u.D.identity(x), u.lift(B.identity(i), x)))]);
    }
    pf.identity.push_back(std::move(comps));
  }
  return pf;
}

FinFunctor grothendieck(const Pseudofunctor& pf) {
  const auto& B = *pf.base;
  auto G = std::make_shared<FinCategory>();
  std::vector<ObjectId> shape;
  std::vector<std::vector<ObjectId>> object_of(B.object_count());
  std::unordered_map<std::string, int> seen;
  for (ObjectId i = 0; i < B.object_count(); ++i)
    for (ObjectId x = 0; x < pf.fibers[i]->object_count(); ++x) ++seen[pf.fibers[i]->object_name(x)];
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    const auto& F = *pf.fibers[i];
    for (ObjectId x = 0; x < F.object_count(); ++x) {
      std::string name = F.object_name(x);
      if (seen[name] > 1) name += "@" + B.object_name(i);
      object_of[i].push_back(G->add_object(name));
      shape.push_back(i);
    }
  }

  struct Arrow {
    ArrowId f;
    ArrowId t;
    ObjectId x;  // local codomain in the fiber over cod f
  };
  std::vector<Arrow> arrows;
  std::vector<ArrowId> proj;
  std::map<std::tuple<ArrowId, ArrowId, ObjectId>, ArrowId> index;
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const ObjectId i = B.dom(f), j = B.cod(f);
    const auto& Fi = *pf.fibers[i];
    const auto& Fj = *pf.fibers[j];
    for (ObjectId x = 0; x < Fj.object_count(); ++x) {
      for (ArrowId t : Fi.in_arrows(pf.reindex[f].on_objects[x])) {
        const ArrowId a = G->add_arrow("(" + B.arrow_name(f) + "," + Fi.arrow_name(t) + "|" + Fj.object_name(x) + ")",
                                       object_of[i][Fi.dom(t)], object_of[j][x]);
        index[{f, t, x}] = a;
        arrows.push_back(Arrow{f, t, x});
        proj.push_back(f);
      }
    }
  }
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    for (ObjectId x = 0; x < pf.fibers[i]->object_count(); ++x) {
      G->set_identity(object_of[i][x], index.at({B.identity(i), pf.identity[i][x], x}));
    }
  }
  // (g, s) ∘ (f, t) = (gf, φ_{g,f} ∘ f*(s) ∘ t)
  for (ArrowId b = 0; b < G->arrow_count(); ++b) {
    const auto& [g, s, y] = arrows[b];
    for (ArrowId a : G->in_arrows(G->dom(b))) {
      const auto& [f, t, x] = arrows[a];
      const auto& Fi = *pf.fibers[B.dom(f)];
      const ArrowId fs = pf.reindex[f].on_arrows[s];
      const ArrowId phi = pf.composition.at({g, f})[y];
      G->set_compose(b, a, index.at({B.comp(g, f), Fi.comp(phi, Fi.comp(fs, t)), y}));
    }
  }
  return FinFunctor{G, pf.base, shape, proj};
}

std::shared_ptr<const FiberedMulticategory> unary_part(const FiberedMulticategory& fm) {
  const auto& B = fm.base().category();
  const auto& M = fm.families();
  auto U = std::make_shared<FinCategory>();
  for (ObjectId x = 0; x < M.object_count(); ++x) U->add_object(M.object_name(x));
  std::vector<ArrowId> remap(M.arrow_count(), kNoArrow), p, shapes;
  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    if (!B.inverse(fm.p(a))) continue;
    remap[a] = U->add_arrow(M.arrow_name(a), M.dom(a), M.cod(a));
    p.push_back(fm.p(a));
  }
  for (ObjectId x = 0; x < M.object_count(); ++x) U->set_identity(x, remap[M.identity(x)]);
  M.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    if (remap[g] != kNoArrow && remap[f] != kNoArrow) U->set_compose(remap[g], remap[f], remap[gf]);
  });
  std::vector<SpecialSquare> squares;
  for (const auto& sq : fm.special_squares()) {
    if (remap[sq.right] != kNoArrow && remap[sq.left] != kNoArrow) {
      squares.push_back(SpecialSquare{sq.top, sq.bottom, remap[sq.right], remap[sq.left]});
    }
  }
  std::vector<ArrowId> dshape(fm.reindexings().arrow_count());
  for (ArrowId h = 0; h < dshape.size(); ++h) dshape[h] = fm.d(h);
  for (ObjectId x = 0; x < fm.object_count(); ++x) shapes.push_back(fm.shape(x));
  return std::make_shared<FiberedMulticategory>(fm.base_ptr(), fm.reindexings_ptr(), U, shapes, dshape, p,
                                                std::move(squares));
}

FinFunctor grothendieck_unary(const FiberedMulticategory& fm) { return grothendieck(pseudofunctor_of(fm)); }

RoundTripReport roundtrip_unary(const FiberedMulticategory& fm) {
  Unary u(fm);
  const auto& B = u.B;
  const auto& D = u.D;
  const auto& M = u.M;
  const auto pf = pseudofunctor_of(fm);
  const auto G = grothendieck(pf);
  const auto& E = *G.dom;
  RoundTripReport r;
  r.is_fibration = classify_fibration(G).is_fibration;
  if (!r.is_fibration) return r;
  const auto back = from_fibration(fm.base_ptr(), G);

  auto find = [&](const std::string& name) -> ArrowId {
    auto a = E.find_arrow(name);
    return a ? *a : kNoArrow;
  };
  auto g_name = [&](ArrowId f, ArrowId t_global, ObjectId x_global) {
    const auto& Fi = *pf.fibers[B.dom(f)];
    const auto& Fj = *pf.fibers[B.cod(f)];
    return "(" + B.arrow_name(f) + "," + Fi.arrow_name(u.local_arrow[t_global]) + "|" +
           Fj.object_name(u.local_object[x_global]) + ")";
  };

  // Vertical arrows and their composites.
  std::vector<ArrowId> vmap(M.arrow_count(), kNoArrow);
  r.vertical_arrows = true;
  std::size_t vertical = 0;
  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    if (u.local_arrow[a] == kNoArrow) continue;
    ++vertical;
    vmap[a] = find(g_name(fm.p(a), a, M.cod(a)));
    if (vmap[a] == kNoArrow) {
      r.vertical_arrows = false;
      r.witnesses.push_back(make(ViolationKind::DomCodViolation, "vertical arrow missing from the total category",
                                 {{"arrow", M.arrow_name(a)}}));
    }
  }
  std::size_t total_vertical = 0;
  for (ArrowId a = 0; a < E.arrow_count(); ++a) total_vertical += B.is_identity(G.on_arrows[a]);
  if (total_vertical != vertical) r.vertical_arrows = false;
  if (r.vertical_arrows) {
    M.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
      if (vmap[g] == kNoArrow || vmap[f] == kNoArrow) return;
      if (E.compose(vmap[g], vmap[f]) != vmap[gf]) {
        r.vertical_arrows = false;
        r.witnesses.push_back(make(ViolationKind::AssociativityViolation, "vertical composite changed",
                                   {{"g", M.arrow_name(g)}, {"f", M.arrow_name(f)}}));
      }
    });
  }

  // D-arrows become cartesian arrows of the total category.
  std::vector<ArrowId> back_d(E.arrow_count(), kNoArrow);
  for (ArrowId h = 0; h < back.inclusion.on_arrows.size(); ++h) back_d[back.inclusion.on_arrows[h]] = h;
  std::vector<ArrowId> dmap(D.arrow_count(), kNoArrow);
  r.reindexings = true;
  for (ArrowId h = 0; h < D.arrow_count(); ++h) {
    const ArrowId f = fm.d(h);
    const ObjectId x = D.cod(h);
    const ArrowId t = u.vertical_image(u.comparison(h, u.lift(f, x)));
    const ArrowId e = find(g_name(f, t, x));
    if (e == kNoArrow || back_d[e] == kNoArrow) {
      r.reindexings = false;
      r.witnesses.push_back(make(ViolationKind::NotFibrationInGroupoids, "reindexing is not cartesian after the round trip",
                                 {{"reindexing", D.arrow_name(h)}}));
      continue;
    }
    dmap[h] = back_d[e];
  }

  // Special squares with vertical sides, in both directions.
  r.vertical_squares = r.vertical_arrows && r.reindexings;
  if (r.vertical_squares) {
    std::size_t ours = 0;
    for (const auto& sq : fm.special_squares()) {
      if (vmap[sq.right] == kNoArrow || vmap[sq.left] == kNoArrow) continue;
      ++ours;
      if (!back.fm->is_special(SpecialSquare{dmap[sq.top], dmap[sq.bottom], vmap[sq.right], vmap[sq.left]})) {
        r.vertical_squares = false;
        r.witnesses.push_back(make(ViolationKind::ExistenceViolation, "special square lost in the round trip",
                                   {{"top", D.arrow_name(sq.top)}, {"right", M.arrow_name(sq.right)}}));
      }
    }
    std::vector<bool> in_image(back.fm->reindexings().arrow_count(), false);
    for (ArrowId h : dmap) in_image[h] = true;
    std::size_t theirs = 0;
    for (const auto& sq : back.fm->special_squares()) {
      theirs += in_image[sq.top] && in_image[sq.bottom] && B.is_identity(G.on_arrows[sq.right]) &&
                B.is_identity(G.on_arrows[sq.left]);
    }
    if (theirs != ours) r.vertical_squares = false;
  }
  return r;
}

}  // namespace fibmult
