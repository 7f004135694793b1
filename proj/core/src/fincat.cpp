#include "fibmult/fincat.hpp"

#include <algorithm>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

const std::vector<ArrowId> kEmpty;

Violation make(ViolationKind kind, std::string detail, std::vector<std::pair<std::string, std::string>> witness = {}) {
  return Violation{kind, std::move(detail), std::move(witness)};
}

}  // namespace

ObjectId FinCategory::add_object(std::string name) {
  const auto id = static_cast<ObjectId>(objects_.size());
  if (!object_index_.emplace(name, id).second) {
    throw Error(ErrorCode::InvalidInput, "duplicate object '" + name + "'");
  }
  objects_.push_back(std::move(name));
  identities_.push_back(kNoArrow);
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

ArrowId FinCategory::add_arrow(std::string name, ObjectId dom, ObjectId cod) {
  if (dom >= objects_.size() || cod >= objects_.size()) {
    throw Error(ErrorCode::InvalidInput, "arrow '" + name + "' has undeclared endpoints");
  }
  const auto id = static_cast<ArrowId>(arrows_.size());
  if (!arrow_index_.emplace(name, id).second) {
    throw Error(ErrorCode::InvalidInput, "duplicate arrow '" + name + "'");
  }
  arrows_.push_back(ArrowRecord{std::move(name), dom, cod});
  out_[dom].push_back(id);
  in_[cod].push_back(id);
  hom_[pair_key(dom, cod)].push_back(id);
  return id;
}

void FinCategory::set_identity(ObjectId x, ArrowId id) { identities_.at(x) = id; }

void FinCategory::set_compose(ArrowId g, ArrowId f, ArrowId gf) { compose_[key(g, f)] = gf; }

void FinCategory::erase_compose(ArrowId g, ArrowId f) { compose_.erase(key(g, f)); }

std::optional<ArrowId> FinCategory::compose(ArrowId g, ArrowId f) const {
  auto it = compose_.find(key(g, f));
  if (it == compose_.end()) return std::nullopt;
  return it->second;
}

ArrowId FinCategory::comp(ArrowId g, ArrowId f) const {
  auto it = compose_.find(key(g, f));
  if (it == compose_.end()) {
    throw Error(ErrorCode::InvalidInput, "no composite " + arrows_[g].name + " o " + arrows_[f].name);
  }
  return it->second;
}

std::span<const ArrowId> FinCategory::hom(ObjectId x, ObjectId y) const {
  auto it = hom_.find(pair_key(x, y));
  if (it == hom_.end()) return kEmpty;
  return it->second;
}

std::optional<ObjectId> FinCategory::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> FinCategory::find_arrow(std::string_view name) const {
  auto it = arrow_index_.find(std::string(name));
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> FinCategory::inverse(ArrowId a) const {
  const auto& r = arrows_[a];
  for (ArrowId b : hom(r.cod, r.dom)) {
    auto ba = compose(b, a);
    auto ab = compose(a, b);
    if (ba && ab && *ba == identities_[r.dom] && *ab == identities_[r.cod]) return b;
  }
  return std::nullopt;
}

Violations validate_category(const FinCategory& c) {
  Violations out;
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    ArrowId id = c.identity(x);
    if (id == kNoArrow || id >= c.arrow_count() || c.dom(id) != x || c.cod(id) != x) {
      out.push_back(make(ViolationKind::IdentityViolation, "missing or ill-typed identity", {{"object", c.object_name(x)}}));
    }
  }
  if (!out.empty()) return out;

  c.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    if (c.cod(f) != c.dom(g) || c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) {
      out.push_back(make(ViolationKind::DomCodViolation, "composite has wrong endpoints",
                         {{"g", c.arrow_name(g)}, {"f", c.arrow_name(f)}, {"gf", c.arrow_name(gf)}}));
    }
  });
  for (ArrowId f = 0; f < c.arrow_count(); ++f) {
    for (ArrowId g : c.out_arrows(c.cod(f))) {
      if (!c.compose(g, f)) {
        out.push_back(make(ViolationKind::DomCodViolation, "missing composite",
                           {{"g", c.arrow_name(g)}, {"f", c.arrow_name(f)}}));
      }
    }
    if (c.compose(f, c.identity(c.dom(f))) != f || c.compose(c.identity(c.cod(f)), f) != f) {
      out.push_back(make(ViolationKind::IdentityViolation, "unit law fails", {{"f", c.arrow_name(f)}}));
    }
  }
  if (!out.empty()) return out;

  for (ArrowId f = 0; f < c.arrow_count(); ++f) {
    for (ArrowId g : c.out_arrows(c.cod(f))) {
      const ArrowId gf = c.comp(g, f);
      for (ArrowId h : c.out_arrows(c.cod(g))) {
        if (c.comp(h, gf) != c.comp(c.comp(h, g), f)) {
          out.push_back(make(ViolationKind::AssociativityViolation, "(hg)f != h(gf)",
                             {{"h", c.arrow_name(h)}, {"g", c.arrow_name(g)}, {"f", c.arrow_name(f)}}));
        }
      }
    }
  }
  return out;
}

Violations validate_functor(const FinFunctor& F) {
  Violations out;
  const auto& C = *F.dom;
  const auto& B = *F.cod;
  if (F.on_objects.size() != C.object_count() || F.on_arrows.size() != C.arrow_count()) {
    out.push_back(make(ViolationKind::FunctorViolation, "functor tables have the wrong size"));
    return out;
  }
  for (ArrowId a = 0; a < C.arrow_count(); ++a) {
    const ArrowId fa = F.on_arrows[a];
    if (fa >= B.arrow_count() || B.dom(fa) != F.on_objects[C.dom(a)] || B.cod(fa) != F.on_objects[C.cod(a)]) {
      out.push_back(make(ViolationKind::FunctorViolation, "arrow image has wrong endpoints", {{"arrow", C.arrow_name(a)}}));
    }
  }
  if (!out.empty()) return out;
  for (ObjectId x = 0; x < C.object_count(); ++x) {
    if (F.on_arrows[C.identity(x)] != B.identity(F.on_objects[x])) {
      out.push_back(make(ViolationKind::FunctorViolation, "identity not preserved", {{"object", C.object_name(x)}}));
    }
  }
  C.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    auto img = B.compose(F.on_arrows[g], F.on_arrows[f]);
    if (!img || *img != F.on_arrows[gf]) {
      out.push_back(make(ViolationKind::FunctorViolation, "composition not preserved",
                         {{"g", C.arrow_name(g)}, {"f", C.arrow_name(f)}}));
    }
  });
  return out;
}

LiftIndex::LiftIndex(const FinFunctor& f) {
  const auto& C = *f.dom;
  over_.resize(f.cod->arrow_count());
  objects_over_.resize(f.cod->object_count());
  for (ObjectId x = 0; x < C.object_count(); ++x) objects_over_[f.on_objects[x]].push_back(x);
  for (ArrowId a = 0; a < C.arrow_count(); ++a) {
    const ArrowId b = f.on_arrows[a];
    over_[b].push_back(a);
    into_[key(b, C.cod(a))].push_back(a);
    from_[key(b, C.dom(a))].push_back(a);
  }
}

std::span<const ArrowId> LiftIndex::lifts_into(ArrowId base, ObjectId y) const {
  auto it = into_.find(key(base, y));
  return it == into_.end() ? std::span<const ArrowId>(kEmpty) : std::span<const ArrowId>(it->second);
}

std::span<const ArrowId> LiftIndex::lifts_from(ArrowId base, ObjectId x) const {
  auto it = from_.find(key(base, x));
  return it == from_.end() ? std::span<const ArrowId>(kEmpty) : std::span<const ArrowId>(it->second);
}

std::span<const ArrowId> LiftIndex::over(ArrowId base) const { return over_[base]; }

std::span<const ObjectId> LiftIndex::objects_over(ObjectId base) const { return objects_over_[base]; }

bool is_cartesian(const FinFunctor& F, const LiftIndex& index, ArrowId h) {
  const auto& C = *F.dom;
  const auto& B = *F.cod;
  const ObjectId src = C.dom(h);
  const ArrowId phi = F.on_arrows[h];
  for (ArrowId g : C.in_arrows(C.cod(h))) {
    const ObjectId z = C.dom(g);
    for (ArrowId psi : B.hom(F.on_objects[z], F.on_objects[src])) {
      if (B.compose(phi, psi) != F.on_arrows[g]) continue;
      std::size_t count = 0;
      for (ArrowId k : index.lifts_from(psi, z)) {
        if (C.cod(k) == src && C.compose(h, k) == g) ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_opcartesian(const FinFunctor& F, const LiftIndex& index, ArrowId h) {
  const auto& C = *F.dom;
  const auto& B = *F.cod;
  const ObjectId tgt = C.cod(h);
  const ArrowId phi = F.on_arrows[h];
  for (ArrowId g : C.out_arrows(C.dom(h))) {
    const ObjectId z = C.cod(g);
    for (ArrowId psi : B.hom(F.on_objects[tgt], F.on_objects[z])) {
      if (B.compose(psi, phi) != F.on_arrows[g]) continue;
      std::size_t count = 0;
      for (ArrowId k : index.lifts_into(psi, z)) {
        if (C.dom(k) == tgt && C.compose(k, h) == g) ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

FibrationReport classify_fibration(const FinFunctor& F) {
  if (!validate_functor(F).empty()) throw Error(ErrorCode::InvalidInput, "functor laws fail");
  const auto& C = *F.dom;
  const auto& B = *F.cod;
  LiftIndex index(F);
  FibrationReport r;

  r.is_groupoid = true;
  for (ArrowId a = 0; a < C.arrow_count() && r.is_groupoid; ++a) r.is_groupoid = C.inverse(a).has_value();

  std::vector<bool> cartesian(C.arrow_count());
  bool all_cartesian = true;
  for (ArrowId a = 0; a < C.arrow_count(); ++a) {
    cartesian[a] = is_cartesian(F, index, a);
    if (!cartesian[a]) {
      all_cartesian = false;
      r.witnesses.push_back(make(ViolationKind::NotFibrationInGroupoids, "arrow is not cartesian",
                                 {{"arrow", C.arrow_name(a)}}));
    }
  }

  bool has_lifts = true, discrete = true, opdiscrete = true;
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    for (ObjectId y : index.objects_over(B.cod(f))) {
      auto lifts = index.lifts_into(f, y);
      const bool any_cart = std::any_of(lifts.begin(), lifts.end(), [&](ArrowId h) { return cartesian[h]; });
      if (!any_cart) {
        has_lifts = false;
        r.witnesses.push_back(make(ViolationKind::NotFibrationInGroupoids, "no cartesian lift",
                                   {{"base", B.arrow_name(f)}, {"object", C.object_name(y)}}));
      }
      if (lifts.size() != 1) {
        discrete = false;
        r.witnesses.push_back(make(ViolationKind::NotDiscreteFibration,
                                   std::to_string(lifts.size()) + " lifts with fixed codomain",
                                   {{"base", B.arrow_name(f)}, {"object", C.object_name(y)}}));
      }
    }
    for (ObjectId x : index.objects_over(B.dom(f))) {
      auto lifts = index.lifts_from(f, x);
      if (lifts.size() != 1) {
        opdiscrete = false;
        r.witnesses.push_back(make(ViolationKind::NotDiscreteOpfibration,
                                   std::to_string(lifts.size()) + " lifts with fixed domain",
                                   {{"base", B.arrow_name(f)}, {"object", C.object_name(x)}}));
      }
    }
  }
  r.is_fibration = has_lifts;
  r.is_fibration_in_groupoids = has_lifts && all_cartesian;
  r.is_discrete_fibration = discrete;
  r.is_discrete_opfibration = opdiscrete;
  // Witnesses are only kept for the flags that failed.
  std::erase_if(r.witnesses, [&](const Violation& v) {
    if (v.kind == ViolationKind::NotFibrationInGroupoids) return r.is_fibration_in_groupoids;
    if (v.kind == ViolationKind::NotDiscreteFibration) return r.is_discrete_fibration;
    return r.is_discrete_opfibration;
  });
  return r;
}

std::vector<ArrowId> cartesian_lift(const FinFunctor& F, ArrowId base, ObjectId y) {
  if (!classify_fibration(F).is_fibration_in_groupoids) {
    throw Error(ErrorCode::NotAFibration, "functor is not a fibration in groupoids");
  }
  LiftIndex index(F);
  auto lifts = index.lifts_into(base, y);
  return {lifts.begin(), lifts.end()};
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (f.cod.get() != g.dom.get()) throw Error(ErrorCode::InvalidInput, "functors are not composable");
  FinFunctor out{f.dom, g.cod, {}, {}};
  for (auto x : f.on_objects) out.on_objects.push_back(g.on_objects[x]);
  for (auto a : f.on_arrows) out.on_arrows.push_back(g.on_arrows[a]);
  return out;
}

FinFunctor identity_functor(std::shared_ptr<const FinCategory> c) {
  FinFunctor out{c, c, {}, {}};
  for (ObjectId x = 0; x < c->object_count(); ++x) out.on_objects.push_back(x);
  for (ArrowId a = 0; a < c->arrow_count(); ++a) out.on_arrows.push_back(a);
  return out;
}

}  // namespace fibmult
