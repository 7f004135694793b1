#include "fibmult/monoid.hpp"

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

using Witness = std::vector<std::pair<std::string, std::string>>;

Violation make(ViolationKind kind, std::string detail, Witness witness = {}) {
  return Violation{kind, std::move(detail), std::move(witness)};
}

bool parallel(const FiberedMulticategory& fm, const Endomorphism& e) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  return D.dom(e.t) == M.dom(e.a) && D.cod(e.t) == M.cod(e.a) && fm.d(e.t) == fm.p(e.a);
}

BaseSquare transpose(const BaseSquare& sq) { return BaseSquare{sq.left, sq.top, sq.right, sq.bottom}; }

// First pair of d-lifts (u into x over top, v into x2 over left) with a
// common domain.
std::optional<std::pair<ArrowId, ArrowId>> first_completion(const FiberedMulticategory& fm, const BaseSquare& sq,
                                                            ObjectId x, ObjectId x2) {
  const auto& D = fm.reindexings();
  for (ArrowId u : fm.d_index().lifts_into(sq.top, x)) {
    for (ArrowId v : fm.d_index().lifts_into(sq.left, x2)) {
      if (D.dom(u) == D.dom(v)) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

}  // namespace

bool commute_endomorphisms(const FiberedMulticategory& fm, const Endomorphism& e1, const Endomorphism& e2,
                           const BaseSquare& square, ArrowId u, ArrowId v) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  if (!parallel(fm, e1) || !parallel(fm, e2)) throw Error(ErrorCode::ShapeMismatch, "not an endomorphism");
  if (M.cod(e1.a) != M.cod(e2.a)) throw Error(ErrorCode::ShapeMismatch, "endomorphisms have different codomains");
  if (square.right != fm.p(e1.a) || square.bottom != fm.p(e2.a)) {
    throw Error(ErrorCode::ShapeMismatch, "square does not complete the endomorphisms");
  }
  if (fm.d(u) != square.top || fm.d(v) != square.left || D.dom(u) != D.dom(v) || D.cod(u) != M.dom(e1.a) ||
      D.cod(v) != M.dom(e2.a)) {
    throw Error(ErrorCode::ShapeMismatch, "lifted completion does not lie over the square");
  }
  const ArrowId b = special_lift(fm, e1.a, square, u, e2.t);
  const ArrowId b2 = special_lift(fm, e2.a, transpose(square), v, e1.t);
  return M.compose(e1.a, b2) == M.compose(e2.a, b);
}

std::vector<bool> commutation_choices(const FiberedMulticategory& fm, const Endomorphism& e1,
                                      const Endomorphism& e2) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  std::vector<bool> out;
  for (std::size_t i : fm.base().pullbacks_over(fm.p(e2.a), fm.p(e1.a))) {
    const auto& sq = fm.base().pullbacks()[i];
    for (ArrowId u : fm.d_index().lifts_into(sq.top, M.dom(e1.a))) {
      for (ArrowId v : fm.d_index().lifts_into(sq.left, M.dom(e2.a))) {
        if (D.dom(u) != D.dom(v)) continue;
        out.push_back(commute_endomorphisms(fm, e1, e2, sq, u, v));
      }
    }
  }
  return out;
}

Violations verify_monoid(const FiberedMulticategory& fm, const MonoidInM& m) {
  Violations out;
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto& B = fm.base().category();
  if (m.objects.size() != B.object_count() || m.d_section.size() != B.arrow_count() ||
      m.p_section.size() != B.arrow_count()) {
    out.push_back(make(ViolationKind::SectionViolation, "section tables have the wrong size"));
    return out;
  }
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    if (m.objects[i] >= fm.object_count() || fm.shape(m.objects[i]) != i) {
      out.push_back(make(ViolationKind::SectionViolation, "object does not lie over its base object",
                         {{"base_object", B.object_name(i)}}));
    }
  }
  if (!out.empty()) return out;
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const ArrowId t = m.d_section[f];
    const ArrowId a = m.p_section[f];
    const ObjectId x = m.objects[B.dom(f)];
    const ObjectId y = m.objects[B.cod(f)];
    if (t >= D.arrow_count() || fm.d(t) != f || D.dom(t) != x || D.cod(t) != y) {
      out.push_back(make(ViolationKind::SectionViolation, "d-section misplaced", {{"base_arrow", B.arrow_name(f)}}));
    }
    if (a >= M.arrow_count() || fm.p(a) != f || M.dom(a) != x || M.cod(a) != y) {
      out.push_back(make(ViolationKind::SectionViolation, "p-section misplaced", {{"base_arrow", B.arrow_name(f)}}));
    }
  }
  if (!out.empty()) return out;
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    const ArrowId id = B.identity(i);
    if (m.d_section[id] != D.identity(m.objects[i]) || m.p_section[id] != M.identity(m.objects[i])) {
      out.push_back(make(ViolationKind::SectionViolation, "identity not preserved", {{"base_object", B.object_name(i)}}));
    }
  }
  B.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    if (D.compose(m.d_section[g], m.d_section[f]) != m.d_section[gf] ||
        M.compose(m.p_section[g], m.p_section[f]) != m.p_section[gf]) {
      out.push_back(make(ViolationKind::SectionViolation, "composition not preserved",
                         {{"g", B.arrow_name(g)}, {"f", B.arrow_name(f)}}));
    }
  });
  for (const auto& sq : fm.base().pullbacks()) {
    const SpecialSquare s{m.d_section[sq.top], m.d_section[sq.bottom], m.p_section[sq.right], m.p_section[sq.left]};
    if (!fm.is_special(s)) {
      out.push_back(make(ViolationKind::PullbackNotSpecial, "pullback not lifted to a special square",
                         {{"base_top", B.arrow_name(sq.top)},
                          {"base_left", B.arrow_name(sq.left)},
                          {"base_bottom", B.arrow_name(sq.bottom)},
                          {"base_right", B.arrow_name(sq.right)}}));
    }
  }
  return out;
}

Violations verify_fibered_monoid(const FiberedMulticategory& fm) {
  Violations out;
  const auto& M = fm.families();
  const auto& D = fm.reindexings();
  const auto& B = fm.base().category();
  auto dr = classify_fibration(fm.d_functor());
  auto pr = classify_fibration(fm.p_functor());
  if (!dr.is_fibration_in_groupoids) {
    out.push_back(make(ViolationKind::NotFibrationInGroupoids, "d is not a fibration in groupoids"));
  }
  if (!pr.is_discrete_opfibration) {
    Witness w;
    for (const auto& v : pr.witnesses) {
      if (v.kind == ViolationKind::NotDiscreteOpfibration) {
        w = v.witness;
        break;
      }
    }
    out.push_back(make(ViolationKind::NotDiscreteOpfibration, "p is not a discrete opfibration", std::move(w)));
  }
  if (!out.empty() || !dr.is_discrete_fibration) return out;

  for (const auto& sq : fm.base().pullbacks()) {
    for (ObjectId x : fm.d_index().objects_over(B.dom(sq.right))) {
      const ArrowId a = fm.p_index().lifts_from(sq.right, x).front();
      const ArrowId h2 = fm.d_index().lifts_into(sq.bottom, M.cod(a)).front();
      const ArrowId h1 = fm.d_index().lifts_into(sq.top, x).front();
      const ArrowId b = fm.p_index().lifts_from(sq.left, D.dom(h1)).front();
      Witness w{{"object", fm.object_name(x)},
                {"base_top", B.arrow_name(sq.top)},
                {"base_left", B.arrow_name(sq.left)},
                {"base_bottom", B.arrow_name(sq.bottom)},
                {"base_right", B.arrow_name(sq.right)}};
      if (D.dom(h2) != M.cod(b)) {
        out.push_back(make(ViolationKind::MonoidSquareCoherence, "lifting paths end at different objects", std::move(w)));
      } else if (!fm.is_special(SpecialSquare{h1, h2, a, b})) {
        out.push_back(make(ViolationKind::MonoidSquareCoherence, "forced square is not special", std::move(w)));
      }
    }
  }
  return out;
}

Violations verify_monoid_morphism(const FiberedMulticategory& fm, const MonoidInM& m, const MonoidInM& m2,
                                  const std::vector<ArrowId>& alpha) {
  Violations out;
  const auto& M = fm.families();
  const auto& B = fm.base().category();
  if (alpha.size() != B.object_count()) {
    out.push_back(make(ViolationKind::MorphismNotSpecial, "one component per base object expected"));
    return out;
  }
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    const ArrowId c = alpha[i];
    if (c >= M.arrow_count() || M.dom(c) != m.objects[i] || M.cod(c) != m2.objects[i] || fm.p(c) != B.identity(i)) {
      out.push_back(make(ViolationKind::MorphismNotSpecial, "component misplaced", {{"base_object", B.object_name(i)}}));
    }
  }
  if (!out.empty()) return out;
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const ArrowId ai = alpha[B.dom(f)];
    const ArrowId aj = alpha[B.cod(f)];
    Witness w{{"base_arrow", B.arrow_name(f)}};
    if (!fm.is_special(SpecialSquare{m.d_section[f], m2.d_section[f], aj, ai})) {
      out.push_back(make(ViolationKind::MorphismNotSpecial, "naturality square is not special", w));
    }
    if (M.compose(aj, m.p_section[f]) != M.compose(m2.p_section[f], ai)) {
      out.push_back(make(ViolationKind::MorphismNotCommutative, "naturality square does not commute", w));
    }
  }
  return out;
}

EckmannHiltonReport eckmann_hilton(const FiberedMulticategory& fm, const MonoidInM& m1, const MonoidInM& m2,
                                   ObjectId i) {
  const auto& base = fm.base();
  const auto& B = base.category();
  const auto& M = fm.families();
  auto one = base.terminal();
  if (!one) throw Error(ErrorCode::MissingProducts, "base has no terminal object");
  const ArrowId bang = B.hom(i, *one).front();
  auto product = base.chosen_pullback(bang, bang);
  if (!product) throw Error(ErrorCode::MissingProducts, B.object_name(i) + " has no square within the bound");
  ArrowId delta = kNoArrow;
  for (ArrowId c : B.hom(i, B.dom(product->top))) {
    if (B.comp(product->top, c) == B.identity(i) && B.comp(product->left, c) == B.identity(i)) delta = c;
  }
  if (delta == kNoArrow) throw Error(ErrorCode::MissingProducts, "no diagonal for " + B.object_name(i));

  auto commute = [&](const Endomorphism& e1, const Endomorphism& e2, const BaseSquare& sq) {
    if (M.cod(e1.a) != M.cod(e2.a)) return false;
    auto uv = first_completion(fm, sq, M.dom(e1.a), M.dom(e2.a));
    return uv && commute_endomorphisms(fm, e1, e2, sq, uv->first, uv->second);
  };

  EckmannHiltonReport r;
  const auto d1 = m1.over(delta);
  const auto d2 = m2.over(delta);
  r.shared_identity = d1.a == d2.a && d1.t == d2.t;
  r.commuting = commute(m1.over(bang), m2.over(bang), *product);
  r.collapse_over_I = m1.p_section[bang] == m2.p_section[bang];
  const BaseSquare diag{B.identity(i), B.identity(i), delta, delta};
  r.delta_commuting = commute(d1, d2, diag);
  r.identities_coincide = d1.a == d2.a;
  return r;
}

}  // namespace fibmult
