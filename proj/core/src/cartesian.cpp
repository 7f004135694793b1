#include "fibmult/cartesian.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

using Witness = std::vector<std::pair<std::string, std::string>>;

Violation make(ViolationKind kind, std::string detail, Witness witness) {
  return Violation{kind, std::move(detail), std::move(witness)};
}

Witness triangle_witness(const FiberedMulticategory& fm, ArrowId top, ArrowId left, ArrowId right) {
  return {{"top", fm.reindexings().arrow_name(top)},
          {"left", fm.families().arrow_name(left)},
          {"right", fm.families().arrow_name(right)}};
}

}  // namespace

CartesianStructure::CartesianStructure(std::shared_ptr<const FiberedMulticategory> host,
                                       std::vector<SpecialTriangle> triangles)
    : host_(std::move(host)), triangles_(std::move(triangles)) {
  const auto& D = host_->reindexings();
  const auto& M = host_->families();
  auto order = [](const SpecialTriangle& a, const SpecialTriangle& b) {
    return std::tie(a.top, a.left, a.right) < std::tie(b.top, b.left, b.right);
  };
  std::sort(triangles_.begin(), triangles_.end(), order);
  triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());
  for (const auto& t : triangles_) {
    if (t.top >= D.arrow_count() || t.left >= M.arrow_count() || t.right >= M.arrow_count()) {
      throw Error(ErrorCode::InvalidInput, "special triangle refers to a missing arrow");
    }
    set_.insert({t.top, t.left, t.right});
    by_top_left_[key(t.top, t.left)].push_back(t.right);
  }
}

std::span<const ArrowId> CartesianStructure::completions(ArrowId top, ArrowId left) const {
  auto it = by_top_left_.find(key(top, left));
  if (it == by_top_left_.end()) return {};
  return it->second;
}

CartesianStructure cartesian_structure(const StandardMulticategory& s) {
  if (!s.presentation().cartesian()) throw Error(ErrorCode::BadParams, "presentation has no covariant reindexing");
  return CartesianStructure(s.fm_ptr(), std::vector<SpecialTriangle>(s.triangles().begin(), s.triangles().end()));
}

CartesianStructure enriched_family_structure(const FibrationMulticategory& family, const SequentialPresentation& pres,
                                             const std::vector<std::vector<ArrowId>>& components) {
  const auto& fm = *family.fm;
  const auto& base = fm.base();
  const auto& B = base.category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto& C = pres.category();
  if (!pres.cartesian()) throw Error(ErrorCode::BadParams, "category is not enriched");
  if (components.size() != M.arrow_count()) throw Error(ErrorCode::ShapeMismatch, "one component list per arrow");

  std::vector<std::vector<ObjectId>> objects(fm.object_count());
  for (ObjectId x = 0; x < fm.object_count(); ++x) {
    for (ArrowId id : components[M.identity(x)]) objects[x].push_back(C.dom(id));
  }
  std::map<std::tuple<ObjectId, ObjectId, ArrowId, std::vector<ArrowId>>, ArrowId> index;
  for (ArrowId a = 0; a < M.arrow_count(); ++a) index[{M.dom(a), M.cod(a), fm.p(a), components[a]}] = a;

  std::vector<SpecialTriangle> triangles;
  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    const ObjectId x = M.dom(a), z = M.cod(a);
    for (ArrowId f : D.out_arrows(x)) {
      const ObjectId y = D.cod(f);
      const FinMap& phi = base.map(fm.d(f));
      const auto& fc = components[family.inclusion.on_arrows[f]];
      for (ArrowId h : B.hom(fm.shape(y), fm.shape(z))) {
        if (B.compose(h, fm.d(f)) != fm.p(a)) continue;
        const FinMap& hm = base.map(h);
        std::vector<ArrowId> comps(phi.cod.size());
        for (std::size_t j = 0; j < comps.size(); ++j) comps[j] = pres.zero(objects[y][j], objects[z][hm(j)]);
        for (std::size_t i = 0; i < phi.dom.size(); ++i) {
          auto inv = C.inverse(fc[i]);
          if (!inv) throw Error(ErrorCode::InvalidInput, "reindexing component is not invertible");
          comps[phi(i)] = pres.add(comps[phi(i)], C.comp(components[a][i], *inv));
        }
        auto it = index.find({y, z, h, comps});
        if (it == index.end()) throw Error(ErrorCode::LawViolation, "summed family is not an arrow");
        triangles.push_back(SpecialTriangle{f, a, it->second});
      }
    }
  }
  return CartesianStructure(family.fm, std::move(triangles));
}

Violations verify_cartesian_structure(const CartesianStructure& cs) {
  const auto& fm = cs.host();
  const auto& B = fm.base().category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  Violations out;

  for (const auto& t : cs.triangles()) {
    const bool ends = D.dom(t.top) == M.dom(t.left) && D.cod(t.top) == M.dom(t.right) && M.cod(t.left) == M.cod(t.right);
    if (!ends || B.compose(fm.p(t.right), fm.d(t.top)) != fm.p(t.left)) {
      out.push_back(make(ViolationKind::TriangleShape, "triangle does not lie over a commuting triangle",
                         triangle_witness(fm, t.top, t.left, t.right)));
    }
  }
  if (!out.empty()) return out;

  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    if (!cs.is_special(SpecialTriangle{D.identity(M.dom(a)), a, a})) {
      out.push_back(make(ViolationKind::TriangleIdentity, "identity triangle is not special",
                         {{"arrow", M.arrow_name(a)}}));
    }
  }

  std::unordered_map<ArrowId, std::vector<std::size_t>> by_left;
  const auto triangles = cs.triangles();
  for (std::size_t k = 0; k < triangles.size(); ++k) by_left[triangles[k].left].push_back(k);
  for (const auto& t1 : triangles) {
    auto it = by_left.find(t1.right);
    if (it == by_left.end()) continue;
    for (std::size_t k : it->second) {
      const auto& t2 = triangles[k];
      const ArrowId top = D.comp(t2.top, t1.top);
      if (!cs.is_special(SpecialTriangle{top, t1.left, t2.right})) {
        auto w = triangle_witness(fm, t1.top, t1.left, t1.right);
        w.emplace_back("next_top", D.arrow_name(t2.top));
        w.emplace_back("next_right", M.arrow_name(t2.right));
        out.push_back(make(ViolationKind::TriangleCompositionClosure, "composite of special triangles is not special", w));
      }
    }
  }

  // (1) post-composition
  for (const auto& t : triangles) {
    for (ArrowId c : M.out_arrows(M.cod(t.left))) {
      if (!cs.is_special(SpecialTriangle{t.top, M.comp(c, t.left), M.comp(c, t.right)})) {
        auto w = triangle_witness(fm, t.top, t.left, t.right);
        w.emplace_back("post", M.arrow_name(c));
        out.push_back(make(ViolationKind::PostCompositionClosure, "post-composite of a special triangle is not special", w));
      }
    }
  }

  // (2) discrete opfibration over tr(d)
  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    const ObjectId z = M.cod(a);
    for (ArrowId f : D.out_arrows(M.dom(a))) {
      for (ArrowId h : B.hom(fm.shape(D.cod(f)), fm.shape(z))) {
        if (B.compose(h, fm.d(f)) != fm.p(a)) continue;
        std::size_t count = 0;
        for (ArrowId b : cs.completions(f, a)) count += fm.p(b) == h;
        if (count == 1) continue;
        Witness w{{"top", D.arrow_name(f)}, {"left", M.arrow_name(a)}, {"base_right", B.arrow_name(h)}};
        out.push_back(count == 0 ? make(ViolationKind::OpfibrationExistence, "no special triangle extends the data", w)
                                 : make(ViolationKind::OpfibrationUniqueness, "several special triangles extend the data", w));
      }
    }
  }

  // (3) Frobenius: a special square pasted on top of a special triangle
  std::unordered_map<ArrowId, std::vector<std::size_t>> by_bottom;
  const auto squares = fm.special_squares();
  for (std::size_t k = 0; k < squares.size(); ++k) by_bottom[squares[k].bottom].push_back(k);
  for (const auto& t : triangles) {
    auto it = by_bottom.find(t.top);
    if (it == by_bottom.end()) continue;
    for (std::size_t k : it->second) {
      const auto& sq = squares[k];
      if (!cs.is_special(SpecialTriangle{sq.top, M.comp(t.left, sq.left), M.comp(t.right, sq.right)})) {
        auto w = triangle_witness(fm, t.top, t.left, t.right);
        w.emplace_back("square_top", D.arrow_name(sq.top));
        w.emplace_back("square_left", M.arrow_name(sq.left));
        w.emplace_back("square_right", M.arrow_name(sq.right));
        out.push_back(make(ViolationKind::FrobeniusViolation, "pasting of a special square and triangle is not special", w));
      }
    }
  }

  // (4) Beck-Chevalley prisms
  for (const auto& t : triangles) {
    for (std::size_t k1 : fm.squares_with_right(t.left)) {
      const auto& front = squares[k1];
      for (std::size_t k2 : fm.squares_with_right(t.right)) {
        const auto& back = squares[k2];
        if (back.bottom != front.bottom) continue;
        const ArrowId around = D.comp(t.top, front.top);
        for (ArrowId f2 : D.hom(D.dom(front.top), D.dom(back.top))) {
          if (D.compose(back.top, f2) != around) continue;
          if (B.compose(fm.p(back.left), fm.d(f2)) != fm.p(front.left)) continue;
          if (cs.is_special(SpecialTriangle{f2, front.left, back.left})) continue;
          auto w = triangle_witness(fm, t.top, t.left, t.right);
          w.emplace_back("front_top", D.arrow_name(front.top));
          w.emplace_back("back_top", D.arrow_name(back.top));
          w.emplace_back("bottom", D.arrow_name(front.bottom));
          w.emplace_back("pulled_top", D.arrow_name(f2));
          out.push_back(make(ViolationKind::BeckChevalleyViolation, "pulled back triangle is not special", w));
        }
      }
    }
  }
  return out;
}

ArrowId coreindex(const CartesianStructure& cs, ArrowId a, ArrowId lift_f, ArrowId h) {
  const auto& fm = cs.host();
  const auto& B = fm.base().category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  if (D.dom(lift_f) != M.dom(a) || B.compose(h, fm.d(lift_f)) != fm.p(a)) {
    throw Error(ErrorCode::ShapeMismatch, "base triangle does not commute");
  }
  ArrowId found = kNoArrow;
  std::size_t count = 0;
  for (ArrowId b : cs.completions(lift_f, a)) {
    if (fm.p(b) != h) continue;
    found = b;
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::NoTriangle, "no special triangle for " + M.arrow_name(a) + " along " + D.arrow_name(lift_f));
  if (count > 1) throw Error(ErrorCode::AmbiguousTriangle, "several special triangles for " + M.arrow_name(a));
  return found;
}

EquationReport coherence_check(const CartesianStructure& cs) {
  const auto& fm = cs.host();
  const auto& B = fm.base().category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  EquationReport r;
  for (const auto& t : cs.triangles()) {
    auto g = D.inverse(t.top);
    if (!g) continue;
    ++r.configurations;
    const ObjectId z = M.cod(t.left);
    const BaseSquare sq{fm.d(*g), B.comp(fm.p(t.left), fm.d(*g)), B.identity(fm.shape(z)), fm.p(t.left)};
    ArrowId lifted = kNoArrow;
    try {
      lifted = special_lift(fm, t.left, sq, *g, D.identity(z));
    } catch (const Error&) {
    }
    if (lifted != t.right) {
      r.failures.push_back(make(ViolationKind::BeckChevalleyViolation, "covariant and contravariant reindexing differ",
                                triangle_witness(fm, t.top, t.left, t.right)));
    }
  }
  return r;
}

EquationReport frobenius_equations(const CartesianStructure& cs) {
  const auto& fm = cs.host();
  const auto& B = fm.base().category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  EquationReport r;
  for (const auto& sq : fm.special_squares()) {
    const ObjectId x = D.dom(sq.bottom);
    for (ArrowId c : M.out_arrows(x)) {
      for (ArrowId h : B.hom(B.cod(fm.d(sq.bottom)), fm.shape(M.cod(c)))) {
        if (B.compose(h, fm.d(sq.bottom)) != fm.p(c)) continue;
        ++r.configurations;
        ArrowId lhs = kNoArrow, rhs = kNoArrow;
        try {
          lhs = coreindex(cs, M.comp(c, sq.left), sq.top, B.comp(h, fm.p(sq.right)));
          rhs = M.comp(coreindex(cs, c, sq.bottom, h), sq.right);
        } catch (const Error&) {
        }
        if (lhs == kNoArrow || lhs != rhs) {
          r.failures.push_back(make(ViolationKind::FrobeniusViolation, "f'!(c(f*b)) differs from (f!c)b",
                                    {{"square_top", D.arrow_name(sq.top)},
                                     {"square_bottom", D.arrow_name(sq.bottom)},
                                     {"b", M.arrow_name(sq.right)},
                                     {"c", M.arrow_name(c)},
                                     {"h", B.arrow_name(h)}}));
        }
      }
    }
  }
  return r;
}

EquationReport beck_chevalley_equations(const CartesianStructure& cs) {
  const auto& fm = cs.host();
  const auto& B = fm.base().category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto squares = fm.special_squares();
  EquationReport r;
  for (const auto& t : cs.triangles()) {
    for (std::size_t k1 : fm.squares_with_right(t.left)) {
      const auto& front = squares[k1];
      for (std::size_t k2 : fm.squares_with_right(t.right)) {
        const auto& back = squares[k2];
        if (back.bottom != front.bottom) continue;
        const ArrowId around = D.comp(t.top, front.top);
        for (ArrowId f2 : D.hom(D.dom(front.top), D.dom(back.top))) {
          if (D.compose(back.top, f2) != around) continue;
          if (B.compose(fm.p(back.left), fm.d(f2)) != fm.p(front.left)) continue;
          ++r.configurations;
          ArrowId pushed = kNoArrow;
          try {
            pushed = coreindex(cs, front.left, f2, fm.p(back.left));
          } catch (const Error&) {
          }
          if (pushed != back.left) {
            auto w = triangle_witness(fm, t.top, t.left, t.right);
            w.emplace_back("g", D.arrow_name(front.bottom));
            w.emplace_back("pulled_top", D.arrow_name(f2));
            r.failures.push_back(make(ViolationKind::BeckChevalleyViolation, "g*(f!a) differs from f'!(g*a)", w));
          }
        }
      }
    }
  }
  return r;
}

}  // namespace fibmult
