#include "fibmult/multicategory.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

const std::vector<ArrowId> kNoArrows;
const std::vector<std::size_t> kNoIndices;

using Triple = std::array<std::uint32_t, 3>;
using Witness = std::vector<std::pair<std::string, std::string>>;

Violation make(ViolationKind kind, std::string detail, Witness witness = {}) {
  return Violation{kind, std::move(detail), std::move(witness)};
}

}  // namespace

FiberedMulticategory::FiberedMulticategory(std::shared_ptr<const BaseCategory> base,
                                           std::shared_ptr<const FinCategory> reindexings,
                                           std::shared_ptr<const FinCategory> families,
                                           std::vector<ObjectId> object_shapes,
                                           std::vector<ArrowId> reindexing_shapes,
                                           std::vector<ArrowId> family_shapes,
                                           std::vector<SpecialSquare> special_squares)
    : base_(std::move(base)),
      reindexings_(std::move(reindexings)),
      families_(std::move(families)),
      object_shapes_(std::move(object_shapes)),
      reindexing_shapes_(std::move(reindexing_shapes)),
      family_shapes_(std::move(family_shapes)),
      squares_(std::move(special_squares)) {
  const auto& B = base_->category();
  if (object_shapes_.size() != families_->object_count() ||
      reindexing_shapes_.size() != reindexings_->arrow_count() ||
      family_shapes_.size() != families_->arrow_count()) {
    throw Error(ErrorCode::InvalidInput, "shape tables do not match the categories");
  }
  for (auto x : object_shapes_)
    if (x >= B.object_count()) throw Error(ErrorCode::InvalidInput, "object shape out of range");
  for (auto f : reindexing_shapes_)
    if (f >= B.arrow_count()) throw Error(ErrorCode::InvalidInput, "reindexing shape out of range");
  for (auto f : family_shapes_)
    if (f >= B.arrow_count()) throw Error(ErrorCode::InvalidInput, "family shape out of range");
  if (reindexings_->object_count() != families_->object_count()) {
    throw Error(ErrorCode::InvalidInput, "D and M have different object counts");
  }

  d_index_ = std::make_shared<LiftIndex>(d_functor());
  p_index_ = std::make_shared<LiftIndex>(p_functor());

  by_right_.resize(families_->arrow_count());
  by_top_.resize(reindexings_->arrow_count());
  for (std::size_t i = 0; i < squares_.size(); ++i) {
    const auto& sq = squares_[i];
    if (sq.top >= reindexings_->arrow_count() || sq.bottom >= reindexings_->arrow_count() ||
        sq.right >= families_->arrow_count() || sq.left >= families_->arrow_count()) {
      throw Error(ErrorCode::InvalidInput, "special square refers to an unknown arrow");
    }
    auto& lefts = completions_[Triple{sq.top, sq.bottom, sq.right}];
    lefts.push_back(sq.left);
    by_right_[sq.right].push_back(i);
    by_top_[sq.top].push_back(i);
  }
}

FinFunctor FiberedMulticategory::d_functor() const {
  return FinFunctor{reindexings_, base_->category_ptr(), object_shapes_, reindexing_shapes_};
}

FinFunctor FiberedMulticategory::p_functor() const {
  return FinFunctor{families_, base_->category_ptr(), object_shapes_, family_shapes_};
}

std::span<const ArrowId> FiberedMulticategory::completions(ArrowId top, ArrowId bottom, ArrowId right) const {
  auto it = completions_.find(Triple{top, bottom, right});
  return it == completions_.end() ? std::span<const ArrowId>(kNoArrows) : std::span<const ArrowId>(it->second);
}

std::span<const std::size_t> FiberedMulticategory::squares_with_right(ArrowId right) const {
  return right < by_right_.size() ? std::span<const std::size_t>(by_right_[right]) : std::span<const std::size_t>(kNoIndices);
}

std::span<const std::size_t> FiberedMulticategory::squares_with_top(ArrowId top) const {
  return top < by_top_.size() ? std::span<const std::size_t>(by_top_[top]) : std::span<const std::size_t>(kNoIndices);
}

bool FiberedMulticategory::is_special(const SpecialSquare& sq) const {
  auto lefts = completions(sq.top, sq.bottom, sq.right);
  return std::find(lefts.begin(), lefts.end(), sq.left) != lefts.end();
}

BaseSquare FiberedMulticategory::base_square(const SpecialSquare& sq) const {
  return BaseSquare{d(sq.top), p(sq.left), d(sq.bottom), p(sq.right)};
}

FiberedMulticategory FiberedMulticategory::with_special_squares(std::vector<SpecialSquare> squares) const {
  return FiberedMulticategory(base_, reindexings_, families_, object_shapes_, reindexing_shapes_, family_shapes_,
                              std::move(squares));
}

namespace {

Witness square_witness(const FiberedMulticategory& fm, const SpecialSquare& sq) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  return {{"top", D.arrow_name(sq.top)},
          {"bottom", D.arrow_name(sq.bottom)},
          {"right", M.arrow_name(sq.right)},
          {"left", M.arrow_name(sq.left)}};
}

Witness base_witness(const BaseCategory& base, const BaseSquare& sq) {
  const auto& B = base.category();
  return {{"base_top", B.arrow_name(sq.top)},
          {"base_left", B.arrow_name(sq.left)},
          {"base_bottom", B.arrow_name(sq.bottom)},
          {"base_right", B.arrow_name(sq.right)}};
}

bool shape_ok(const FiberedMulticategory& fm, const SpecialSquare& sq) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  return D.cod(sq.top) == M.dom(sq.right) && M.cod(sq.left) == D.dom(sq.bottom) && D.dom(sq.top) == M.dom(sq.left) &&
         D.cod(sq.bottom) == M.cod(sq.right);
}

}  // namespace

Violations verify_axioms(const FiberedMulticategory& fm, const VerifyOptions& options) {
  Violations out;
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto& base = fm.base();

  for (ObjectId x = 0; x < M.object_count(); ++x) {
    if (D.object_name(x) != M.object_name(x)) {
      out.push_back(make(ViolationKind::ObjectMismatch, "D and M disagree on an object",
                         {{"d_object", D.object_name(x)}, {"m_object", M.object_name(x)}}));
    }
  }
  if (!out.empty()) return out;

  if (options.check_categories) {
    for (auto& v : validate_category(D)) out.push_back(std::move(v));
    for (auto& v : validate_category(M)) out.push_back(std::move(v));
  }
  auto dv = validate_functor(fm.d_functor());
  auto pv = validate_functor(fm.p_functor());
  if (!dv.empty() || !pv.empty()) {
    for (auto& v : dv) out.push_back(std::move(v));
    for (auto& v : pv) out.push_back(std::move(v));
    return out;
  }

  auto fib = classify_fibration(fm.d_functor());
  if (!fib.is_fibration_in_groupoids) {
    if (fib.witnesses.empty()) {
      out.push_back(make(ViolationKind::NotFibrationInGroupoids, "d is not a fibration in groupoids"));
    }
    for (auto& v : fib.witnesses) {
      if (v.kind == ViolationKind::NotFibrationInGroupoids) out.push_back(std::move(v));
    }
  }

  for (const auto& sq : fm.special_squares()) {
    if (!shape_ok(fm, sq)) {
      out.push_back(make(ViolationKind::SquareShape, "special square sides do not meet", square_witness(fm, sq)));
      continue;
    }
    const auto bsq = fm.base_square(sq);
    if (!base.is_pullback(bsq)) {
      auto w = square_witness(fm, sq);
      for (auto& e : base_witness(base, bsq)) w.push_back(std::move(e));
      out.push_back(make(ViolationKind::SquareNotPullback, "special square does not lie over a pullback", std::move(w)));
    }
  }

  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    const SpecialSquare h{D.identity(M.dom(a)), D.identity(M.cod(a)), a, a};
    if (!fm.is_special(h)) {
      out.push_back(make(ViolationKind::MissingIdentitySquare, "horizontal identity square is not special",
                         square_witness(fm, h)));
    }
  }
  for (ArrowId f = 0; f < D.arrow_count(); ++f) {
    const SpecialSquare v{f, f, M.identity(D.cod(f)), M.identity(D.dom(f))};
    if (!fm.is_special(v)) {
      out.push_back(make(ViolationKind::MissingIdentitySquare, "vertical identity square is not special",
                         square_witness(fm, v)));
    }
  }

  // Unique lifting, recorded per (top, bottom, right) so that closure
  // failures caused by the same defect are not reported twice.
  std::set<Triple> missing, ambiguous;
  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    const ObjectId x = M.dom(a);
    const ObjectId y = M.cod(a);
    for (std::size_t i : base.pullbacks_with_right(fm.p(a))) {
      const auto& bsq = base.pullbacks()[i];
      for (ArrowId h1 : fm.d_index().lifts_into(bsq.top, x)) {
        for (ArrowId h2 : fm.d_index().lifts_into(bsq.bottom, y)) {
          std::size_t count = 0;
          for (ArrowId b : fm.completions(h1, h2, a)) {
            if (fm.p(b) == bsq.left && M.dom(b) == D.dom(h1) && M.cod(b) == D.dom(h2)) ++count;
          }
          if (count == 1) continue;
          Witness w{{"right", M.arrow_name(a)}, {"top", D.arrow_name(h1)}, {"bottom", D.arrow_name(h2)}};
          for (auto& e : base_witness(base, bsq)) w.push_back(std::move(e));
          if (count == 0) {
            missing.insert(Triple{h1, h2, a});
            out.push_back(make(ViolationKind::ExistenceViolation, "no special completion", std::move(w)));
          } else {
            ambiguous.insert(Triple{h1, h2, a});
            w.emplace_back("completions", std::to_string(count));
            out.push_back(make(ViolationKind::UniquenessViolation, "several special completions", std::move(w)));
          }
        }
      }
    }
  }

  auto suppressed = [&](const SpecialSquare& composite, const SpecialSquare& s1, const SpecialSquare& s2) {
    return missing.contains(Triple{composite.top, composite.bottom, composite.right}) ||
           ambiguous.contains(Triple{s1.top, s1.bottom, s1.right}) ||
           ambiguous.contains(Triple{s2.top, s2.bottom, s2.right});
  };

  const auto squares = fm.special_squares();
  for (const auto& s1 : squares) {
    if (!shape_ok(fm, s1)) continue;
    // s2 pasted on the left of s1.
    for (std::size_t j : fm.squares_with_right(s1.left)) {
      const auto& s2 = squares[j];
      if (!shape_ok(fm, s2)) continue;
      auto top = D.compose(s1.top, s2.top);
      auto bottom = D.compose(s1.bottom, s2.bottom);
      if (!top || !bottom) continue;
      const SpecialSquare c{*top, *bottom, s1.right, s2.left};
      if (fm.is_special(c) || suppressed(c, s1, s2)) continue;
      out.push_back(make(ViolationKind::HorizontalClosure, "horizontal composite is not special", square_witness(fm, c)));
    }
    // s2 pasted below s1.
    for (std::size_t j : fm.squares_with_top(s1.bottom)) {
      const auto& s2 = squares[j];
      if (!shape_ok(fm, s2)) continue;
      auto right = M.compose(s2.right, s1.right);
      auto left = M.compose(s2.left, s1.left);
      if (!right || !left) continue;
      const SpecialSquare c{s1.top, s2.bottom, *right, *left};
      if (fm.is_special(c) || suppressed(c, s1, s2)) continue;
      out.push_back(make(ViolationKind::VerticalClosure, "vertical composite is not special", square_witness(fm, c)));
    }
  }
  return out;
}

ArrowId special_lift(const FiberedMulticategory& fm, ArrowId a, const BaseSquare& square, ArrowId lift_top,
                     ArrowId lift_bottom) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  if (fm.p(a) != square.right || fm.d(lift_top) != square.top || fm.d(lift_bottom) != square.bottom ||
      D.cod(lift_top) != M.dom(a) || D.cod(lift_bottom) != M.cod(a)) {
    throw Error(ErrorCode::ShapeMismatch, "lifts do not lie over the square");
  }
  if (!fm.base().is_pullback(square)) throw Error(ErrorCode::ShapeMismatch, "base square is not a pullback");
  ArrowId found = kNoArrow;
  std::size_t count = 0;
  for (ArrowId b : fm.completions(lift_top, lift_bottom, a)) {
    if (fm.p(b) != square.left) continue;
    found = b;
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::NoLift, "no special square completes " + M.arrow_name(a));
  if (count > 1) throw Error(ErrorCode::AmbiguousLift, "several special squares complete " + M.arrow_name(a));
  return found;
}

ArrowId reindex(const FiberedMulticategory& fm, ArrowId a, const BaseSquare& square) {
  const auto& M = fm.families();
  auto tops = fm.d_index().lifts_into(square.top, M.dom(a));
  auto bottoms = fm.d_index().lifts_into(square.bottom, M.cod(a));
  if (tops.empty() || bottoms.empty()) throw Error(ErrorCode::NoLift, "square has no lift in D");
  return special_lift(fm, a, square, tops.front(), bottoms.front());
}

std::vector<std::pair<ArrowId, ArrowId>> symmetry_action(const FiberedMulticategory& fm, ObjectId y, ArrowId g) {
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto& B = fm.base().category();
  if (!D.inverse(g)) throw Error(ErrorCode::NotIso, D.arrow_name(g) + " is not invertible");
  const ObjectId x = D.cod(g);
  const ArrowId phi = fm.d(g);
  const ArrowId id_y = D.identity(y);
  std::vector<std::pair<ArrowId, ArrowId>> out;
  for (ArrowId a : M.hom(x, y)) {
    const BaseSquare sq{phi, B.comp(fm.p(a), phi), B.identity(fm.shape(y)), fm.p(a)};
    out.emplace_back(a, special_lift(fm, a, sq, g, id_y));
  }
  return out;
}

}  // namespace fibmult
