#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fibmult/base.hpp"
#include "fibmult/fincat.hpp"
#include "fibmult/violation.hpp"

namespace fibmult {

/// A marked square with horizontal sides in D and vertical sides in M.
///
///   U --top--> X
///   |          |
///  left      right
///   v          v
///   V -bottom> Y
struct SpecialSquare {
  ArrowId top;     // D
  ArrowId bottom;  // D
  ArrowId right;   // M
  ArrowId left;    // M

  bool operator==(const SpecialSquare&) const = default;
};

/// A marked triangle b∘(top) ≈ a with top in D, over the commuting triangle
/// p(b)∘d(top) = p(a) in the base.
///
///   X --top--> Y
///    \        /
///    a       b
///     v     v
///        Z
struct SpecialTriangle {
  ArrowId top;    // D
  ArrowId left;   // M, the side a
  ArrowId right;  // M, the side b

  bool operator==(const SpecialTriangle&) const = default;
};

struct TripleHash {
  std::size_t operator()(const std::array<std::uint32_t, 3>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ v) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

/// A fibered multicategory (d: D → I, p: M → I, special squares).
/// D and M share their objects; object ids agree between the two categories.
class FiberedMulticategory {
 public:
  FiberedMulticategory(std::shared_ptr<const BaseCategory> base, std::shared_ptr<const FinCategory> reindexings,
                       std::shared_ptr<const FinCategory> families, std::vector<ObjectId> object_shapes,
                       std::vector<ArrowId> reindexing_shapes, std::vector<ArrowId> family_shapes,
                       std::vector<SpecialSquare> special_squares);

  const BaseCategory& base() const noexcept { return *base_; }
  std::shared_ptr<const BaseCategory> base_ptr() const noexcept { return base_; }
  /// D: object reindexings (horizontal arrows).
  const FinCategory& reindexings() const noexcept { return *reindexings_; }
  /// M: families of arrows of the multicategory (vertical arrows).
  const FinCategory& families() const noexcept { return *families_; }
  std::shared_ptr<const FinCategory> reindexings_ptr() const noexcept { return reindexings_; }
  std::shared_ptr<const FinCategory> families_ptr() const noexcept { return families_; }

  std::size_t object_count() const noexcept { return object_shapes_.size(); }
  const std::string& object_name(ObjectId x) const { return families_->object_name(x); }
  ObjectId shape(ObjectId x) const { return object_shapes_[x]; }
  /// d on arrows of D.
  ArrowId d(ArrowId h) const { return reindexing_shapes_[h]; }
  /// p on arrows of M.
  ArrowId p(ArrowId a) const { return family_shapes_[a]; }

  FinFunctor d_functor() const;
  FinFunctor p_functor() const;
  const LiftIndex& d_index() const noexcept { return *d_index_; }
  const LiftIndex& p_index() const noexcept { return *p_index_; }

  std::span<const SpecialSquare> special_squares() const noexcept { return squares_; }
  /// Left sides b with (top, bottom, right, b) special.
  std::span<const ArrowId> completions(ArrowId top, ArrowId bottom, ArrowId right) const;
  std::span<const std::size_t> squares_with_right(ArrowId right) const;
  std::span<const std::size_t> squares_with_top(ArrowId top) const;
  bool is_special(const SpecialSquare& sq) const;
  BaseSquare base_square(const SpecialSquare& sq) const;

  /// Same structure with a different set of special squares (for mutants).
  FiberedMulticategory with_special_squares(std::vector<SpecialSquare> squares) const;

 private:
  std::shared_ptr<const BaseCategory> base_;
  std::shared_ptr<const FinCategory> reindexings_;
  std::shared_ptr<const FinCategory> families_;
  std::vector<ObjectId> object_shapes_;
  std::vector<ArrowId> reindexing_shapes_;
  std::vector<ArrowId> family_shapes_;
  std::vector<SpecialSquare> squares_;
  std::shared_ptr<const LiftIndex> d_index_;
  std::shared_ptr<const LiftIndex> p_index_;
  std::unordered_map<std::array<std::uint32_t, 3>, std::vector<ArrowId>, TripleHash> completions_;
  std::vector<std::vector<std::size_t>> by_right_;
  std::vector<std::vector<std::size_t>> by_top_;
};

/// Checks the definition: d is a fibration in groupoids, the special squares
/// form a sub double category of pb(M, D) containing the identity squares,
/// and every (arrow, pullback, pair of d-lifts) has exactly one special
/// completion. Quantifiers range over the pullback squares the base lists.
struct VerifyOptions {
  /// Re-check identity, composition and associativity tables of D and M.
  bool check_categories = true;
};

Violations verify_axioms(const FiberedMulticategory& fm, const VerifyOptions& options = {});

/// The unique b with (lift_top, lift_bottom, a, b) special over `square`.
ArrowId special_lift(const FiberedMulticategory& fm, ArrowId a, const BaseSquare& square, ArrowId lift_top,
                     ArrowId lift_bottom);

/// special_lift along the first d-lifts of the square's top and bottom.
ArrowId reindex(const FiberedMulticategory& fm, ArrowId a, const BaseSquare& square);

/// a ↦ g*a from M(X, Y) to M(X', Y) for an invertible g: X' → X in D.
std::vector<std::pair<ArrowId, ArrowId>> symmetry_action(const FiberedMulticategory& fm, ObjectId y, ArrowId g);

}  // namespace fibmult
