#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fibmult/fibration_bridge.hpp"
#include "fibmult/monoid.hpp"
#include "fibmult/multicategory.hpp"
#include "fibmult/presentation.hpp"
#include "fibmult/standard.hpp"

namespace fibmult {

/// A fibered multicategory with a chosen set of special triangles.
class CartesianStructure {
 public:
  CartesianStructure(std::shared_ptr<const FiberedMulticategory> host, std::vector<SpecialTriangle> triangles);

  const FiberedMulticategory& host() const noexcept { return *host_; }
  std::shared_ptr<const FiberedMulticategory> host_ptr() const noexcept { return host_; }
  std::span<const SpecialTriangle> triangles() const noexcept { return triangles_; }

  bool is_special(const SpecialTriangle& t) const { return set_.count({t.top, t.left, t.right}) > 0; }
  /// Right sides b with (top, left, b) special.
  std::span<const ArrowId> completions(ArrowId top, ArrowId left) const;

  CartesianStructure with_triangles(std::vector<SpecialTriangle> triangles) const {
    return CartesianStructure(host_, std::move(triangles));
  }

 private:
  static std::uint64_t key(ArrowId a, ArrowId b) { return (std::uint64_t{a} << 32) | b; }
  std::shared_ptr<const FiberedMulticategory> host_;
  std::vector<SpecialTriangle> triangles_;
  std::unordered_set<std::array<std::uint32_t, 3>, TripleHash> set_;
  std::unordered_map<std::uint64_t, std::vector<ArrowId>> by_top_left_;
};

/// The structure generated by covariant reindexing in a standard build.
CartesianStructure cartesian_structure(const StandardMulticategory& s);

/// Family fibration of a category enriched in commutative monoids: b_j is the
/// sum over the fiber of j of the components of a (zero on empty fibers).
/// `components[a]` lists the C-arrows of the family arrow a, one per element
/// of its domain.
CartesianStructure enriched_family_structure(const FibrationMulticategory& family, const SequentialPresentation& pres,
                                             const std::vector<std::vector<ArrowId>>& components);

/// Subcategory laws, post-composition (1), discrete opfibration (2),
/// Frobenius (3) and Beck-Chevalley (4).
Violations verify_cartesian_structure(const CartesianStructure& cs);

/// The unique b over h with (lift_f, a, b) special.
ArrowId coreindex(const CartesianStructure& cs, ArrowId a, ArrowId lift_f, ArrowId h);

struct EquationReport {
  std::size_t configurations = 0;
  Violations failures;
};

/// Covariant reindexing along an invertible top agrees with the special lift
/// along its inverse.
EquationReport coherence_check(const CartesianStructure& cs);
/// f'!(c∘(f*b)) = (f!c)∘b over every special square and every c.
EquationReport frobenius_equations(const CartesianStructure& cs);
/// g*(f!a) = f'!(g*a) over every special triangle and pair of special squares.
EquationReport beck_chevalley_equations(const CartesianStructure& cs);

/// Covariant special square: top f : X → Y in D, left a : X → Z,
/// right b : Y → W, bottom c : Z → W.
struct CovariantSquare {
  ArrowId top;
  ArrowId left;
  ArrowId right;
  ArrowId bottom;

  bool operator==(const CovariantSquare&) const = default;
};

/// (f, a, b, c) is special iff (f, c∘a, b) is a special triangle.
std::vector<CovariantSquare> triangles_to_cosquares(const CartesianStructure& cs);
/// Shape, discrete opfibration, horizontal pasting, Frobenius pasting and BC2.
Violations verify_covariant_presentation(const FiberedMulticategory& fm, std::span<const CovariantSquare> squares);
/// Triangles are the covariant squares with identity bottom. Throws
/// InvalidPresentation when the squares violate the covariant axioms.
CartesianStructure cosquares_to_triangles(std::shared_ptr<const FiberedMulticategory> host,
                                          std::span<const CovariantSquare> squares);

enum class ProductKind { Universal, Algebraic, Opcartesian, StablyOpcartesian };

std::string_view to_string(ProductKind kind) noexcept;

struct ProductCertificate {
  ProductKind kind = ProductKind::Universal;
  ObjectId x = 0;
  ArrowId f = kNoArrow;
  ObjectId carrier = 0;
  ArrowId pi = kNoArrow;  // f*P → X, vertical
  ArrowId u = kNoArrow;   // X → P over f
  std::size_t certificates = 0;       // every accepted candidate
  bool carriers_isomorphic = true;    // all accepted carriers are vertically isomorphic
  std::vector<std::string> evidence;  // quantifier ranges actually enumerated
};

/// Every (P, π); accepts when t ↦ π∘t' is a bijection onto the arrows ρ for
/// every pullback with bottom f, every Q and every d-lift.
std::optional<ProductCertificate> find_universal_product(const FiberedMulticategory& fm, ObjectId x, ArrowId f);
/// Every (P, π, u) making both triangles of the algebraic product special.
std::optional<ProductCertificate> find_algebraic_product(const CartesianStructure& cs, ObjectId x, ArrowId f);
/// Every u : X → P over f that is opcartesian (and, when `stable`, all its
/// reindexings are).
std::optional<ProductCertificate> find_opcartesian(const FiberedMulticategory& fm, ObjectId x, ArrowId f,
                                                   bool stable = true);

struct EquivalenceRow {
  ObjectId x;
  ArrowId f;
  std::optional<bool> ap;  // empty when the base lacks the pullback of f along itself
  bool up;
  bool sr;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  std::vector<EquivalenceRow> counterexamples;

  bool equivalent() const { return counterexamples.empty(); }
};

/// AP, UP and SR for every object X and every base arrow out of its index
/// with codomain of size at most `bound`. Rows whose AP is undecided compare
/// UP and SR only.
EquivalenceReport products_equivalence_report(const CartesianStructure& cs, std::size_t bound);

struct CoincidenceRow {
  ObjectId x;
  ArrowId f;
  bool sum;
  bool product;
  bool same_carrier;
};

/// Sums (stably opcartesian arrows) against universal products, with their
/// carriers compared up to vertical isomorphism.
std::vector<CoincidenceRow> sums_products_report(const CartesianStructure& cs, std::size_t bound);

/// The fibered hom-set M(s, t) with f* from special squares and f! from
/// special triangles, as a fibered multicategory over the same base.
struct FiberedHomMonoid {
  std::shared_ptr<const FiberedMulticategory> monoid;
  std::vector<ArrowId> carrier;  // object of the monoid ↦ vertical arrow sI → tI
  Violations violations;         // verify_fibered_monoid
};

/// s and t are sections of p given per base arrow; they must land in the
/// cartesian arrows (the image of `inclusion`).
FiberedHomMonoid fibered_hom_monoid(const CartesianStructure& cs, const FinFunctor& inclusion,
                                    const std::vector<ArrowId>& s, const std::vector<ArrowId>& t);

}  // namespace fibmult
