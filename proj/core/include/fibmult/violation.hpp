#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibmult {

enum class ViolationKind {
  // category / functor structure
  DomCodViolation,
  IdentityViolation,
  AssociativityViolation,
  FunctorViolation,
  // fibration properties
  NotFibrationInGroupoids,
  NotDiscreteFibration,
  NotDiscreteOpfibration,
  // fibered multicategory
  ObjectMismatch,
  SquareShape,
  SquareNotPullback,
  MissingIdentitySquare,
  HorizontalClosure,
  VerticalClosure,
  ExistenceViolation,
  UniquenessViolation,
  // monoids
  SectionViolation,
  PullbackNotSpecial,
  MorphismNotSpecial,
  MorphismNotCommutative,
  MonoidSquareCoherence,
  // cartesian structures
  TriangleShape,
  TriangleCompositionClosure,
  TriangleIdentity,
  PostCompositionClosure,
  OpfibrationExistence,
  OpfibrationUniqueness,
  FrobeniusViolation,
  BeckChevalleyViolation,
  CosquareShape,
  CosquarePastingClosure,
  BeckChevalley2Violation,
  // presentations
  PresentationLaw,
};

std::string_view to_string(ViolationKind kind) noexcept;

/// One failed instance of a universally quantified law. The witness lists
/// the diagram data as (role, identifier) pairs so the failure can be
/// re-checked independently.
struct Violation {
  ViolationKind kind;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> witness;

  bool operator==(const Violation&) const = default;
};

using Violations = std::vector<Violation>;

inline std::size_t count_kind(const Violations& vs, ViolationKind kind) {
  std::size_t n = 0;
  for (const auto& v : vs) n += v.kind == kind ? 1 : 0;
  return n;
}

}  // namespace fibmult
