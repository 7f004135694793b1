#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibmult/fibration_bridge.hpp"
#include "fibmult/monoid.hpp"
#include "fibmult/standard.hpp"

namespace fibmult {

struct ExampleParams {
  int ring_order = 2;
  /// Category for the sequential generator (a 3-element chain when absent).
  std::shared_ptr<const FinCategory> category;
  int max_dim = 2;
};

struct Example {
  std::string name;
  std::shared_ptr<const FiberedMulticategory> fm;
  /// Set for instances built from a presentation.
  std::shared_ptr<const StandardMulticategory> standard;
  std::vector<SpecialTriangle> triangles;
  /// The pseudo-identity of pseudo_identity.
  std::optional<ArrowId> designated;
};

/// terminal | ring | sequential | matrix | pseudo_identity | finset_self_indexed.
/// Throws BadParams for unknown names or parameters.
Example gen_example(const std::string& name, const ExampleParams& params, std::size_t bound);

std::shared_ptr<FinCategory> chain_category(int n);

/// Sets indexed over sets: objects are families of finite sets [s_i]
/// (s_i ≤ bound) over [0..bound], D has the fiberwise bijections.
Example finset_self_indexed(std::size_t bound);

/// [1], [2] and [4] = [2]×[2] with the diagonal, both projections and
/// ! : [2] → [1].
std::shared_ptr<const BaseCategory> diagonal_base();
/// Affine Z/2 maps over the base generated by Δ, π1, π2: [4] ⇄ [2] and
/// ! : [2] → [1], with [4] standing for [2]×[2].
std::shared_ptr<const StandardMulticategory> eckmann_hilton_instance();
/// Functions between 2-element sets A, B, C, D over the base generated by
/// f = (1↦3, 2↦1, 3↦3) : [3] → [3'] and the maps to [1]; objects generated
/// by (B,C,A) over [3'] and D.
std::shared_ptr<const StandardMulticategory> finite_product_instance();

std::shared_ptr<FinCategory> codiscrete(const std::vector<std::string>& names);

/// Over {0 → 1}: codiscrete fibers {a, b} and {c, d}, u* constant at a, and
/// id* swapping a and b with non-identity unit comparisons.
Pseudofunctor arrow_pseudofunctor();

/// A monoid whose arrow over f has component j = op(|f⁻¹ j|), on the
/// constant families at `object`.
MonoidInM monoid_from_operations(const StandardMulticategory& s, int object,
                                 const std::function<Payload(std::size_t)>& op);

/// Copy of a category without one arrow; compositions through it are dropped.
std::shared_ptr<FinCategory> copy_without(const FinCategory& c, ArrowId removed, std::vector<ArrowId>& remap);

// Mutants. Each returns nullopt when the instance has no suitable configuration.
std::optional<FiberedMulticategory> mutant_delete_square(const FiberedMulticategory& fm);
std::optional<FiberedMulticategory> mutant_duplicate_lift(const FiberedMulticategory& fm);
std::optional<FiberedMulticategory> mutant_delete_family_arrow(const FiberedMulticategory& fm);
std::optional<FiberedMulticategory> mutant_duplicate_amalgamation(const FiberedMulticategory& fm);

}  // namespace fibmult
