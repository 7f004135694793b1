#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fibmult/multicategory.hpp"

namespace fibmult {

/// A fibered multicategory read off a fibration, with F : D → M.
struct FibrationMulticategory {
  std::shared_ptr<const FiberedMulticategory> fm;
  FinFunctor inclusion;
};

/// D is the cartesian part of p, M is p's domain, and the special squares
/// are the commuting squares with cartesian horizontal sides over pullbacks.
FibrationMulticategory from_fibration(std::shared_ptr<const BaseCategory> base, const FinFunctor& p);

/// The family fibration Fam(C) restricted to a set-backed base. When asked,
/// `components[a]` receives the C-arrows of a, one per domain element.
FinFunctor family_fibration(std::shared_ptr<const FinCategory> c, const BaseCategory& base,
                            std::vector<std::vector<ArrowId>>* components = nullptr);

/// Decides whether the square right∘top = bottom∘left is a pullback in c by
/// enumerating competing cones.
bool is_pullback_square(const FinCategory& c, ArrowId top, ArrowId left, ArrowId bottom, ArrowId right);

struct FibcharReport {
  bool hypothesis = false;  // every special square becomes a pullback under F
  bool conclusion = false;  // every F(h) is p-cartesian
  Violations witnesses;
};

FibcharReport fibchar_check(const FiberedMulticategory& fm, const FinFunctor& f);

/// Identity-on-objects functors D → M over the base, in lexicographic order.
std::vector<FinFunctor> functors_over_base(const FiberedMulticategory& fm, std::size_t limit);

/// p-section obtained from a d-section through F.
std::vector<ArrowId> push_section(const FinFunctor& f, const std::vector<ArrowId>& d_section);

struct Pseudofunctor {
  std::shared_ptr<const FinCategory> base;
  std::vector<std::shared_ptr<const FinCategory>> fibers;
  std::vector<FinFunctor> reindex;  // f : I → J gives fiber J → fiber I
  // (g, f) ↦ components f*g*(y) → (gf)*(y), indexed by the objects y of the fiber over cod g
  std::map<std::pair<ArrowId, ArrowId>, std::vector<ArrowId>> composition;
  std::vector<std::vector<ArrowId>> identity;  // x → id*(x)
};

Violations verify_pseudofunctor(const Pseudofunctor& pf);

/// The pseudofunctor of a unary fibered multicategory, with cleavage given
/// by the d-lifts (identity lifts along identities) and f* by special lifts.
Pseudofunctor pseudofunctor_of(const FiberedMulticategory& fm);

/// Total category and projection; arrows W → X over f are pairs (f, t) with
/// t : W → f*X in the fiber.
FinFunctor grothendieck(const Pseudofunctor& pf);

/// The arrows of M over base isomorphisms, with the special squares among them.
std::shared_ptr<const FiberedMulticategory> unary_part(const FiberedMulticategory& fm);

FinFunctor grothendieck_unary(const FiberedMulticategory& fm);

struct RoundTripReport {
  bool is_fibration = false;
  bool vertical_arrows = false;   // fiber arrows and their composites agree
  bool reindexings = false;       // D-arrows land on cartesian arrows
  bool vertical_squares = false;  // special squares with vertical sides agree
  Violations witnesses;

  bool ok() const { return is_fibration && vertical_arrows && reindexings && vertical_squares; }
};

RoundTripReport roundtrip_unary(const FiberedMulticategory& fm);

}  // namespace fibmult
