#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fibmult/violation.hpp"

namespace fibmult {

using ObjectId = std::uint32_t;
using ArrowId = std::uint32_t;

inline constexpr ArrowId kNoArrow = static_cast<ArrowId>(-1);

struct ArrowRecord {
  std::string name;
  ObjectId dom;
  ObjectId cod;
};

/// Finite category stored extensionally. Arrows are identified by id only;
/// two parallel arrows are distinct unless they share an id.
class FinCategory {
 public:
  ObjectId add_object(std::string name);
  ArrowId add_arrow(std::string name, ObjectId dom, ObjectId cod);
  void set_identity(ObjectId x, ArrowId id);
  /// Records g∘f = gf.
  void set_compose(ArrowId g, ArrowId f, ArrowId gf);
  void erase_compose(ArrowId g, ArrowId f);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  const std::string& object_name(ObjectId x) const { return objects_[x]; }
  const ArrowRecord& arrow(ArrowId a) const { return arrows_[a]; }
  const std::string& arrow_name(ArrowId a) const { return arrows_[a].name; }
  ObjectId dom(ArrowId a) const { return arrows_[a].dom; }
  ObjectId cod(ArrowId a) const { return arrows_[a].cod; }

  ArrowId identity(ObjectId x) const { return identities_[x]; }
  bool is_identity(ArrowId a) const { return identities_[arrows_[a].dom] == a; }

  std::optional<ArrowId> compose(ArrowId g, ArrowId f) const;
  /// g∘f; throws InvalidInput when the composite is missing from the table.
  ArrowId comp(ArrowId g, ArrowId f) const;

  std::span<const ArrowId> out_arrows(ObjectId x) const { return out_[x]; }
  std::span<const ArrowId> in_arrows(ObjectId x) const { return in_[x]; }
  std::span<const ArrowId> hom(ObjectId x, ObjectId y) const;

  std::optional<ObjectId> find_object(std::string_view name) const;
  std::optional<ArrowId> find_arrow(std::string_view name) const;

  std::optional<ArrowId> inverse(ArrowId a) const;

  std::size_t compose_entries() const noexcept { return compose_.size(); }

  template <class Fn>
  void for_each_composite(Fn&& fn) const {
    for (const auto& [key, gf] : compose_) fn(static_cast<ArrowId>(key >> 32), static_cast<ArrowId>(key & 0xffffffffu), gf);
  }

 private:
  static std::uint64_t key(ArrowId g, ArrowId f) { return (std::uint64_t{g} << 32) | f; }

  std::vector<std::string> objects_;
  std::vector<ArrowRecord> arrows_;
  std::vector<ArrowId> identities_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<std::vector<ArrowId>> in_;
  std::unordered_map<std::uint64_t, std::vector<ArrowId>> hom_;
  std::unordered_map<std::uint64_t, ArrowId> compose_;
  std::unordered_map<std::string, ObjectId> object_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
};

/// Functor between finite categories, given by its object and arrow tables.
struct FinFunctor {
  std::shared_ptr<const FinCategory> dom;
  std::shared_ptr<const FinCategory> cod;
  std::vector<ObjectId> on_objects;
  std::vector<ArrowId> on_arrows;
};

struct FibrationReport {
  bool is_groupoid = false;
  bool is_fibration = false;
  bool is_fibration_in_groupoids = false;
  bool is_discrete_fibration = false;
  bool is_discrete_opfibration = false;
  Violations witnesses;
};

Violations validate_category(const FinCategory& c);
Violations validate_functor(const FinFunctor& f);

/// Arrows of the domain grouped by their image, for lifting queries.
class LiftIndex {
 public:
  explicit LiftIndex(const FinFunctor& f);
  /// Arrows h with F(h) = base and cod h = y.
  std::span<const ArrowId> lifts_into(ArrowId base, ObjectId y) const;
  /// Arrows h with F(h) = base and dom h = x.
  std::span<const ArrowId> lifts_from(ArrowId base, ObjectId x) const;
  std::span<const ArrowId> over(ArrowId base) const;
  std::span<const ObjectId> objects_over(ObjectId base) const;

 private:
  static std::uint64_t key(ArrowId a, ObjectId x) { return (std::uint64_t{a} << 32) | x; }
  std::unordered_map<std::uint64_t, std::vector<ArrowId>> into_, from_;
  std::vector<std::vector<ArrowId>> over_;
  std::vector<std::vector<ObjectId>> objects_over_;
};

/// h is F-cartesian: every g with cod g = cod h and every factorisation
/// F(g) = F(h)∘ψ lifts through h uniquely.
bool is_cartesian(const FinFunctor& f, const LiftIndex& index, ArrowId h);
bool is_opcartesian(const FinFunctor& f, const LiftIndex& index, ArrowId h);

FibrationReport classify_fibration(const FinFunctor& f);

/// All arrows over `base` with codomain y; requires a fibration in groupoids.
std::vector<ArrowId> cartesian_lift(const FinFunctor& f, ArrowId base, ObjectId y);

FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
FinFunctor identity_functor(std::shared_ptr<const FinCategory> c);

}  // namespace fibmult
