#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fibmult/fincat.hpp"
#include "fibmult/finset.hpp"

namespace fibmult {

/// A commuting square in the base: right∘top = bottom∘left.
///
///   K --top--> I
///   |          |
///  left      right
///   v          v
///   L -bottom> J
struct BaseSquare {
  ArrowId top;
  ArrowId left;
  ArrowId bottom;
  ArrowId right;

  bool operator==(const BaseSquare&) const = default;
};

/// A commuting triangle h∘top = side in the base.
struct BaseTriangle {
  ArrowId top;
  ArrowId side;
  ArrowId h;
};

enum class BaseKind { Explicit, FinSet };

/// The base category together with its pullback squares.
///
/// Set-backed bases carry a FinSet per object and a FinMap per arrow and
/// recognise pullbacks element-wise. Explicit bases recognise them by
/// enumerating competing cones. Either way every pullback square of the
/// materialised category is listed, so universal quantifiers over pullbacks
/// are bounded by what the base contains.
class BaseCategory {
 public:
  /// Skeleton {[0],…,[n]} of finite sets with every map between them.
  static std::shared_ptr<const BaseCategory> finset(std::size_t size_bound);
  /// All maps between the given sets (set labels must be distinct).
  static std::shared_ptr<const BaseCategory> finset_universe(std::vector<FinSet> sets, std::size_t size_bound);
  /// The subcategory of Set spanned by the given sets and generated by the
  /// given maps under composition (identities included).
  static std::shared_ptr<const BaseCategory> generated(std::vector<FinSet> sets, std::vector<FinMap> generators);
  /// A category given by tables; pullbacks found by cone enumeration.
  static std::shared_ptr<const BaseCategory> explicit_category(FinCategory category);

  BaseKind kind() const noexcept { return kind_; }
  bool set_backed() const noexcept { return kind_ == BaseKind::FinSet; }
  std::optional<std::size_t> size_bound() const noexcept { return size_bound_; }
  bool skeletal_finset() const noexcept { return skeletal_; }

  const FinCategory& category() const noexcept { return *category_; }
  std::shared_ptr<const FinCategory> category_ptr() const noexcept { return category_; }

  const FinSet& set(ObjectId x) const { return sets_.at(x); }
  const FinMap& map(ArrowId f) const { return maps_.at(f); }
  std::optional<ObjectId> object_of(const FinSet& s) const;
  std::optional<ArrowId> arrow_of(const FinMap& f) const;

  std::span<const BaseSquare> pullbacks() const noexcept { return pullbacks_; }
  std::span<const std::size_t> pullbacks_with_right(ArrowId right) const;
  std::span<const std::size_t> pullbacks_over(ArrowId bottom, ArrowId right) const;
  bool is_pullback(const BaseSquare& sq) const;
  /// First pullback square over the cospan in canonical order.
  std::optional<BaseSquare> chosen_pullback(ArrowId bottom, ArrowId right) const;

  std::optional<ObjectId> terminal() const;
  bool commutes(const BaseSquare& sq) const;

 private:
  BaseCategory() = default;
  void finish();
  void add_pullback(const BaseSquare& sq);
  bool cone_pullback(const BaseSquare& sq) const;

  static std::uint64_t key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

  BaseKind kind_ = BaseKind::Explicit;
  bool skeletal_ = false;
  std::optional<std::size_t> size_bound_;
  std::shared_ptr<FinCategory> category_ = std::make_shared<FinCategory>();
  std::vector<FinSet> sets_;
  std::vector<FinMap> maps_;
  std::unordered_map<std::string, ObjectId> set_index_;
  std::unordered_map<std::string, ArrowId> map_index_;
  std::vector<BaseSquare> pullbacks_;
  std::vector<std::vector<std::size_t>> by_right_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_cospan_;
};

std::string arrow_label(const FinMap& f);

}  // namespace fibmult
