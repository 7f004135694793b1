#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibmult {

/// A labeled finite set. Elements are referred to by position; positions
/// follow the canonical order fixed by the constructor that produced the set.
struct FinSet {
  std::string label;
  std::vector<std::string> elements;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<std::size_t> index_of(std::string_view element) const;

  bool operator==(const FinSet&) const = default;
};

/// Total mapping between finite sets, stored as element positions.
struct FinMap {
  FinSet dom;
  FinSet cod;
  std::vector<std::size_t> assignment;

  std::size_t operator()(std::size_t x) const { return assignment[x]; }

  bool operator==(const FinMap&) const = default;
};

/// Square right∘top = bottom∘left with apex = {(x|y) : bottom(x) = right(y)}.
struct PullbackSquare {
  FinMap bottom;  // L → J
  FinMap right;   // I → J
  FinSet apex;
  FinMap top;     // apex → I
  FinMap left;    // apex → L
};

struct DiagonalData {
  PullbackSquare kernel_pair;
  FinMap diagonal;  // dom f → apex
};

bool is_reserved_label(std::string_view label) noexcept;

/// Builds a set from user labels: rejects duplicates and reserved characters
/// and sorts the elements lexicographically.
FinSet make_set(std::string label, std::vector<std::string> elements);

/// The skeletal set {1,…,n} labeled "[n]".
FinSet standard_set(std::size_t n);

FinMap make_map(const FinSet& dom, const FinSet& cod, std::vector<std::size_t> assignment);
FinMap make_map_by_label(const FinSet& dom, const FinSet& cod, std::span<const std::string> images);
FinMap identity_map(const FinSet& s);
FinMap compose(const FinMap& g, const FinMap& f);  // g∘f

bool is_injective(const FinMap& f);
bool is_surjective(const FinMap& f);
bool is_bijective(const FinMap& f);

/// All maps dom → cod in lexicographic order of their assignment tables.
std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod);

PullbackSquare chosen_pullback(const FinMap& f, const FinMap& g);

std::pair<FinSet, std::vector<FinMap>> finite_sum(std::span<const FinSet> parts);

DiagonalData diagonal_data(const FinMap& f);

/// True when the square (top: K→I, left: K→L) over the cospan
/// (bottom: L→J, right: I→J) commutes and (left, top) is a bijection onto the
/// pair set of the cospan.
bool is_pullback(const FinMap& top, const FinMap& left, const FinMap& bottom, const FinMap& right);

std::string render(const FinMap& f);

}  // namespace fibmult
