#include "fibmult/finset.hpp"

#include <algorithm>
#include <set>

#include "fibmult/error.hpp"

namespace fibmult {

std::optional<std::size_t> FinSet::index_of(std::string_view element) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == element) return i;
  }
  return std::nullopt;
}

bool is_reserved_label(std::string_view label) noexcept {
  return label.find('|') != std::string_view::npos || label.find(':') != std::string_view::npos;
}

FinSet make_set(std::string label, std::vector<std::string> elements) {
  for (const auto& e : elements) {
    if (is_reserved_label(e)) throw Error(ErrorCode::ReservedLabel, "element label '" + e + "'");
  }
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw Error(ErrorCode::InvalidInput, "duplicate element in set '" + label + "'");
  }
  return FinSet{std::move(label), std::move(elements)};
}

FinSet standard_set(std::size_t n) {
  FinSet s{"[" + std::to_string(n) + "]", {}};
  for (std::size_t i = 1; i <= n; ++i) s.elements.push_back(std::to_string(i));
  return s;
}

FinMap make_map(const FinSet& dom, const FinSet& cod, std::vector<std::size_t> assignment) {
  if (assignment.size() != dom.size()) {
    throw Error(ErrorCode::InvalidInput, "map from " + dom.label + " is not total");
  }
  for (auto y : assignment) {
    if (y >= cod.size()) throw Error(ErrorCode::InvalidInput, "map lands outside " + cod.label);
  }
  return FinMap{dom, cod, std::move(assignment)};
}

FinMap make_map_by_label(const FinSet& dom, const FinSet& cod, std::span<const std::string> images) {
  std::vector<std::size_t> a;
  a.reserve(images.size());
  for (const auto& img : images) {
    auto idx = cod.index_of(img);
    if (!idx) throw Error(ErrorCode::InvalidInput, "'" + img + "' is not an element of " + cod.label);
    a.push_back(*idx);
  }
  return make_map(dom, cod, std::move(a));
}

FinMap identity_map(const FinSet& s) {
  std::vector<std::size_t> a(s.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
  return FinMap{s, s, std::move(a)};
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (!(f.cod == g.dom)) throw Error(ErrorCode::CodomainMismatch, "compose " + g.dom.label + " after " + f.cod.label);
  std::vector<std::size_t> a(f.dom.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return FinMap{f.dom, g.cod, std::move(a)};
}

bool is_injective(const FinMap& f) {
  std::vector<bool> hit(f.cod.size(), false);
  for (auto y : f.assignment) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool is_surjective(const FinMap& f) {
  std::vector<bool> hit(f.cod.size(), false);
  for (auto y : f.assignment) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_bijective(const FinMap& f) { return f.dom.size() == f.cod.size() && is_injective(f); }

std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod) {
  std::vector<FinMap> out;
  if (cod.size() == 0 && dom.size() > 0) return out;
  std::vector<std::size_t> a(dom.size(), 0);
  while (true) {
    out.push_back(FinMap{dom, cod, a});
    std::size_t k = a.size();
    while (k > 0) {
      --k;
      if (++a[k] < cod.size()) break;
      a[k] = 0;
      if (k == 0) return out;
    }
    if (a.empty()) return out;
  }
}

PullbackSquare chosen_pullback(const FinMap& f, const FinMap& g) {
  if (!(f.cod == g.cod)) {
    throw Error(ErrorCode::CodomainMismatch, f.cod.label + " vs " + g.cod.label);
  }
  FinSet apex{"(" + f.dom.label + "|" + g.dom.label + ")", {}};
  std::vector<std::size_t> top, left;
  for (std::size_t x = 0; x < f.dom.size(); ++x) {
    for (std::size_t y = 0; y < g.dom.size(); ++y) {
      if (f(x) != g(y)) continue;
      apex.elements.push_back("(" + f.dom.elements[x] + "|" + g.dom.elements[y] + ")");
      top.push_back(y);
      left.push_back(x);
    }
  }
  PullbackSquare sq{f, g, apex, FinMap{apex, g.dom, std::move(top)}, FinMap{apex, f.dom, std::move(left)}};
  return sq;
}

std::pair<FinSet, std::vector<FinMap>> finite_sum(std::span<const FinSet> parts) {
  FinSet sum{"", {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    sum.label += (k ? "+" : "") + parts[k].label;
    for (const auto& x : parts[k].elements) sum.elements.push_back(std::to_string(k) + ":" + x);
  }
  if (parts.empty()) sum.label = "0";
  std::vector<FinMap> injections;
  std::size_t offset = 0;
  for (const auto& part : parts) {
    std::vector<std::size_t> a(part.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = offset + i;
    injections.push_back(FinMap{part, sum, std::move(a)});
    offset += part.size();
  }
  return {std::move(sum), std::move(injections)};
}

DiagonalData diagonal_data(const FinMap& f) {
  PullbackSquare kp = chosen_pullback(f, f);
  std::vector<std::size_t> diag(f.dom.size());
  for (std::size_t x = 0; x < f.dom.size(); ++x) {
    for (std::size_t k = 0; k < kp.apex.size(); ++k) {
      if (kp.left(k) == x && kp.top(k) == x) {
        diag[x] = k;
        break;
      }
    }
  }
  FinMap delta{f.dom, kp.apex, std::move(diag)};
  return DiagonalData{std::move(kp), std::move(delta)};
}

bool is_pullback(const FinMap& top, const FinMap& left, const FinMap& bottom, const FinMap& right) {
  const std::size_t n = top.dom.size();
  if (left.dom.size() != n) return false;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < n; ++k) {
    if (right(top(k)) != bottom(left(k))) return false;
    if (!seen.emplace(left(k), top(k)).second) return false;
  }
  std::size_t pairs = 0;
  for (std::size_t x = 0; x < bottom.dom.size(); ++x) {
    for (std::size_t y = 0; y < right.dom.size(); ++y) pairs += bottom(x) == right(y) ? 1 : 0;
  }
  return pairs == n;
}

std::string render(const FinMap& f) {
  std::string s = f.dom.label + ">" + f.cod.label + "(";
  for (std::size_t i = 0; i < f.assignment.size(); ++i) {
    s += (i ? "," : "") + f.cod.elements[f.assignment[i]];
  }
  return s + ")";
}

}  // namespace fibmult
