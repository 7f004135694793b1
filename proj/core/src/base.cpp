#include "fibmult/base.hpp"

#include <algorithm>
#include <numeric>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

const std::vector<std::size_t> kNone;

}  // namespace

std::string arrow_label(const FinMap& f) { return render(f); }

std::shared_ptr<const BaseCategory> BaseCategory::finset(std::size_t size_bound) {
  std::vector<FinSet> sets;
  for (std::size_t n = 0; n <= size_bound; ++n) sets.push_back(standard_set(n));
  auto b = finset_universe(std::move(sets), size_bound);
  const_cast<BaseCategory&>(*b).skeletal_ = true;
  return b;
}

std::shared_ptr<const BaseCategory> BaseCategory::finset_universe(std::vector<FinSet> sets, std::size_t size_bound) {
  std::shared_ptr<BaseCategory> b(new BaseCategory());
  b->kind_ = BaseKind::FinSet;
  b->size_bound_ = size_bound;
  for (auto& s : sets) {
    if (s.size() > size_bound) throw Error(ErrorCode::BoundTooSmall, "set " + s.label + " exceeds the size bound");
    const ObjectId x = b->category_->add_object(s.label);
    b->set_index_.emplace(s.label, x);
    b->sets_.push_back(std::move(s));
  }
  for (ObjectId x = 0; x < b->sets_.size(); ++x) {
    for (ObjectId y = 0; y < b->sets_.size(); ++y) {
      for (auto& m : all_maps(b->sets_[x], b->sets_[y])) {
        const std::string name = arrow_label(m);
        const ArrowId a = b->category_->add_arrow(name, x, y);
        b->map_index_.emplace(name, a);
        b->maps_.push_back(std::move(m));
      }
    }
  }
  b->finish();

  // Element-wise pullbacks: every bijection from an object of the right size
  // onto the pair set of the cospan.
  const auto& C = *b->category_;
  for (ArrowId bottom = 0; bottom < C.arrow_count(); ++bottom) {
    for (ArrowId right : C.in_arrows(C.cod(bottom))) {
      const FinMap& fb = b->maps_[bottom];
      const FinMap& fr = b->maps_[right];
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t x = 0; x < fb.dom.size(); ++x) {
        for (std::size_t y = 0; y < fr.dom.size(); ++y) {
          if (fb(x) == fr(y)) pairs.emplace_back(x, y);
        }
      }
      for (ObjectId k = 0; k < b->sets_.size(); ++k) {
        if (b->sets_[k].size() != pairs.size()) continue;
        std::vector<std::size_t> perm(pairs.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          std::vector<std::size_t> top(perm.size()), left(perm.size());
          for (std::size_t i = 0; i < perm.size(); ++i) {
            top[i] = pairs[perm[i]].second;
            left[i] = pairs[perm[i]].first;
          }
          auto t = b->arrow_of(FinMap{b->sets_[k], fr.dom, std::move(top)});
          auto l = b->arrow_of(FinMap{b->sets_[k], fb.dom, std::move(left)});
          if (t && l) b->add_pullback(BaseSquare{*t, *l, bottom, right});
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
  return b;
}

std::shared_ptr<const BaseCategory> BaseCategory::generated(std::vector<FinSet> sets, std::vector<FinMap> generators) {
  std::shared_ptr<BaseCategory> b(new BaseCategory());
  b->kind_ = BaseKind::FinSet;
  std::size_t bound = 0;
  for (auto& s : sets) {
    bound = std::max(bound, s.size());
    const ObjectId x = b->category_->add_object(s.label);
    b->set_index_.emplace(s.label, x);
    b->sets_.push_back(std::move(s));
  }
  b->size_bound_ = bound;
  auto add = [&](FinMap m) -> bool {
    const std::string name = arrow_label(m);
    if (b->map_index_.count(name)) return false;
    auto x = b->set_index_.find(m.dom.label);
    auto y = b->set_index_.find(m.cod.label);
    if (x == b->set_index_.end() || y == b->set_index_.end()) {
      throw Error(ErrorCode::InvalidInput, "generator " + name + " leaves the listed sets");
    }
    const ArrowId a = b->category_->add_arrow(name, x->second, y->second);
    b->map_index_.emplace(name, a);
    b->maps_.push_back(std::move(m));
    return true;
  };
  for (const auto& s : b->sets_) add(identity_map(s));
  for (auto& g : generators) add(std::move(g));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = b->maps_.size();
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = 0; g < n; ++g) {
        if (!(b->maps_[f].cod == b->maps_[g].dom)) continue;
        grew = add(compose(b->maps_[g], b->maps_[f])) || grew;
      }
    }
  }
  b->finish();

  const auto& C = *b->category_;
  for (ArrowId bottom = 0; bottom < C.arrow_count(); ++bottom) {
    for (ArrowId right : C.in_arrows(C.cod(bottom))) {
      for (ObjectId k = 0; k < C.object_count(); ++k) {
        for (ArrowId top : C.hom(k, C.dom(right))) {
          for (ArrowId left : C.hom(k, C.dom(bottom))) {
            if (fibmult::is_pullback(b->maps_[top], b->maps_[left], b->maps_[bottom], b->maps_[right])) {
              b->add_pullback(BaseSquare{top, left, bottom, right});
            }
          }
        }
      }
    }
  }
  return b;
}

std::shared_ptr<const BaseCategory> BaseCategory::explicit_category(FinCategory category) {
  if (auto v = validate_category(category); !v.empty()) {
    throw Error(ErrorCode::InvalidInput, "base category: " + std::string(to_string(v.front().kind)));
  }
  std::shared_ptr<BaseCategory> b(new BaseCategory());
  b->kind_ = BaseKind::Explicit;
  b->category_ = std::make_shared<FinCategory>(std::move(category));
  b->finish();
  const auto& C = *b->category_;
  for (ArrowId bottom = 0; bottom < C.arrow_count(); ++bottom) {
    for (ArrowId right : C.in_arrows(C.cod(bottom))) {
      for (ObjectId k = 0; k < C.object_count(); ++k) {
        for (ArrowId top : C.hom(k, C.dom(right))) {
          for (ArrowId left : C.hom(k, C.dom(bottom))) {
            BaseSquare sq{top, left, bottom, right};
            if (b->commutes(sq) && b->cone_pullback(sq)) b->add_pullback(sq);
          }
        }
      }
    }
  }
  return b;
}

void BaseCategory::finish() {
  auto& C = *category_;
  if (kind_ == BaseKind::FinSet) {
    for (ObjectId x = 0; x < C.object_count(); ++x) C.set_identity(x, *arrow_of(identity_map(sets_[x])));
    for (ArrowId f = 0; f < C.arrow_count(); ++f) {
      for (ArrowId g : C.out_arrows(C.cod(f))) {
        auto gf = arrow_of(compose(maps_[g], maps_[f]));
        if (!gf) throw Error(ErrorCode::InvalidInput, "base is not closed under composition");
        C.set_compose(g, f, *gf);
      }
    }
  }
  by_right_.assign(C.arrow_count(), {});
}

void BaseCategory::add_pullback(const BaseSquare& sq) {
  const std::size_t i = pullbacks_.size();
  pullbacks_.push_back(sq);
  by_right_[sq.right].push_back(i);
  by_cospan_[key(sq.bottom, sq.right)].push_back(i);
}

bool BaseCategory::commutes(const BaseSquare& sq) const {
  return category_->compose(sq.right, sq.top) == category_->compose(sq.bottom, sq.left);
}

bool BaseCategory::cone_pullback(const BaseSquare& sq) const {
  const auto& C = *category_;
  const ObjectId L = C.dom(sq.bottom), I = C.dom(sq.right), K = C.dom(sq.top);
  for (ObjectId w = 0; w < C.object_count(); ++w) {
    for (ArrowId x : C.hom(w, L)) {
      for (ArrowId y : C.hom(w, I)) {
        if (C.compose(sq.bottom, x) != C.compose(sq.right, y)) continue;
        std::size_t count = 0;
        for (ArrowId m : C.hom(w, K)) {
          if (C.compose(sq.left, m) == x && C.compose(sq.top, m) == y) ++count;
        }
        if (count != 1) return false;
      }
    }
  }
  return true;
}

std::optional<ObjectId> BaseCategory::object_of(const FinSet& s) const {
  auto it = set_index_.find(s.label);
  if (it == set_index_.end() || !(sets_[it->second] == s)) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> BaseCategory::arrow_of(const FinMap& f) const {
  auto it = map_index_.find(arrow_label(f));
  if (it == map_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> BaseCategory::pullbacks_with_right(ArrowId right) const { return by_right_.at(right); }

std::span<const std::size_t> BaseCategory::pullbacks_over(ArrowId bottom, ArrowId right) const {
  auto it = by_cospan_.find(key(bottom, right));
  if (it == by_cospan_.end()) return kNone;
  return it->second;
}

bool BaseCategory::is_pullback(const BaseSquare& sq) const {
  for (std::size_t i : pullbacks_over(sq.bottom, sq.right)) {
    if (pullbacks_[i] == sq) return true;
  }
  return false;
}

std::optional<BaseSquare> BaseCategory::chosen_pullback(ArrowId bottom, ArrowId right) const {
  auto over = pullbacks_over(bottom, right);
  if (over.empty()) return std::nullopt;
  return pullbacks_[over.front()];
}

std::optional<ObjectId> BaseCategory::terminal() const {
  const auto& C = *category_;
  for (ObjectId t = 0; t < C.object_count(); ++t) {
    bool ok = true;
    for (ObjectId x = 0; x < C.object_count() && ok; ++x) ok = C.hom(x, t).size() == 1;
    if (ok) return t;
  }
  return std::nullopt;
}

}  // namespace fibmult
