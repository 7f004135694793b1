#include <map>

#include "fibmult/error.hpp"
#include "fibmult/standard.hpp"

namespace fibmult {

namespace {

using Witness = std::vector<std::pair<std::string, std::string>>;

Violation make(ViolationKind kind, std::string detail, Witness witness) {
  return Violation{kind, std::move(detail), std::move(witness)};
}

// Set partitions of {0..n-1} into nonempty blocks, blocks ordered by least element.
void partitions(std::size_t n, std::vector<std::vector<int>>& current, std::vector<std::vector<std::vector<int>>>& out,
                std::size_t next = 0) {
  if (next == n) {
    out.push_back(current);
    return;
  }
  for (std::size_t b = 0; b < current.size(); ++b) {
    current[b].push_back(static_cast<int>(next));
    partitions(n, current, out, next + 1);
    current[b].pop_back();
  }
  current.push_back({static_cast<int>(next)});
  partitions(n, current, out, next + 1);
  current.pop_back();
}

// Order-preserving injection onto `block` from some base set of its size.
std::optional<ArrowId> injection(const BaseCategory& base, ObjectId j, const std::vector<int>& block) {
  const auto& B = base.category();
  for (ObjectId s = 0; s < B.object_count(); ++s) {
    if (base.set(s).size() != block.size()) continue;
    std::vector<std::size_t> assignment(block.begin(), block.end());
    if (auto a = base.arrow_of(FinMap{base.set(s), base.set(j), assignment})) return a;
  }
  return std::nullopt;
}

}  // namespace

Violations check_extensivity(const FiberedMulticategory& fm) {
  const auto& base = fm.base();
  if (!base.set_backed()) throw Error(ErrorCode::BadParams, "extensivity needs a set-backed base");
  const auto& B = base.category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  Violations out;

  // The empty sum: one arrow between any two objects over the empty set.
  for (ObjectId e = 0; e < B.object_count(); ++e) {
    if (base.set(e).size() != 0) continue;
    for (ObjectId x : fm.d_index().objects_over(e)) {
      for (ObjectId y : fm.d_index().objects_over(e)) {
        std::size_t count = 0;
        for (ArrowId a : M.hom(x, y)) count += fm.p(a) == B.identity(e);
        if (count == 1) continue;
        Witness w{{"domain", M.object_name(x)}, {"codomain", M.object_name(y)}};
        out.push_back(count == 0 ? make(ViolationKind::ExistenceViolation, "empty family does not amalgamate", w)
                                 : make(ViolationKind::UniquenessViolation, "empty family amalgamates twice", w));
      }
    }
  }

  for (ObjectId j = 0; j < B.object_count(); ++j) {
    const std::size_t n = base.set(j).size();
    if (n < 2) continue;
    std::vector<std::vector<std::vector<int>>> parts;
    std::vector<std::vector<int>> current;
    partitions(n, current, parts);
    for (const auto& part : parts) {
      if (part.size() < 2) continue;
      std::vector<ArrowId> inj;
      for (const auto& block : part) {
        if (auto a = injection(base, j, block)) inj.push_back(*a);
      }
      if (inj.size() != part.size()) continue;
      for (ObjectId y : fm.d_index().objects_over(j)) {
        std::vector<ArrowId> h2;
        for (ArrowId i : inj) {
          auto lifts = fm.d_index().lifts_into(i, y);
          if (lifts.empty()) break;
          h2.push_back(lifts.front());
        }
        if (h2.size() != inj.size()) continue;
        for (ArrowId f : B.in_arrows(j)) {
          std::vector<BaseSquare> squares;
          for (ArrowId i : inj) {
            if (auto sq = base.chosen_pullback(i, f)) squares.push_back(*sq);
          }
          if (squares.size() != inj.size()) continue;
          for (ObjectId x : fm.d_index().objects_over(B.dom(f))) {
            std::vector<ArrowId> h1;
            for (const auto& sq : squares) {
              auto lifts = fm.d_index().lifts_into(sq.top, x);
              if (lifts.empty()) break;
              h1.push_back(lifts.front());
            }
            if (h1.size() != squares.size()) continue;
            // Candidate restrictions per block.
            std::vector<std::vector<ArrowId>> targets(squares.size());
            for (std::size_t b = 0; b < squares.size(); ++b) {
              for (ArrowId c : M.hom(D.dom(h1[b]), D.dom(h2[b]))) {
                if (fm.p(c) == squares[b].left) targets[b].push_back(c);
              }
            }
            Witness where{{"domain", M.object_name(x)}, {"codomain", M.object_name(y)}, {"base_arrow", B.arrow_name(f)}};
            std::string blocks;
            for (ArrowId i : inj) blocks += (blocks.empty() ? "" : " ") + B.arrow_name(i);
            where.emplace_back("injections", blocks);

            std::map<std::vector<ArrowId>, std::vector<ArrowId>> by_tuple;
            for (ArrowId a : M.hom(x, y)) {
              if (fm.p(a) != f) continue;
              std::vector<ArrowId> tuple;
              for (std::size_t b = 0; b < squares.size(); ++b) {
                ArrowId found = kNoArrow;
                std::size_t count = 0;
                for (ArrowId c : fm.completions(h1[b], h2[b], a)) {
                  if (fm.p(c) == squares[b].left) {
                    found = c;
                    ++count;
                  }
                }
                if (count != 1) break;
                tuple.push_back(found);
              }
              if (tuple.size() != squares.size()) {
                auto w = where;
                w.emplace_back("arrow", M.arrow_name(a));
                out.push_back(make(ViolationKind::ExistenceViolation, "arrow has no unique restriction to the blocks", w));
                continue;
              }
              by_tuple[tuple].push_back(a);
            }
            for (const auto& [tuple, arrows] : by_tuple) {
              if (arrows.size() < 2) continue;
              auto w = where;
              for (ArrowId a : arrows) w.emplace_back("amalgamation", M.arrow_name(a));
              out.push_back(make(ViolationKind::UniquenessViolation, "family amalgamates to several arrows", w));
            }
            std::size_t expected = 1;
            for (const auto& t : targets) expected *= t.size();
            if (by_tuple.size() >= expected) continue;
            std::vector<std::size_t> digit(targets.size(), 0);
            for (std::size_t k = 0; k < expected; ++k) {
              std::vector<ArrowId> tuple(targets.size());
              for (std::size_t b = 0; b < targets.size(); ++b) tuple[b] = targets[b][digit[b]];
              if (!by_tuple.count(tuple)) {
                auto w = where;
                for (ArrowId c : tuple) w.emplace_back("block_arrow", M.arrow_name(c));
                out.push_back(make(ViolationKind::ExistenceViolation, "family has no amalgamation", w));
              }
              for (std::size_t b = targets.size(); b > 0; --b) {
                if (++digit[b - 1] < targets[b - 1].size()) break;
                digit[b - 1] = 0;
              }
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<ArrowId> split(const FiberedMulticategory& fm, ArrowId a) {
  const auto& base = fm.base();
  if (!base.set_backed()) throw Error(ErrorCode::NotExtensive, "splitting needs a set-backed base");
  const auto& B = base.category();
  const ObjectId j = B.cod(fm.p(a));
  std::optional<ObjectId> point;
  for (ObjectId s = 0; s < B.object_count() && !point; ++s) {
    if (base.set(s).size() == 1) point = s;
  }
  std::vector<ArrowId> out;
  for (std::size_t k = 0; k < base.set(j).size(); ++k) {
    auto pt = point ? base.arrow_of(FinMap{base.set(*point), base.set(j), {k}}) : std::nullopt;
    if (!pt) throw Error(ErrorCode::NotExtensive, "no point of " + B.object_name(j));
    auto sq = base.chosen_pullback(*pt, fm.p(a));
    if (!sq) throw Error(ErrorCode::NotExtensive, "no pullback along a point of " + B.object_name(j));
    out.push_back(reindex(fm, a, *sq));
  }
  return out;
}

ArrowId assemble(const FiberedMulticategory& fm, ObjectId x, ObjectId y, ArrowId f,
                 const std::vector<ArrowId>& singles) {
  ArrowId found = kNoArrow;
  std::size_t count = 0;
  for (ArrowId a : fm.families().hom(x, y)) {
    if (fm.p(a) != f || split(fm, a) != singles) continue;
    found = a;
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::NotExtensive, "single arrows do not amalgamate");
  if (count > 1) throw Error(ErrorCode::NotExtensive, "single arrows amalgamate to several arrows");
  return found;
}

}  // namespace fibmult
