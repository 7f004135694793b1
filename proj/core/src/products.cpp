#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fibmult/cartesian.hpp"
#include "fibmult/error.hpp"
#include "fibmult/monoid.hpp"

namespace fibmult {

namespace {

using Witness = std::vector<std::pair<std::string, std::string>>;

Witness cosquare_witness(const FiberedMulticategory& fm, const CovariantSquare& s) {
  return {{"top", fm.reindexings().arrow_name(s.top)},
          {"left", fm.families().arrow_name(s.left)},
          {"right", fm.families().arrow_name(s.right)},
          {"bottom", fm.families().arrow_name(s.bottom)}};
}

bool vertically_isomorphic(const FiberedMulticategory& fm, ObjectId a, ObjectId b) {
  const auto& M = fm.families();
  const auto& B = fm.base().category();
  if (fm.shape(a) != fm.shape(b)) return false;
  for (ArrowId m : M.hom(a, b)) {
    if (B.is_identity(fm.p(m)) && M.inverse(m)) return true;
  }
  return false;
}

struct Candidates {
  std::optional<ProductCertificate> first;
  std::size_t accepted = 0;
  bool isomorphic = true;

  void accept(const FiberedMulticategory& fm, const ProductCertificate& c) {
    ++accepted;
    if (!first) {
      first = c;
    } else if (isomorphic && !vertically_isomorphic(fm, first->carrier, c.carrier)) {
      isomorphic = false;
    }
  }

  std::optional<ProductCertificate> finish(std::vector<std::string> evidence) {
    if (!first) return std::nullopt;
    first->certificates = accepted;
    first->carriers_isomorphic = isomorphic;
    first->evidence = std::move(evidence);
    return first;
  }
};

bool opcartesian(const FiberedMulticategory& fm, ArrowId u, std::size_t& checks) {
  const auto& B = fm.base().category();
  const auto& M = fm.families();
  const ObjectId x = M.dom(u), p = M.cod(u);
  const ArrowId f = fm.p(u);
  for (ArrowId v : M.out_arrows(x)) {
    const ObjectId q = M.cod(v);
    for (ArrowId g : B.hom(fm.shape(p), fm.shape(q))) {
      if (B.compose(g, f) != fm.p(v)) continue;
      ++checks;
      std::size_t count = 0;
      for (ArrowId t : M.hom(p, q)) count += fm.p(t) == g && M.compose(t, u) == v;
      if (count != 1) return false;
    }
  }
  return true;
}

std::vector<SpecialTriangle> sorted_triangles(std::vector<SpecialTriangle> ts) {
  std::sort(ts.begin(), ts.end(), [](const SpecialTriangle& a, const SpecialTriangle& b) {
    return std::tie(a.top, a.left, a.right) < std::tie(b.top, b.left, b.right);
  });
  return ts;
}

}  // namespace

std::string_view to_string(ProductKind kind) noexcept {
  switch (kind) {
    case ProductKind::Universal: return "universal";
    case ProductKind::Algebraic: return "algebraic";
    case ProductKind::Opcartesian: return "opcartesian";
    case ProductKind::StablyOpcartesian: return "stably-opcartesian";
  }
  return "?";
}

std::vector<CovariantSquare> triangles_to_cosquares(const CartesianStructure& cs) {
  const auto& fm = cs.host();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  std::vector<CovariantSquare> out;
  for (ArrowId f = 0; f < D.arrow_count(); ++f) {
    for (ArrowId a : M.out_arrows(D.dom(f))) {
      for (ArrowId c : M.out_arrows(M.cod(a))) {
        for (ArrowId b : cs.completions(f, M.comp(c, a))) out.push_back(CovariantSquare{f, a, b, c});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CovariantSquare& s, const CovariantSquare& t) {
    return std::tie(s.top, s.left, s.right, s.bottom) < std::tie(t.top, t.left, t.right, t.bottom);
  });
  return out;
}

Violations verify_covariant_presentation(const FiberedMulticategory& fm, std::span<const CovariantSquare> squares) {
  const auto& B = fm.base().category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  Violations out;
  std::set<std::tuple<ArrowId, ArrowId, ArrowId, ArrowId>> set;
  std::map<std::tuple<ArrowId, ArrowId, ArrowId>, std::vector<ArrowId>> rights;  // (top, left, bottom) ↦ b
  std::unordered_map<ArrowId, std::vector<std::size_t>> by_left;

  for (std::size_t k = 0; k < squares.size(); ++k) {
    const auto& s = squares[k];
    const bool ends = D.dom(s.top) == M.dom(s.left) && D.cod(s.top) == M.dom(s.right) &&
                      M.cod(s.left) == M.dom(s.bottom) && M.cod(s.right) == M.cod(s.bottom);
    if (!ends || B.compose(fm.p(s.right), fm.d(s.top)) != B.compose(fm.p(s.bottom), fm.p(s.left))) {
      out.push_back(Violation{ViolationKind::CosquareShape, "covariant square does not lie over a commuting square",
                              cosquare_witness(fm, s)});
      continue;
    }
    set.insert({s.top, s.left, s.right, s.bottom});
    rights[{s.top, s.left, s.bottom}].push_back(s.right);
    by_left[s.left].push_back(k);
  }
  if (!out.empty()) return out;
  auto special = [&](ArrowId f, ArrowId a, ArrowId b, ArrowId c) { return set.contains({f, a, b, c}); };

  for (ArrowId a = 0; a < M.arrow_count(); ++a) {
    const ObjectId x = M.dom(a), z = M.cod(a);
    if (!special(D.identity(x), a, a, M.identity(z))) {
      out.push_back(Violation{ViolationKind::TriangleIdentity, "identity covariant square is not special",
                              {{"arrow", M.arrow_name(a)}}});
    }
  }

  for (ArrowId f = 0; f < D.arrow_count(); ++f) {
    for (ArrowId a : M.out_arrows(D.dom(f))) {
      for (ArrowId c : M.out_arrows(M.cod(a))) {
        auto it = rights.find({f, a, c});
        for (ArrowId h : B.hom(fm.shape(D.cod(f)), fm.shape(M.cod(c)))) {
          if (B.compose(h, fm.d(f)) != B.compose(fm.p(c), fm.p(a))) continue;
          std::size_t count = 0;
          if (it != rights.end()) {
            for (ArrowId b : it->second) count += fm.p(b) == h;
          }
          if (count == 1) continue;
          Witness w{{"top", D.arrow_name(f)}, {"left", M.arrow_name(a)}, {"bottom", M.arrow_name(c)},
                    {"base_right", B.arrow_name(h)}};
          out.push_back(count == 0
                            ? Violation{ViolationKind::OpfibrationExistence, "no covariant square extends the data", w}
                            : Violation{ViolationKind::OpfibrationUniqueness, "several covariant squares extend the data", w});
        }
      }
    }
  }

  // horizontal pasting
  for (const auto& s : squares) {
    auto it = by_left.find(s.right);
    if (it == by_left.end()) continue;
    for (std::size_t k : it->second) {
      const auto& t = squares[k];
      if (!special(D.comp(t.top, s.top), s.left, t.right, M.comp(t.bottom, s.bottom))) {
        auto w = cosquare_witness(fm, s);
        w.emplace_back("next_top", D.arrow_name(t.top));
        w.emplace_back("next_right", M.arrow_name(t.right));
        w.emplace_back("next_bottom", M.arrow_name(t.bottom));
        out.push_back(Violation{ViolationKind::CosquarePastingClosure, "horizontal pasting is not special", w});
      }
    }
  }

  const auto sq = fm.special_squares();
  std::unordered_map<ArrowId, std::vector<std::size_t>> by_bottom;
  for (std::size_t k = 0; k < sq.size(); ++k) by_bottom[sq[k].bottom].push_back(k);

  for (const auto& s : squares) {
    // contravariant square on top
    if (auto it = by_bottom.find(s.top); it != by_bottom.end()) {
      for (std::size_t k : it->second) {
        const auto& c = sq[k];
        if (!special(c.top, M.comp(s.left, c.left), M.comp(s.right, c.right), s.bottom)) {
          auto w = cosquare_witness(fm, s);
          w.emplace_back("square_top", D.arrow_name(c.top));
          out.push_back(Violation{ViolationKind::FrobeniusViolation, "vertical pasting is not special", w});
        }
      }
    }
    // cube
    for (std::size_t kf : fm.squares_with_right(s.left)) {
      const auto& front = sq[kf];
      for (std::size_t kb : fm.squares_with_top(front.bottom)) {
        const auto& floor = sq[kb];
        if (floor.right != s.bottom) continue;
        for (std::size_t kk : fm.squares_with_right(s.right)) {
          const auto& back = sq[kk];
          if (back.bottom != floor.bottom) continue;
          const ArrowId around = D.comp(s.top, front.top);
          for (ArrowId f2 : D.hom(D.dom(front.top), D.dom(back.top))) {
            if (D.compose(back.top, f2) != around) continue;
            if (B.compose(fm.p(back.left), fm.d(f2)) != B.compose(fm.p(floor.left), fm.p(front.left))) continue;
            if (special(f2, front.left, back.left, floor.left)) continue;
            auto w = cosquare_witness(fm, s);
            w.emplace_back("pulled_top", D.arrow_name(f2));
            w.emplace_back("front_top", D.arrow_name(front.top));
            w.emplace_back("back_top", D.arrow_name(back.top));
            out.push_back(Violation{ViolationKind::BeckChevalley2Violation, "left face of the cube is not special", w});
          }
        }
      }
    }
  }
  return out;
}

CartesianStructure cosquares_to_triangles(std::shared_ptr<const FiberedMulticategory> host,
                                          std::span<const CovariantSquare> squares) {
  auto violations = verify_covariant_presentation(*host, squares);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidPresentation,
                std::string(to_string(violations.front().kind)) + ": " + violations.front().detail);
  }
  const auto& M = host->families();
  std::vector<SpecialTriangle> ts;
  for (const auto& s : squares) {
    if (M.is_identity(s.bottom)) ts.push_back(SpecialTriangle{s.top, s.left, s.right});
  }
  return CartesianStructure(std::move(host), sorted_triangles(std::move(ts)));
}

std::optional<ProductCertificate> find_universal_product(const FiberedMulticategory& fm, ObjectId x, ArrowId f) {
  const auto& base = fm.base();
  const auto& B = base.category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto& dix = fm.d_index();
  if (B.dom(f) != fm.shape(x)) throw Error(ErrorCode::ShapeMismatch, "base arrow does not start at p(X)");
  const ArrowId id = B.identity(fm.shape(x));

  std::vector<BaseSquare> cones;
  for (const auto& sq : base.pullbacks()) {
    if (sq.bottom == f) cones.push_back(sq);
  }
  std::size_t tests = 0;
  Candidates found;
  for (ObjectId p : dix.objects_over(B.cod(f))) {
    auto lifts = dix.lifts_into(f, p);
    if (lifts.empty()) continue;
    const ArrowId fp = lifts.front();
    for (ArrowId pi : M.hom(D.dom(fp), x)) {
      if (fm.p(pi) != id) continue;
      bool ok = true;
      for (const auto& sq : cones) {
        for (ObjectId q : dix.objects_over(B.cod(sq.top))) {
          for (ArrowId fq : dix.lifts_into(sq.top, q)) {
            ++tests;
            std::set<ArrowId> image;
            std::size_t ts = 0;
            for (ArrowId t : M.hom(q, p)) {
              if (fm.p(t) != sq.right) continue;
              ++ts;
              ArrowId lifted = kNoArrow;
              std::size_t count = 0;
              for (ArrowId l : fm.completions(fq, fp, t)) {
                if (fm.p(l) != sq.left) continue;
                lifted = l;
                ++count;
              }
              if (count != 1) {
                ok = false;
                break;
              }
              image.insert(M.comp(pi, lifted));
            }
            std::size_t rhos = 0;
            for (ArrowId rho : M.hom(D.dom(fq), x)) rhos += fm.p(rho) == sq.left;
            ok = ok && image.size() == ts && ts == rhos;
            if (!ok) break;
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (ok) found.accept(fm, ProductCertificate{ProductKind::Universal, x, f, p, pi, kNoArrow, 0, true, {}});
    }
  }
  return found.finish({"pullbacks with bottom f: " + std::to_string(cones.size()),
                       "cone tests: " + std::to_string(tests)});
}

std::optional<ProductCertificate> find_algebraic_product(const CartesianStructure& cs, ObjectId x, ArrowId f) {
  const auto& fm = cs.host();
  const auto& base = fm.base();
  const auto& B = base.category();
  const auto& D = fm.reindexings();
  const auto& M = fm.families();
  const auto& dix = fm.d_index();
  if (B.dom(f) != fm.shape(x)) throw Error(ErrorCode::ShapeMismatch, "base arrow does not start at p(X)");
  const ObjectId px = fm.shape(x);
  const ArrowId id = B.identity(px);

  auto sq = base.chosen_pullback(f, f);
  if (!sq) throw Error(ErrorCode::MissingDiagonal, "no pullback of " + B.arrow_name(f) + " along itself");
  ArrowId delta_base = kNoArrow;
  for (ArrowId e : B.hom(px, B.dom(sq->top))) {
    if (B.compose(sq->top, e) == id && B.compose(sq->left, e) == id) delta_base = e;
  }
  auto hx = dix.lifts_into(sq->top, x);
  if (delta_base == kNoArrow || hx.empty()) throw Error(ErrorCode::MissingDiagonal, "no diagonal for " + B.arrow_name(f));
  const ArrowId h = hx.front();
  ArrowId delta = kNoArrow;
  for (ArrowId e : D.hom(x, D.dom(h))) {
    if (fm.d(e) == delta_base && D.compose(h, e) == D.identity(x)) delta = e;
  }
  if (delta == kNoArrow) throw Error(ErrorCode::MissingDiagonal, "diagonal has no d-lift splitting h");

  std::size_t candidates = 0;
  Candidates found;
  for (ObjectId p : dix.objects_over(B.cod(f))) {
    auto lifts = dix.lifts_into(f, p);
    if (lifts.empty()) continue;
    const ArrowId fp = lifts.front();
    for (ArrowId u : M.hom(x, p)) {
      if (fm.p(u) != f) continue;
      ArrowId fu = kNoArrow;
      try {
        fu = special_lift(fm, u, *sq, h, fp);
      } catch (const Error&) {
        continue;
      }
      for (ArrowId pi : M.hom(D.dom(fp), x)) {
        if (fm.p(pi) != id) continue;
        ++candidates;
        if (!cs.is_special(SpecialTriangle{fp, M.comp(u, pi), M.identity(p)})) continue;
        if (!cs.is_special(SpecialTriangle{delta, M.identity(x), M.comp(pi, fu)})) continue;
        found.accept(fm, ProductCertificate{ProductKind::Algebraic, x, f, p, pi, u, 0, true, {}});
      }
    }
  }
  return found.finish({"candidates (P, pi, u): " + std::to_string(candidates), "diagonal: " + D.arrow_name(delta)});
}

std::optional<ProductCertificate> find_opcartesian(const FiberedMulticategory& fm, ObjectId x, ArrowId f, bool stable) {
  const auto& B = fm.base().category();
  const auto& M = fm.families();
  if (B.dom(f) != fm.shape(x)) throw Error(ErrorCode::ShapeMismatch, "base arrow does not start at p(X)");
  const auto squares = fm.special_squares();
  std::size_t checks = 0, reindexings = 0;
  Candidates found;
  for (ObjectId p : fm.d_index().objects_over(B.cod(f))) {
    for (ArrowId u : M.hom(x, p)) {
      if (fm.p(u) != f || !opcartesian(fm, u, checks)) continue;
      bool ok = true;
      if (stable) {
        for (std::size_t k : fm.squares_with_right(u)) {
          ++reindexings;
          if (!opcartesian(fm, squares[k].left, checks)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        found.accept(fm, ProductCertificate{stable ? ProductKind::StablyOpcartesian : ProductKind::Opcartesian, x, f, p,
                                            kNoArrow, u, 0, true, {}});
      }
    }
  }
  return found.finish({"factorization checks: " + std::to_string(checks),
                       "reindexings checked: " + std::to_string(reindexings)});
}

namespace {

template <class Fn>
void for_each_point(const FiberedMulticategory& fm, std::size_t bound, Fn&& fn) {
  const auto& base = fm.base();
  const auto& B = base.category();
  for (ObjectId x = 0; x < fm.object_count(); ++x) {
    for (ArrowId f : B.out_arrows(fm.shape(x))) {
      if (base.set_backed() && base.set(B.cod(f)).size() > bound) continue;
      fn(x, f);
    }
  }
}

}  // namespace

EquivalenceReport products_equivalence_report(const CartesianStructure& cs, std::size_t bound) {
  EquivalenceReport r;
  for_each_point(cs.host(), bound, [&](ObjectId x, ArrowId f) {
    EquivalenceRow row{x, f, std::nullopt, find_universal_product(cs.host(), x, f).has_value(),
                       find_opcartesian(cs.host(), x, f, true).has_value()};
    try {
      row.ap = find_algebraic_product(cs, x, f).has_value();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MissingDiagonal) throw;
    }
    r.rows.push_back(row);
    if ((row.ap && *row.ap != row.up) || row.up != row.sr) r.counterexamples.push_back(row);
  });
  return r;
}

std::vector<CoincidenceRow> sums_products_report(const CartesianStructure& cs, std::size_t bound) {
  std::vector<CoincidenceRow> rows;
  const auto& fm = cs.host();
  for_each_point(fm, bound, [&](ObjectId x, ArrowId f) {
    auto sum = find_opcartesian(fm, x, f, true);
    auto product = find_universal_product(fm, x, f);
    const bool same = sum && product && vertically_isomorphic(fm, sum->carrier, product->carrier);
    rows.push_back(CoincidenceRow{x, f, sum.has_value(), product.has_value(), same});
  });
  return rows;
}

FiberedHomMonoid fibered_hom_monoid(const CartesianStructure& cs, const FinFunctor& inclusion,
                                    const std::vector<ArrowId>& s, const std::vector<ArrowId>& t) {
  const auto& fm = cs.host();
  const auto& base = fm.base();
  const auto& B = base.category();
  const auto& M = fm.families();

  std::unordered_map<ArrowId, ArrowId> preimage;
  for (ArrowId h = 0; h < inclusion.on_arrows.size(); ++h) preimage.emplace(inclusion.on_arrows[h], h);
  auto check_section = [&](const std::vector<ArrowId>& sec, const char* name) {
    if (sec.size() != B.arrow_count()) throw Error(ErrorCode::NotASection, std::string(name) + " needs one arrow per base arrow");
    for (ArrowId f = 0; f < B.arrow_count(); ++f) {
      if (sec[f] >= M.arrow_count() || fm.p(sec[f]) != f) {
        throw Error(ErrorCode::NotASection, std::string(name) + " does not lie over " + B.arrow_name(f));
      }
      if (!preimage.contains(sec[f])) {
        throw Error(ErrorCode::NotASection, std::string(name) + " sends " + B.arrow_name(f) + " to a non-cartesian arrow");
      }
      if (B.is_identity(f) && !M.is_identity(sec[f])) {
        throw Error(ErrorCode::NotASection, std::string(name) + " does not preserve identities");
      }
    }
    B.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
      if (M.compose(sec[g], sec[f]) != sec[gf]) throw Error(ErrorCode::NotASection, std::string(name) + " is not functorial");
    });
  };
  check_section(s, "s");
  check_section(t, "t");
  auto at = [&](const std::vector<ArrowId>& sec, ObjectId i) { return M.dom(sec[B.identity(i)]); };

  auto d = std::make_shared<FinCategory>();
  auto m = std::make_shared<FinCategory>();
  std::vector<ObjectId> shapes;
  std::vector<ArrowId> carrier;
  std::map<std::pair<ObjectId, ArrowId>, ObjectId> object;
  for (ObjectId i = 0; i < B.object_count(); ++i) {
    for (ArrowId a : M.hom(at(s, i), at(t, i))) {
      if (fm.p(a) != B.identity(i)) continue;
      const std::string name = B.object_name(i) + ":" + M.arrow_name(a);
      object[{i, a}] = d->add_object(name);
      m->add_object(name);
      shapes.push_back(i);
      carrier.push_back(a);
    }
  }

  Violations violations;
  std::map<std::pair<ArrowId, ObjectId>, ArrowId> pull, push;  // (f, cod) ↦ D-arrow, (f, dom) ↦ M-arrow
  std::vector<ArrowId> d_shapes, m_shapes;
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const ObjectId i = B.dom(f), j = B.cod(f);
    const ArrowId sf = preimage.at(s[f]), tf = preimage.at(t[f]);
    const BaseSquare square{f, B.identity(i), f, B.identity(j)};
    for (ObjectId y = 0; y < carrier.size(); ++y) {
      if (shapes[y] == j) {
        const ArrowId a = special_lift(fm, carrier[y], square, sf, tf);
        const ObjectId x = object.at({i, a});
        pull[{f, y}] = d->add_arrow(B.arrow_name(f) + "*" + d->object_name(y), x, y);
        d_shapes.push_back(f);
      }
      if (shapes[y] == i) {
        const ArrowId b = coreindex(cs, M.comp(t[f], carrier[y]), sf, B.identity(j));
        const ObjectId z = object.at({j, b});
        push[{f, y}] = m->add_arrow(B.arrow_name(f) + "!" + m->object_name(y), y, z);
        m_shapes.push_back(f);
      }
    }
  }
  for (ObjectId y = 0; y < carrier.size(); ++y) {
    d->set_identity(y, pull.at({B.identity(shapes[y]), y}));
    m->set_identity(y, push.at({B.identity(shapes[y]), y}));
  }
  B.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    for (ObjectId y = 0; y < carrier.size(); ++y) {
      if (shapes[y] == B.cod(g)) {
        const ArrowId outer = pull.at({g, y});
        const ArrowId inner = pull.at({f, d->dom(outer)});
        const ArrowId whole = pull.at({gf, y});
        if (d->dom(whole) == d->dom(inner)) {
          d->set_compose(outer, inner, whole);
        } else {
          violations.push_back(Violation{ViolationKind::FunctorViolation, "contravariant transport is not functorial",
                                         {{"g", B.arrow_name(g)}, {"f", B.arrow_name(f)}, {"object", d->object_name(y)}}});
        }
      }
      if (shapes[y] == B.dom(f)) {
        const ArrowId inner = push.at({f, y});
        const ArrowId outer = push.at({g, m->cod(inner)});
        const ArrowId whole = push.at({gf, y});
        if (m->cod(whole) == m->cod(outer)) {
          m->set_compose(outer, inner, whole);
        } else {
          violations.push_back(Violation{ViolationKind::FunctorViolation, "covariant transport is not functorial",
                                         {{"g", B.arrow_name(g)}, {"f", B.arrow_name(f)}, {"object", m->object_name(y)}}});
        }
      }
    }
  });

  std::vector<SpecialSquare> squares;
  for (const auto& sq : base.pullbacks()) {
    for (ObjectId a = 0; a < carrier.size(); ++a) {
      if (shapes[a] != B.cod(sq.top)) continue;
      const ArrowId right = push.at({sq.right, a});
      const ArrowId top = pull.at({sq.top, a});
      const ArrowId bottom = pull.at({sq.bottom, m->cod(right)});
      const ArrowId left = push.at({sq.left, d->dom(top)});
      if (m->cod(left) == d->dom(bottom)) squares.push_back(SpecialSquare{top, bottom, right, left});
    }
  }

  auto monoid = std::make_shared<const FiberedMulticategory>(fm.base_ptr(), d, m, shapes, d_shapes, m_shapes,
                                                             std::move(squares));
  auto checked = verify_fibered_monoid(*monoid);
  violations.insert(violations.end(), checked.begin(), checked.end());
  return FiberedHomMonoid{std::move(monoid), std::move(carrier), std::move(violations)};
}

}  // namespace fibmult
