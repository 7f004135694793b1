#include "fibmult/standard.hpp"

#include <algorithm>
#include <ranges>

#include "fibmult/error.hpp"

namespace fibmult {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

// Elements of the domain of f grouped by image, each group ascending.
std::vector<std::vector<int>> fibers(const FinMap& f) {
  std::vector<std::vector<int>> out(f.cod.size());
  for (std::size_t i = 0; i < f.dom.size(); ++i) out[f(i)].push_back(static_cast<int>(i));
  return out;
}

int position_in(const std::vector<int>& list, int v) {
  return static_cast<int>(std::find(list.begin(), list.end(), v) - list.begin());
}

}  // namespace

std::optional<ObjectId> StandardMulticategory::object_of(ObjectId index_set, const std::vector<int>& family) const {
  auto it = object_index_.find({index_set, family});
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

ArrowId StandardMulticategory::reindexing(ArrowId f, ObjectId y) const {
  auto it = reindexing_.find(pair_key(f, y));
  if (it == reindexing_.end()) throw Error(ErrorCode::NoLift, "no reindexing into " + fm_->object_name(y));
  return it->second;
}

const StandardMulticategory::HomBlock* StandardMulticategory::block(ObjectId x, ObjectId y, ArrowId f) const {
  auto it = blocks_.find({x, y, f});
  return it == blocks_.end() ? nullptr : &it->second;
}

std::optional<ArrowId> StandardMulticategory::arrow_of(ObjectId x, ObjectId y, ArrowId f,
                                                       const std::vector<Payload>& components) const {
  const HomBlock* b = block(x, y, f);
  if (!b || components.size() != b->singles.size()) return std::nullopt;
  std::size_t index = 0;
  for (std::size_t j = 0; j < components.size(); ++j) {
    auto it = b->index[j].find(components[j]);
    if (it == b->index[j].end()) return std::nullopt;
    index = index * b->singles[j].size() + it->second;
  }
  return static_cast<ArrowId>(b->first + index);
}

std::vector<int> StandardMulticategory::component_domain(ObjectId x, ArrowId f, std::size_t j) const {
  const FinMap& m = base().map(f);
  std::vector<int> out;
  for (std::size_t i = 0; i < m.dom.size(); ++i) {
    if (m(i) == j) out.push_back(families_[x][i]);
  }
  return out;
}

std::shared_ptr<const StandardMulticategory> build_standard(std::shared_ptr<const SymmetricPresentation> pres,
                                                             std::size_t bound) {
  return build_standard(std::move(pres), BaseCategory::finset(bound));
}

std::shared_ptr<const StandardMulticategory> build_standard(std::shared_ptr<const SymmetricPresentation> pres,
                                                             std::shared_ptr<const BaseCategory> base,
                                                             const StandardOptions& options) {
  if (!base->set_backed()) throw Error(ErrorCode::BadParams, "standard multicategories need a set-backed base");
  std::shared_ptr<StandardMulticategory> s(new StandardMulticategory());
  s->pres_ = pres;
  s->base_ = base;
  const auto& B = base->category();
  const auto& names = pres->objects();
  const int m0 = static_cast<int>(names.size());
  const bool plain = m0 == 1;

  // Objects.
  std::map<std::pair<ObjectId, std::vector<int>>, bool> found;
  if (options.seeds) {
    std::vector<std::pair<ObjectId, std::vector<int>>> work;
    for (const auto& seed : *options.seeds) {
      if (seed.first >= B.object_count() || seed.second.size() != base->set(seed.first).size()) {
        throw Error(ErrorCode::BadParams, "seed family does not match its index set");
      }
      for (int v : seed.second)
        if (v < 0 || v >= m0) throw Error(ErrorCode::BadParams, "seed family leaves the objects");
      if (found.emplace(seed, true).second) work.push_back(seed);
    }
    while (!work.empty()) {
      auto [i, fam] = work.back();
      work.pop_back();
      for (ArrowId f : B.in_arrows(i)) {
        const FinMap& m = base->map(f);
        std::vector<int> pulled(m.dom.size());
        for (std::size_t k = 0; k < pulled.size(); ++k) pulled[k] = fam[m(k)];
        std::pair<ObjectId, std::vector<int>> key{B.dom(f), std::move(pulled)};
        if (found.emplace(key, true).second) work.push_back(std::move(key));
      }
    }
  } else {
    for (ObjectId i = 0; i < B.object_count(); ++i) {
      const std::size_t n = base->set(i).size();
      std::vector<int> fam(n, 0);
      if (m0 == 0 && n > 0) continue;
      while (true) {
        found.emplace(std::make_pair(i, fam), true);
        std::size_t k = n;
        while (k > 0 && ++fam[k - 1] == m0) fam[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  auto D = std::make_shared<FinCategory>();
  auto M = std::make_shared<FinCategory>();
  std::vector<ObjectId> shapes;
  std::vector<std::vector<ObjectId>> over(B.object_count());
  for (const auto& [key, unused] : found) {
    std::string name = key.first < B.object_count() ? B.object_name(key.first) : "";
    if (!plain) {
      name += "(";
      for (std::size_t k = 0; k < key.second.size(); ++k) name += (k ? "," : "") + names[key.second[k]];
      name += ")";
    }
    const ObjectId x = D->add_object(name);
    M->add_object(name);
    shapes.push_back(key.first);
    s->families_.push_back(key.second);
    s->object_index_.emplace(key, x);
    over[key.first].push_back(x);
  }

  // D: the discrete family fibration.
  std::vector<ArrowId> d_shapes;
  for (ArrowId f = 0; f < B.arrow_count(); ++f) {
    const FinMap& m = base->map(f);
    for (ObjectId y : over[B.cod(f)]) {
      std::vector<int> pulled(m.dom.size());
      for (std::size_t k = 0; k < pulled.size(); ++k) pulled[k] = s->families_[y][m(k)];
      auto x = s->object_of(B.dom(f), pulled);
      if (!x) throw Error(ErrorCode::BoundTooSmall, "reindexing leaves the object closure");
      std::string name = "d" + B.arrow_name(f);
      if (!plain) name += "<" + D->object_name(y) + ">";
      const ArrowId h = D->add_arrow(std::move(name), *x, y);
      d_shapes.push_back(f);
      s->reindexing_.emplace(pair_key(f, y), h);
      if (B.is_identity(f)) D->set_identity(y, h);
    }
  }
  B.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) {
    for (ObjectId z : over[B.cod(g)]) {
      const ArrowId hg = s->reindexing(g, z);
      const ArrowId hf = s->reindexing(f, D->dom(hg));
      D->set_compose(hg, hf, s->reindexing(gf, z));
    }
  });

  // M: one block per (X, Y, f), arrows in mixed radix over codomain elements.
  std::vector<ArrowId> p_shapes;
  for (ObjectId x = 0; x < shapes.size(); ++x) {
    for (ObjectId y = 0; y < shapes.size(); ++y) {
      for (ArrowId f : B.hom(shapes[x], shapes[y])) {
        StandardMulticategory::HomBlock block;
        const std::size_t nj = base->set(shapes[y]).size();
        block.count = 1;
        for (std::size_t j = 0; j < nj; ++j) {
          auto dom = s->component_domain(x, f, j);
          block.singles.push_back(pres->singles(dom, s->families_[y][j]));
          block.index.emplace_back();
          for (std::size_t k = 0; k < block.singles.back().size(); ++k) block.index.back().emplace(block.singles.back()[k], k);
          block.count *= block.singles.back().size();
        }
        block.first = static_cast<ArrowId>(M->arrow_count());
        std::vector<std::vector<int>> domains;
        for (std::size_t j = 0; j < nj; ++j) domains.push_back(s->component_domain(x, f, j));
        std::vector<std::size_t> digit(nj, 0);
        for (std::size_t n = 0; n < block.count; ++n) {
          std::vector<Payload> comps(nj);
          std::string name = B.arrow_name(f) + "{";
          for (std::size_t j = 0; j < nj; ++j) {
            comps[j] = block.singles[j][digit[j]];
            if (j) name += ';';
            name += pres->render(comps[j], domains[j], s->families_[y][j]);
          }
          name += "}";
          if (!plain) name += "<" + M->object_name(x) + ";" + M->object_name(y) + ">";
          M->add_arrow(std::move(name), x, y);
          p_shapes.push_back(f);
          s->components_.push_back(std::move(comps));
          for (std::size_t j = nj; j > 0; --j) {
            if (++digit[j - 1] < block.singles[j - 1].size()) break;
            digit[j - 1] = 0;
          }
        }
        s->blocks_.emplace(std::make_tuple(x, y, f), std::move(block));
      }
    }
  }
  for (ObjectId x = 0; x < shapes.size(); ++x) {
    const ArrowId id = B.identity(shapes[x]);
    std::vector<Payload> comps;
    for (int v : s->families_[x]) comps.push_back(pres->identity(v));
    auto a = s->arrow_of(x, x, id, comps);
    if (!a) throw Error(ErrorCode::LawViolation, "identity of " + M->object_name(x) + " is not a single arrow");
    M->set_identity(x, *a);
  }

  // Composition c∘a for a over f: I → J and c over g: J → K. Component k
  // of c∘a depends on c_k and the a_j with g(j) = k only, so each block pair
  // tabulates those single composites once.
  auto digits = [](const StandardMulticategory::HomBlock& b, std::size_t n) {
    std::vector<std::size_t> d(b.singles.size());
    for (std::size_t j = b.singles.size(); j > 0; --j) {
      d[j - 1] = n % b.singles[j - 1].size();
      n /= b.singles[j - 1].size();
    }
    return d;
  };
  for (const auto& [key_a, block_a] : s->blocks_) {
    if (block_a.count == 0) continue;
    const auto [x, y, f] = key_a;
    const FinMap& fm_f = base->map(f);
    const auto f_fibers = fibers(fm_f);
    std::vector<std::vector<int>> a_domains;
    for (std::size_t j = 0; j < f_fibers.size(); ++j) a_domains.push_back(s->component_domain(x, f, j));
    std::vector<std::vector<std::size_t>> a_digits(block_a.count);
    for (std::size_t n = 0; n < block_a.count; ++n) a_digits[n] = digits(block_a, n);
    for (ObjectId z = 0; z < shapes.size(); ++z) {
      for (ArrowId g : B.hom(shapes[y], shapes[z])) {
        const auto* block_c = s->block(y, z, g);
        if (!block_c || block_c->count == 0) continue;
        const ArrowId gf = B.comp(g, f);
        const auto* block_r = s->block(x, z, gf);
        const auto g_fibers = fibers(base->map(g));
        const auto gf_fibers = fibers(base->map(gf));
        const std::size_t nk = g_fibers.size();
        std::vector<std::vector<int>> c_domains;
        for (std::size_t k = 0; k < nk; ++k) c_domains.push_back(s->component_domain(y, g, k));
        std::vector<std::vector<std::size_t>> table(nk);
        std::vector<std::size_t> a_span(nk);
        for (std::size_t k = 0; k < nk; ++k) {
          std::vector<int> slot, pos;
          for (int i : gf_fibers[k]) {
            const int j = static_cast<int>(fm_f(i));
            slot.push_back(position_in(g_fibers[k], j));
            pos.push_back(position_in(f_fibers[j], i));
          }
          a_span[k] = 1;
          for (int j : g_fibers[k]) a_span[k] *= block_a.singles[j].size();
          const auto& c_singles = block_c->singles[k];
          table[k].resize(c_singles.size() * a_span[k]);
          std::vector<Payload> inners(g_fibers[k].size());
          std::vector<std::vector<int>> inner_domains;
          for (int j : g_fibers[k]) inner_domains.push_back(a_domains[j]);
          for (std::size_t ia = 0; ia < a_span[k]; ++ia) {
            std::size_t rest = ia;
            for (std::size_t q = g_fibers[k].size(); q > 0; --q) {
              const int j = g_fibers[k][q - 1];
              inners[q - 1] = block_a.singles[j][rest % block_a.singles[j].size()];
              rest /= block_a.singles[j].size();
            }
            for (std::size_t ic = 0; ic < c_singles.size(); ++ic) {
              Payload r = pres->compose(c_singles[ic], c_domains[k], s->families_[z][k], inners, inner_domains, slot, pos);
              auto it = block_r->index[k].find(r);
              if (it == block_r->index[k].end()) throw Error(ErrorCode::LawViolation, "composite leaves the single arrows");
              table[k][ic * a_span[k] + ia] = it->second;
            }
          }
        }
        // Position of each a within table k, and each c's digits.
        std::vector<std::vector<std::size_t>> a_key(block_a.count, std::vector<std::size_t>(nk));
        for (std::size_t n = 0; n < block_a.count; ++n) {
          for (std::size_t k = 0; k < nk; ++k) {
            std::size_t key = 0;
            for (int j : g_fibers[k]) key = key * block_a.singles[j].size() + a_digits[n][j];
            a_key[n][k] = key;
          }
        }
        for (std::size_t ic = 0; ic < block_c->count; ++ic) {
          const auto cd = digits(*block_c, ic);
          const ArrowId c = static_cast<ArrowId>(block_c->first + ic);
          for (std::size_t ia = 0; ia < block_a.count; ++ia) {
            std::size_t index = 0;
            for (std::size_t k = 0; k < nk; ++k) {
              index = index * block_r->singles[k].size() + table[k][cd[k] * a_span[k] + a_key[ia][k]];
            }
            M->set_compose(c, static_cast<ArrowId>(block_a.first + ia), static_cast<ArrowId>(block_r->first + index));
          }
        }
      }
    }
  }

  // Special squares: component l of b is component bottom(l) of a, with
  // inputs matched through the bijection the pullback induces on fibers.
  std::vector<SpecialSquare> squares;
  for (const auto& sq : base->pullbacks()) {
    const FinMap& top = base->map(sq.top);
    const FinMap& bottom = base->map(sq.bottom);
    const auto left_fibers = fibers(base->map(sq.left));
    const auto right_fibers = fibers(base->map(sq.right));
    std::vector<std::vector<int>> phi(left_fibers.size());
    for (std::size_t l = 0; l < left_fibers.size(); ++l) {
      for (int k : left_fibers[l]) phi[l].push_back(position_in(right_fibers[bottom(l)], static_cast<int>(top(k))));
    }
    for (ObjectId y : over[B.cod(sq.right)]) {
      const ArrowId h2 = s->reindexing(sq.bottom, y);
      const ObjectId v = D->dom(h2);
      for (ObjectId x : over[B.dom(sq.right)]) {
        const auto* block_a = s->block(x, y, sq.right);
        if (!block_a) continue;
        const ArrowId h1 = s->reindexing(sq.top, x);
        const ObjectId u = D->dom(h1);
        std::vector<std::vector<int>> a_domains;
        for (std::size_t j = 0; j < right_fibers.size(); ++j) a_domains.push_back(s->component_domain(x, sq.right, j));
        for (std::size_t ia = 0; ia < block_a->count; ++ia) {
          const ArrowId a = static_cast<ArrowId>(block_a->first + ia);
          std::vector<Payload> comps(left_fibers.size());
          for (std::size_t l = 0; l < left_fibers.size(); ++l) {
            const std::size_t j = bottom(l);
            comps[l] = pres->permute(s->components_[a][j], a_domains[j], s->families_[y][j], phi[l]);
          }
          auto b = s->arrow_of(u, v, sq.left, comps);
          if (!b) throw Error(ErrorCode::LawViolation, "reindexed family leaves the single arrows");
          squares.push_back(SpecialSquare{h1, h2, a, *b});
        }
      }
    }
  }

  // Special triangles from covariant reindexing.
  if (options.triangles && pres->cartesian()) {
    for (const auto& [key_a, block_a] : s->blocks_) {
      const auto [x, z, g] = key_a;
      if (block_a.count == 0) continue;
      const auto g_fibers = fibers(base->map(g));
      for (ArrowId phi : B.out_arrows(shapes[x])) {
        const FinMap& fphi = base->map(phi);
        for (ArrowId h : B.hom(B.cod(phi), shapes[z])) {
          if (B.comp(h, phi) != g) continue;
          const auto h_fibers = fibers(base->map(h));
          for (ObjectId y : over[B.cod(phi)]) {
            const ArrowId top = s->reindexing(phi, y);
            if (D->dom(top) != x) continue;
            std::vector<std::vector<int>> a_domains, targets, maps;
            for (std::size_t k = 0; k < g_fibers.size(); ++k) {
              a_domains.push_back(s->component_domain(x, g, k));
              targets.push_back(s->component_domain(y, h, k));
              maps.emplace_back();
              for (int i : g_fibers[k]) maps.back().push_back(position_in(h_fibers[k], static_cast<int>(fphi(i))));
            }
            for (std::size_t ia = 0; ia < block_a.count; ++ia) {
              const ArrowId a = static_cast<ArrowId>(block_a.first + ia);
              std::vector<Payload> comps(g_fibers.size());
              for (std::size_t k = 0; k < g_fibers.size(); ++k) {
                comps[k] = pres->coreindex(s->components_[a][k], a_domains[k], s->families_[z][k], targets[k], maps[k]);
              }
              auto b = s->arrow_of(y, z, h, comps);
              if (!b) throw Error(ErrorCode::LawViolation, "covariant reindexing leaves the single arrows");
              s->triangles_.push_back(SpecialTriangle{top, a, *b});
            }
          }
        }
      }
    }
  }

  s->fm_ = std::make_shared<FiberedMulticategory>(base, D, M, shapes, std::move(d_shapes), std::move(p_shapes),
                                                  std::move(squares));
  return s;
}

}  // namespace fibmult
