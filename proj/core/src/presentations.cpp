#include <algorithm>
#include <numeric>

#include "fibmult/error.hpp"
#include "fibmult/presentation.hpp"

namespace fibmult {

namespace {

constexpr std::size_t kMaxSingles = 1u << 20;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

Payload SymmetricPresentation::coreindex(const Payload&, std::span<const int>, int, std::span<const int>,
                                         std::span<const int>) const {
  throw Error(ErrorCode::BadParams, "presentation has no covariant reindexing");
}

// --- sequential -----------------------------------------------------------

SequentialPresentation::SequentialPresentation(std::shared_ptr<const FinCategory> c,
                                               std::optional<Enrichment> enrichment)
    : c_(std::move(c)), enrichment_(std::move(enrichment)) {
  for (ObjectId x = 0; x < c_->object_count(); ++x) objects_.push_back(c_->object_name(x));
  if (enrichment_ && enrichment_->zero.size() != c_->object_count() * c_->object_count()) {
    throw Error(ErrorCode::BadParams, "enrichment needs a zero in every hom");
  }
}

std::vector<Payload> SequentialPresentation::singles(std::span<const int> domain, int cod) const {
  std::vector<Payload> out{Payload{}};
  for (int x : domain) {
    auto hom = c_->hom(static_cast<ObjectId>(x), static_cast<ObjectId>(cod));
    std::vector<Payload> next;
    next.reserve(out.size() * hom.size());
    for (const auto& prefix : out) {
      for (ArrowId a : hom) {
        next.push_back(prefix);
        next.back().push_back(static_cast<std::int32_t>(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

Payload SequentialPresentation::compose(const Payload& outer, std::span<const int>, int,
                                        const std::vector<Payload>& inners, const std::vector<std::vector<int>>&,
                                        std::span<const int> fiber, std::span<const int> position) const {
  Payload out(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    out[i] = static_cast<std::int32_t>(
        c_->comp(static_cast<ArrowId>(outer[fiber[i]]), static_cast<ArrowId>(inners[fiber[i]][position[i]])));
  }
  return out;
}

Payload SequentialPresentation::permute(const Payload& s, std::span<const int>, int, std::span<const int> phi) const {
  Payload out(phi.size());
  for (std::size_t q = 0; q < phi.size(); ++q) out[q] = s[phi[q]];
  return out;
}

Payload SequentialPresentation::identity(int x) const {
  return Payload{static_cast<std::int32_t>(c_->identity(static_cast<ObjectId>(x)))};
}

std::string SequentialPresentation::render(const Payload& s, std::span<const int>, int) const {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += c_->arrow_name(static_cast<ArrowId>(s[i]));
  }
  return out;
}

ArrowId SequentialPresentation::zero(ObjectId x, ObjectId y) const {
  return enrichment_->zero[x * c_->object_count() + y];
}

ArrowId SequentialPresentation::add(ArrowId a, ArrowId b) const { return enrichment_->sum.at(pair_key(a, b)); }

Payload SequentialPresentation::coreindex(const Payload& s, std::span<const int>, int cod,
                                          std::span<const int> target, std::span<const int> f) const {
  if (!enrichment_) return SymmetricPresentation::coreindex(s, {}, cod, target, f);
  Payload out(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    out[k] = static_cast<std::int32_t>(zero(static_cast<ObjectId>(target[k]), static_cast<ObjectId>(cod)));
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[f[i]] = static_cast<std::int32_t>(add(static_cast<ArrowId>(out[f[i]]), static_cast<ArrowId>(s[i])));
  }
  return out;
}

// --- functions ------------------------------------------------------------

FunctionPresentation::FunctionPresentation(std::vector<std::string> names, std::vector<int> sizes)
    : names_(std::move(names)), sizes_(std::move(sizes)) {
  if (names_.size() != sizes_.size()) throw Error(ErrorCode::BadParams, "one size per set");
  for (int n : sizes_)
    if (n < 0) throw Error(ErrorCode::BadParams, "negative set size");
}

std::size_t FunctionPresentation::table_size(std::span<const int> domain) const {
  std::size_t rows = 1;
  for (int x : domain) rows *= static_cast<std::size_t>(sizes_[x]);
  return rows;
}

std::size_t FunctionPresentation::row(std::span<const int> domain, std::span<const int> args) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < domain.size(); ++i) r = r * static_cast<std::size_t>(sizes_[domain[i]]) + args[i];
  return r;
}

std::vector<Payload> FunctionPresentation::singles(std::span<const int> domain, int cod) const {
  const std::size_t rows = table_size(domain);
  const auto n = static_cast<std::size_t>(sizes_[cod]);
  std::size_t count = 1;
  for (std::size_t r = 0; r < rows; ++r) {
    count *= n;
    if (count > kMaxSingles) throw Error(ErrorCode::BoundTooSmall, "too many functions into " + names_[cod]);
  }
  std::vector<Payload> out;
  if (count == 0) return out;
  Payload table(rows, 0);
  out.reserve(count);
  while (true) {
    out.push_back(table);
    std::size_t r = rows;
    while (r > 0) {
      --r;
      if (static_cast<std::size_t>(++table[r]) < n) break;
      table[r] = 0;
      if (r == 0) return out;
    }
    if (rows == 0) return out;
  }
}

Payload FunctionPresentation::compose(const Payload& outer, std::span<const int> outer_domain, int,
                                      const std::vector<Payload>& inners,
                                      const std::vector<std::vector<int>>& inner_domains, std::span<const int> fiber,
                                      std::span<const int> position) const {
  std::vector<int> domain(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) domain[i] = inner_domains[fiber[i]][position[i]];
  const std::size_t rows = table_size(domain);
  Payload out(rows);
  std::vector<int> args(domain.size(), 0);
  std::vector<std::vector<int>> inner_args(inners.size());
  for (std::size_t j = 0; j < inners.size(); ++j) inner_args[j].assign(inner_domains[j].size(), 0);
  std::vector<int> values(inners.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < domain.size(); ++i) inner_args[fiber[i]][position[i]] = args[i];
    for (std::size_t j = 0; j < inners.size(); ++j) values[j] = inners[j][row(inner_domains[j], inner_args[j])];
    out[r] = outer[row(outer_domain, values)];
    for (std::size_t i = domain.size(); i > 0; --i) {
      if (++args[i - 1] < sizes_[domain[i - 1]]) break;
      args[i - 1] = 0;
    }
  }
  return out;
}

Payload FunctionPresentation::permute(const Payload& s, std::span<const int> domain, int,
                                      std::span<const int> phi) const {
  std::vector<int> new_domain(phi.size());
  for (std::size_t q = 0; q < phi.size(); ++q) new_domain[q] = domain[phi[q]];
  const std::size_t rows = table_size(new_domain);
  Payload out(rows);
  std::vector<int> args(phi.size(), 0), old_args(phi.size(), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t q = 0; q < phi.size(); ++q) old_args[phi[q]] = args[q];
    out[r] = s[row(domain, old_args)];
    for (std::size_t q = phi.size(); q > 0; --q) {
      if (++args[q - 1] < sizes_[new_domain[q - 1]]) break;
      args[q - 1] = 0;
    }
  }
  return out;
}

Payload FunctionPresentation::identity(int x) const {
  Payload out(static_cast<std::size_t>(sizes_[x]));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::string FunctionPresentation::render(const Payload& s, std::span<const int>, int) const {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

Payload FunctionPresentation::coreindex(const Payload& s, std::span<const int> domain, int,
                                        std::span<const int> target, std::span<const int> f) const {
  const std::size_t rows = table_size(target);
  Payload out(rows);
  std::vector<int> args(target.size(), 0), old_args(f.size(), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < f.size(); ++i) old_args[i] = args[f[i]];
    out[r] = s[row(domain, old_args)];
    for (std::size_t k = target.size(); k > 0; --k) {
      if (++args[k - 1] < sizes_[target[k - 1]]) break;
      args[k - 1] = 0;
    }
  }
  return out;
}

// --- affine maps over Z/2 -------------------------------------------------

AffinePresentation::AffinePresentation() = default;

std::vector<Payload> AffinePresentation::singles(std::span<const int> domain, int) const {
  const std::size_t n = domain.size() + 1;
  std::vector<Payload> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Payload p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = static_cast<std::int32_t>((mask >> (n - 1 - k)) & 1u);
    out.push_back(std::move(p));
  }
  return out;
}

Payload AffinePresentation::compose(const Payload& outer, std::span<const int>, int,
                                    const std::vector<Payload>& inners, const std::vector<std::vector<int>>&,
                                    std::span<const int> fiber, std::span<const int> position) const {
  Payload out(fiber.size() + 1);
  int c0 = outer[0];
  for (std::size_t j = 0; j < inners.size(); ++j) c0 ^= outer[1 + j] & inners[j][0];
  out[0] = c0;
  for (std::size_t i = 0; i < fiber.size(); ++i) out[1 + i] = outer[1 + fiber[i]] & inners[fiber[i]][1 + position[i]];
  return out;
}

Payload AffinePresentation::permute(const Payload& s, std::span<const int>, int, std::span<const int> phi) const {
  Payload out(phi.size() + 1);
  out[0] = s[0];
  for (std::size_t q = 0; q < phi.size(); ++q) out[1 + q] = s[1 + phi[q]];
  return out;
}

Payload AffinePresentation::identity(int) const { return Payload{0, 1}; }

std::string AffinePresentation::render(const Payload& s, std::span<const int>, int) const {
  std::string out = s[0] ? "1" : "";
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!s[i]) continue;
    if (!out.empty()) out += '+';
    out += "x" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Payload AffinePresentation::coreindex(const Payload& s, std::span<const int>, int, std::span<const int> target,
                                      std::span<const int> f) const {
  Payload out(target.size() + 1, 0);
  out[0] = s[0];
  for (std::size_t i = 0; i < f.size(); ++i) out[1 + f[i]] ^= s[1 + i];
  return out;
}

// --- laws -----------------------------------------------------------------

void check_presentation_laws(const SymmetricPresentation& pres, std::size_t bound) {
  const int n_objects = static_cast<int>(pres.objects().size());
  const std::size_t max_arity = std::min<std::size_t>(bound, 3);
  std::vector<std::vector<int>> domains{{}};
  for (std::size_t arity = 1; arity <= max_arity; ++arity) {
    std::vector<std::vector<int>> next;
    for (const auto& d : domains) {
      if (d.size() != arity - 1) continue;
      for (int x = 0; x < n_objects; ++x) {
        next.push_back(d);
        next.back().push_back(x);
      }
    }
    domains.insert(domains.end(), next.begin(), next.end());
  }
  auto fail = [&](const std::string& law, const Payload& s, std::span<const int> domain, int cod) {
    throw Error(ErrorCode::LawViolation, law + " fails for " + pres.render(s, domain, cod));
  };
  for (const auto& domain : domains) {
    const std::size_t n = domain.size();
    std::vector<int> identity_perm(n), shift(n), all_zero(n, 0), positions(n), singletons(n, 0);
    std::iota(identity_perm.begin(), identity_perm.end(), 0);
    std::iota(positions.begin(), positions.end(), 0);
    for (std::size_t q = 0; q < n; ++q) shift[q] = static_cast<int>((q + 1) % n);
    for (int cod = 0; cod < n_objects; ++cod) {
      for (const auto& s : pres.singles(domain, cod)) {
        if (pres.compose(pres.identity(cod), std::vector<int>{cod}, cod, {s}, {domain}, all_zero, positions) != s) {
          fail("left unit law", s, domain, cod);
        }
        std::vector<Payload> ids;
        std::vector<std::vector<int>> id_domains;
        for (int x : domain) {
          ids.push_back(pres.identity(x));
          id_domains.push_back({x});
        }
        if (pres.compose(s, domain, cod, ids, id_domains, identity_perm, singletons) != s) {
          fail("right unit law", s, domain, cod);
        }
        if (pres.permute(s, domain, cod, identity_perm) != s) fail("identity permutation", s, domain, cod);
        if (n > 1) {
          Payload t = s;
          std::vector<int> d(domain.begin(), domain.end());
          for (std::size_t k = 0; k < n; ++k) {
            t = pres.permute(t, d, cod, shift);
            std::vector<int> nd(n);
            for (std::size_t q = 0; q < n; ++q) nd[q] = d[shift[q]];
            d = nd;
          }
          if (t != s) fail("permutation action", s, domain, cod);
        }
        if (pres.cartesian() && pres.coreindex(s, domain, cod, domain, identity_perm) != s) {
          fail("covariant identity", s, domain, cod);
        }
      }
    }
  }
}

// --- concrete categories --------------------------------------------------

std::shared_ptr<SequentialPresentation> ring_presentation(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "ring order must be positive");
  auto c = std::make_shared<FinCategory>();
  const ObjectId star = c->add_object("*");
  for (int k = 0; k < n; ++k) c->add_arrow(std::to_string(k), star, star);
  c->set_identity(star, static_cast<ArrowId>(1 % n));
  Enrichment e;
  e.zero = {0};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      c->set_compose(static_cast<ArrowId>(a), static_cast<ArrowId>(b), static_cast<ArrowId>((a * b) % n));
      e.sum.emplace(pair_key(a, b), static_cast<ArrowId>((a + b) % n));
    }
  }
  return std::make_shared<SequentialPresentation>(std::move(c), std::move(e));
}

std::shared_ptr<SequentialPresentation> matrix_presentation(int max_dim) {
  if (max_dim < 0 || max_dim > 3) throw Error(ErrorCode::BadParams, "matrix dimensions must lie in 0..3");
  auto c = std::make_shared<FinCategory>();
  const int dims = max_dim + 1;
  for (int m = 0; m < dims; ++m) c->add_object(std::to_string(m));
  // Arrow m → n is an n×m matrix, rows packed most significant first.
  std::vector<std::vector<ArrowId>> ids(dims * dims);
  auto bits_name = [](int m, int n, unsigned mask) {
    std::string s = "M" + std::to_string(m) + std::to_string(n) + "(";
    for (int k = n * m - 1; k >= 0; --k) s += ((mask >> k) & 1u) ? '1' : '0';
    return s + ")";
  };
  for (int m = 0; m < dims; ++m) {
    for (int n = 0; n < dims; ++n) {
      for (unsigned mask = 0; mask < (1u << (n * m)); ++mask) {
        ids[m * dims + n].push_back(c->add_arrow(bits_name(m, n, mask), m, n));
      }
    }
  }
  auto entry = [](unsigned mask, int cols, int r, int col, int rows) {
    return (mask >> ((rows - 1 - r) * cols + (cols - 1 - col))) & 1u;
  };
  Enrichment e;
  e.zero.resize(dims * dims);
  for (int m = 0; m < dims; ++m) {
    unsigned id_mask = 0;
    for (int r = 0; r < m; ++r) id_mask |= 1u << ((m - 1 - r) * m + (m - 1 - r));
    c->set_identity(m, ids[m * dims + m][id_mask]);
    for (int n = 0; n < dims; ++n) {
      const auto& hom = ids[m * dims + n];
      e.zero[m * dims + n] = hom[0];
      for (unsigned a = 0; a < hom.size(); ++a)
        for (unsigned b = 0; b < hom.size(); ++b) e.sum.emplace(pair_key(hom[a], hom[b]), hom[a ^ b]);
      for (int k = 0; k < dims; ++k) {
        // f: m → n (n×m), g: n → k (k×n), g∘f: k×m.
        const auto& ghom = ids[n * dims + k];
        for (unsigned f = 0; f < hom.size(); ++f) {
          for (unsigned g = 0; g < ghom.size(); ++g) {
            unsigned prod = 0;
            for (int r = 0; r < k; ++r) {
              for (int col = 0; col < m; ++col) {
                unsigned v = 0;
                for (int t = 0; t < n; ++t) v ^= entry(g, n, r, t, k) & entry(f, m, t, col, n);
                if (v) prod |= 1u << ((k - 1 - r) * m + (m - 1 - col));
              }
            }
            c->set_compose(ghom[g], hom[f], ids[m * dims + k][prod]);
          }
        }
      }
    }
  }
  return std::make_shared<SequentialPresentation>(std::move(c), std::move(e));
}

}  // namespace fibmult
