#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fibmult/fincat.hpp"

namespace fibmult {

/// Data of one single arrow (x_1, ..., x_n) → y; meaning is up to the
/// presentation.
using Payload = std::vector<std::int32_t>;

/// A classical symmetric multicategory given by rules. Domains are
/// sequences of object indices; inputs are numbered by position.
class SymmetricPresentation {
 public:
  virtual ~SymmetricPresentation() = default;

  virtual const std::vector<std::string>& objects() const = 0;
  /// All single arrows domain → cod, in a fixed order.
  virtual std::vector<Payload> singles(std::span<const int> domain, int cod) const = 0;
  /// Substitution: input i of the composite is input `position[i]` of
  /// inners[fiber[i]], where inners[j] has domain inner_domains[j].
  virtual Payload compose(const Payload& outer, std::span<const int> outer_domain, int cod,
                          const std::vector<Payload>& inners, const std::vector<std::vector<int>>& inner_domains,
                          std::span<const int> fiber, std::span<const int> position) const = 0;
  /// Input q of the result is input phi[q] of s (phi a bijection).
  virtual Payload permute(const Payload& s, std::span<const int> domain, int cod, std::span<const int> phi) const = 0;
  virtual Payload identity(int x) const = 0;
  virtual std::string render(const Payload& s, std::span<const int> domain, int cod) const = 0;

  /// Presentations of cartesian multicategories also move inputs
  /// covariantly: input i of s becomes input f[i] of the result, whose
  /// domain is target (domain[i] = target[f[i]]).
  virtual bool cartesian() const { return false; }
  virtual Payload coreindex(const Payload& s, std::span<const int> domain, int cod, std::span<const int> target,
                            std::span<const int> f) const;
};

/// Commutative-monoid enrichment of the homs of a finite category.
struct Enrichment {
  std::vector<ArrowId> zero;                        // hom (x, y) at x * object_count + y
  std::unordered_map<std::uint64_t, ArrowId> sum;  // (a << 32 | b) for parallel a, b
};

/// C▶: single arrows (x_i) → y are families of arrows x_i → y of C.
class SequentialPresentation final : public SymmetricPresentation {
 public:
  explicit SequentialPresentation(std::shared_ptr<const FinCategory> c,
                                  std::optional<Enrichment> enrichment = std::nullopt);

  const FinCategory& category() const noexcept { return *c_; }
  std::shared_ptr<const FinCategory> category_ptr() const noexcept { return c_; }
  const std::vector<std::string>& objects() const override { return objects_; }
  std::vector<Payload> singles(std::span<const int> domain, int cod) const override;
  Payload compose(const Payload& outer, std::span<const int> outer_domain, int cod, const std::vector<Payload>& inners,
                  const std::vector<std::vector<int>>& inner_domains, std::span<const int> fiber,
                  std::span<const int> position) const override;
  Payload permute(const Payload& s, std::span<const int> domain, int cod, std::span<const int> phi) const override;
  Payload identity(int x) const override;
  std::string render(const Payload& s, std::span<const int> domain, int cod) const override;
  bool cartesian() const override { return enrichment_.has_value(); }
  Payload coreindex(const Payload& s, std::span<const int> domain, int cod, std::span<const int> target,
                    std::span<const int> f) const override;

  ArrowId zero(ObjectId x, ObjectId y) const;
  ArrowId add(ArrowId a, ArrowId b) const;

 private:
  std::shared_ptr<const FinCategory> c_;
  std::optional<Enrichment> enrichment_;
  std::vector<std::string> objects_;
};

/// A finite product category of finite sets: single arrows are functions
/// ∏ x_i → y, stored as tables in mixed radix with input 0 most significant.
class FunctionPresentation final : public SymmetricPresentation {
 public:
  FunctionPresentation(std::vector<std::string> names, std::vector<int> sizes);

  const std::vector<std::string>& objects() const override { return names_; }
  int size(int x) const { return sizes_[x]; }
  std::vector<Payload> singles(std::span<const int> domain, int cod) const override;
  Payload compose(const Payload& outer, std::span<const int> outer_domain, int cod, const std::vector<Payload>& inners,
                  const std::vector<std::vector<int>>& inner_domains, std::span<const int> fiber,
                  std::span<const int> position) const override;
  Payload permute(const Payload& s, std::span<const int> domain, int cod, std::span<const int> phi) const override;
  Payload identity(int x) const override;
  std::string render(const Payload& s, std::span<const int> domain, int cod) const override;
  bool cartesian() const override { return true; }
  Payload coreindex(const Payload& s, std::span<const int> domain, int cod, std::span<const int> target,
                    std::span<const int> f) const override;

  std::size_t table_size(std::span<const int> domain) const;
  /// Row of the table for the given argument tuple.
  std::size_t row(std::span<const int> domain, std::span<const int> args) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> sizes_;
};

/// Affine maps over Z/2 on one object: c0 + Σ c_i x_i, payload (c0, c1, ..., cn).
class AffinePresentation final : public SymmetricPresentation {
 public:
  AffinePresentation();

  const std::vector<std::string>& objects() const override { return names_; }
  std::vector<Payload> singles(std::span<const int> domain, int cod) const override;
  Payload compose(const Payload& outer, std::span<const int> outer_domain, int cod, const std::vector<Payload>& inners,
                  const std::vector<std::vector<int>>& inner_domains, std::span<const int> fiber,
                  std::span<const int> position) const override;
  Payload permute(const Payload& s, std::span<const int> domain, int cod, std::span<const int> phi) const override;
  Payload identity(int x) const override;
  std::string render(const Payload& s, std::span<const int> domain, int cod) const override;
  bool cartesian() const override { return true; }
  Payload coreindex(const Payload& s, std::span<const int> domain, int cod, std::span<const int> target,
                    std::span<const int> f) const override;

 private:
  std::vector<std::string> names_{"x"};
};

/// Identity and permutation laws on every single arrow of arity ≤ bound.
/// Throws LawViolation.
void check_presentation_laws(const SymmetricPresentation& pres, std::size_t bound);

/// One-object category of the ring Z/n under multiplication, with addition.
std::shared_ptr<SequentialPresentation> ring_presentation(int n);
/// Category of matrices over Z/2 between the dimensions 0..max_dim.
std::shared_ptr<SequentialPresentation> matrix_presentation(int max_dim);

}  // namespace fibmult
