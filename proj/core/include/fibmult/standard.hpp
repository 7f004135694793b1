#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fibmult/base.hpp"
#include "fibmult/multicategory.hpp"
#include "fibmult/presentation.hpp"

namespace fibmult {

struct StandardOptions {
  /// Restrict objects to the closure of these families under reindexing
  /// (pairs of base object and entries). All families when absent.
  std::optional<std::vector<std::pair<ObjectId, std::vector<int>>>> seeds;
  /// Generate special triangles when the presentation is cartesian.
  bool triangles = true;
};

/// A standard multicategory over a set-backed base: objects are families
/// I → M0, D is the discrete family fibration, arrows are families of
/// single arrows indexed by the codomain.
class StandardMulticategory {
 public:
  const FiberedMulticategory& fm() const noexcept { return *fm_; }
  std::shared_ptr<const FiberedMulticategory> fm_ptr() const noexcept { return fm_; }
  const SymmetricPresentation& presentation() const noexcept { return *pres_; }
  std::shared_ptr<const SymmetricPresentation> presentation_ptr() const noexcept { return pres_; }
  const BaseCategory& base() const noexcept { return *base_; }

  const std::vector<int>& family(ObjectId x) const { return families_[x]; }
  std::optional<ObjectId> object_of(ObjectId index_set, const std::vector<int>& family) const;
  /// The D-arrow over f into y.
  ArrowId reindexing(ArrowId f, ObjectId y) const;
  /// Single arrow components of a, one per element of the codomain index.
  const std::vector<Payload>& components(ArrowId a) const { return components_[a]; }
  std::optional<ArrowId> arrow_of(ObjectId x, ObjectId y, ArrowId f, const std::vector<Payload>& components) const;
  /// Domain of component j of an arrow over f out of x.
  std::vector<int> component_domain(ObjectId x, ArrowId f, std::size_t j) const;

  std::span<const SpecialTriangle> triangles() const noexcept { return triangles_; }

 private:
  friend std::shared_ptr<const StandardMulticategory> build_standard(std::shared_ptr<const SymmetricPresentation>,
                                                                      std::shared_ptr<const BaseCategory>,
                                                                      const StandardOptions&);
  struct PayloadHash {
    std::size_t operator()(const Payload& p) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : p) h = (h ^ static_cast<std::uint32_t>(v)) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };
  struct HomBlock {
    std::vector<std::vector<Payload>> singles;  // per codomain element
    std::vector<std::unordered_map<Payload, std::size_t, PayloadHash>> index;
    ArrowId first = 0;
    std::size_t count = 0;
  };
  const HomBlock* block(ObjectId x, ObjectId y, ArrowId f) const;

  std::shared_ptr<const FiberedMulticategory> fm_;
  std::shared_ptr<const SymmetricPresentation> pres_;
  std::shared_ptr<const BaseCategory> base_;
  std::vector<std::vector<int>> families_;
  std::map<std::pair<ObjectId, std::vector<int>>, ObjectId> object_index_;
  std::unordered_map<std::uint64_t, ArrowId> reindexing_;
  std::vector<std::vector<Payload>> components_;
  std::map<std::tuple<ObjectId, ObjectId, ArrowId>, HomBlock> blocks_;
  std::vector<SpecialTriangle> triangles_;
};

std::shared_ptr<const StandardMulticategory> build_standard(std::shared_ptr<const SymmetricPresentation> pres,
                                                             std::shared_ptr<const BaseCategory> base,
                                                             const StandardOptions& options = {});
/// Over the skeleton {[0], ..., [bound]}.
std::shared_ptr<const StandardMulticategory> build_standard(std::shared_ptr<const SymmetricPresentation> pres,
                                                             std::size_t bound);

/// Sum decompositions of every codomain index into nonempty blocks (and the
/// empty sum of the empty set): families of lifts along the injection
/// pullbacks amalgamate to exactly one arrow. Needs a set-backed base.
Violations check_extensivity(const FiberedMulticategory& fm);

/// Single arrows of a: the reindexings along every point 1 → pY.
std::vector<ArrowId> split(const FiberedMulticategory& fm, ArrowId a);
/// The unique arrow x → y over f whose split is `singles`. Throws NotExtensive.
ArrowId assemble(const FiberedMulticategory& fm, ObjectId x, ObjectId y, ArrowId f, const std::vector<ArrowId>& singles);

}  // namespace fibmult
