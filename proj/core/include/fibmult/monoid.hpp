#pragma once

#include <vector>

#include "fibmult/multicategory.hpp"

namespace fibmult {

/// An arrow a: X → Y of M with a parallel t in D over the same base arrow.
struct Endomorphism {
  ArrowId a;
  ArrowId t;
};

/// A morphism from the terminal fibered multicategory: a section of d and a
/// section of p agreeing on objects.
struct MonoidInM {
  std::vector<ObjectId> objects;   // per base object
  std::vector<ArrowId> d_section;  // per base arrow, into D
  std::vector<ArrowId> p_section;  // per base arrow, into M

  Endomorphism over(ArrowId f) const { return Endomorphism{p_section[f], d_section[f]}; }
  bool operator==(const MonoidInM&) const = default;
};

/// Diagram (com): b reindexes e1.a along (u, e2.t), b' reindexes e2.a along
/// (v, e1.t) over the transposed square, and the result is a∘b' == a'∘b.
/// `square` has right p(e1.a) and bottom p(e2.a); u, v lift its top and left.
bool commute_endomorphisms(const FiberedMulticategory& fm, const Endomorphism& e1, const Endomorphism& e2,
                           const BaseSquare& square, ArrowId u, ArrowId v);

/// The commutation flag for every listed pullback over (p(e2.a), p(e1.a))
/// and every pair of d-lifts of its top and left with a common domain.
std::vector<bool> commutation_choices(const FiberedMulticategory& fm, const Endomorphism& e1,
                                      const Endomorphism& e2);

Violations verify_monoid(const FiberedMulticategory& fm, const MonoidInM& m);

/// Fibered-monoid mode: d a fibration in groupoids, p a discrete
/// opfibration and, when d is discrete, the two lifting paths around every
/// pullback agree.
Violations verify_fibered_monoid(const FiberedMulticategory& fm);

/// alpha[I]: m.objects[I] → m2.objects[I] in M over id_I.
Violations verify_monoid_morphism(const FiberedMulticategory& fm, const MonoidInM& m, const MonoidInM& m2,
                                  const std::vector<ArrowId>& alpha);

struct EckmannHiltonReport {
  bool shared_identity = false;
  bool commuting = false;
  bool collapse_over_I = false;
  bool delta_commuting = false;
  bool identities_coincide = false;

  bool sound() const {
    return (!(shared_identity && commuting) || collapse_over_I) && (!delta_commuting || identities_coincide);
  }
};

/// Both propositions about the diagonal identity law over the base object I.
EckmannHiltonReport eckmann_hilton(const FiberedMulticategory& fm, const MonoidInM& m1, const MonoidInM& m2,
                                   ObjectId i);

}  // namespace fibmult
