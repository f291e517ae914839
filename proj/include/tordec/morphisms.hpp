#pragma once

#include <map>
#include <shared_mutex>
#include <utility>

#include "tordec/structures.hpp"

namespace tordec {

struct Morphism {
  StructPtr source, target;
  std::vector<int> map;

  int operator()(int i) const { return map[i]; }
  int size() const { return static_cast<int>(map.size()); }
};

Morphism identity_morphism(StructPtr a);
Morphism compose(const Morphism& g, const Morphism& f);  // g ∘ f
bool is_valid_morphism(const Morphism& f);

struct MorphismFlags {
  bool mono = false, epi = false, iso = false;
};
MorphismFlags classify_morphism(const Morphism& f);

// Complete, duplicate-free, sorted by map tuple.
std::vector<Morphism> enumerate_homs(const StructPtr& a, const StructPtr& b);
std::vector<Morphism> enumerate_isos(const StructPtr& a, const StructPtr& b);
std::optional<Morphism> find_iso(const StructPtr& a, const StructPtr& b);

// Oracle-grade: filter all |B|^|A| maps (use only on tiny instances).
std::vector<Morphism> enumerate_homs_naive(const StructPtr& a, const StructPtr& b);

struct SubalgebraResult {
  StructPtr sub;
  Morphism inclusion;
  std::vector<int> member_indices;  // ascending indices into the ambient structure
};
// Least subset containing `subset` and all constants, closed under all operations.
SubalgebraResult subalgebra_generated(const StructPtr& a, const std::vector<int>& subset);
// Wrap an already-closed subset (throws if not closed).
SubalgebraResult subalgebra_on(const StructPtr& a, std::vector<int> closed_subset);
// Closure under the group operations only (no basepoint); coslice helper.
std::vector<int> subgroup_generated(const FiniteStructure& a, const std::vector<int>& gens);

struct Congruence {
  std::vector<int> class_of;  // normalized: class ids appear in element order
  int num_classes = 0;

  bool operator==(const Congruence&) const = default;
};

Congruence identity_congruence(const FiniteStructure& a);
Congruence total_congruence(const FiniteStructure& a);
Congruence partition_congruence(const FiniteStructure& a, std::vector<int> raw_class_of);
Congruence congruence_generated(const FiniteStructure& a,
                                const std::vector<std::pair<int, int>>& pairs);
bool is_congruence(const FiniteStructure& a, const Congruence& c);
bool congruence_leq(const Congruence& finer, const Congruence& coarser);
Congruence congruence_meet(const Congruence& x, const Congruence& y);
Congruence congruence_join(const FiniteStructure& a, const Congruence& x, const Congruence& y);
std::vector<Congruence> all_congruences(const FiniteStructure& a);
Congruence kernel_partition(const Morphism& f);

struct QuotientResult {
  StructPtr quot;
  Morphism projection;
};
QuotientResult quotient(const StructPtr& a, const Congruence& c);

struct ProductResult {
  StructPtr prod;
  Morphism proj1, proj2;
};
ProductResult product(const StructPtr& a, const StructPtr& b);

struct PullbackResult {
  StructPtr obj;
  Morphism to_left, to_right;  // P -> A, P -> B for f: A -> C, g: B -> C
};
PullbackResult pullback(const Morphism& f, const Morphism& g);

struct KernelPairResult {
  StructPtr obj;
  Morphism p1, p2;
  Congruence eq;
};
KernelPairResult kernel_pair(const Morphism& f);

struct ImageFactorization {
  StructPtr image;
  Morphism epi;   // A ->> I
  Morphism mono;  // I >-> B
};
ImageFactorization image(const Morphism& f);

// Amalgamated sum in MSet (colimits are computed pointwise); u: S->X, v: S->Y.
struct PushoutResult {
  StructPtr obj;
  Morphism from_left, from_right;  // X -> P, Y -> P
};
PushoutResult mset_pushout(const Morphism& u, const Morphism& v);

// Memoized hom-sets for catalog sweeps. precompute() fills the cache (possibly
// in parallel); homs() afterwards is read-only and safe to share across threads.
class HomCache {
 public:
  const std::vector<Morphism>& homs(const StructPtr& a, const StructPtr& b);
  void precompute(const std::vector<StructPtr>& objects);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<const FiniteStructure*, const FiniteStructure*>, std::vector<Morphism>>
      cache_;
};

}  // namespace tordec
