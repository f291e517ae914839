#pragma once

#include "tordec/zeroclass.hpp"

namespace tordec {

// --- family computations --------------------------------------------------------

// elements a with n·a <= ¬a for every n (bounded at |A|, where the sum chain
// stabilizes), together with 0.
std::vector<int> mv_radical(const FiniteStructure& a);
SubalgebraResult mv_perfect_part(const StructPtr& a);
QuotientResult mv_semisimple_quotient(const StructPtr& a);
bool mv_is_perfect(const FiniteStructure& a);
bool mv_is_semisimple(const FiniteStructure& a);

std::vector<int> heyting_regular_elements(const FiniteStructure& h);
// The regular elements as a Heyting (in fact Boolean) algebra: meet inherited,
// join ¬(¬x ∧ ¬y); plus the double-negation surjection onto it.
struct HeytingReflection {
  StructPtr regulars;
  Morphism unit;  // H ->> regulars, x |-> ¬¬x
};
HeytingReflection heyting_regulars(const StructPtr& h);
SubalgebraResult heyting_pseudo_det_part(const StructPtr& h);
bool heyting_is_pseudo_deterministic(const FiniteStructure& h);
bool heyting_is_boolean(const FiniteStructure& h);

std::vector<int> mset_fix(const FiniteStructure& x);
QuotientResult mset_contract(const StructPtr& x);  // collapse the fixed points

std::vector<int> coslice_divisible_part(const FiniteStructure& a);
// independent oracle: backward chains in the division graph
std::vector<int> coslice_divisible_part_chain_oracle(const FiniteStructure& a);
SubalgebraResult coslice_torsion_part(const StructPtr& a);
QuotientResult coslice_reflect(const StructPtr& a);

// --- torsion theories -----------------------------------------------------------

struct CoreflectResult {
  StructPtr part;
  Morphism counit;  // primal: T(A) >-> A; dual: A ->> T(A)
};
struct ReflectResult {
  StructPtr part;
  Morphism unit;  // primal: A ->> F(A); dual: F(A) >-> A
};

struct TheoryHandle {
  Kind family{};
  std::string tag;
  bool dual = false;
  int modulus = 0;
  bool swapped = false;  // deliberately wrong theory used by the checker tests

  bool is_torsion(const FiniteStructure& a) const;
  bool is_torsion_free(const FiniteStructure& a) const;
  CoreflectResult coreflect(const StructPtr& a) const;
  ReflectResult reflect(const StructPtr& a) const;

  static TheoryHandle make(const std::string& tag, int modulus = 2);
};

struct ZExactSequence {
  StructPtr object;
  StructPtr torsion_part;
  StructPtr torsion_free_part;
  Morphism counit;  // t
  Morphism unit;    // eta
  ZKernelWitness zker;
  ZCokernelWitness zcoker;
  bool dual = false;
};

// Builds the canonical sequence and certifies t = zker(eta), eta = zcoker(t)
// and the two membership predicates. Throws InternalError on any failure.
ZExactSequence decompose(const TheoryHandle& th, const StructPtr& a);

// As decompose, but reports predicate failures instead of throwing; used by the
// condition checker to expose deliberately broken theories.
struct SequenceCheck {
  bool ok = true;
  std::string reason;
  std::optional<Morphism> witness;
};
SequenceCheck check_canonical_sequence(const TheoryHandle& th, const StructPtr& a);

struct FunctorialAction {
  Morphism on_torsion;       // T(f)
  Morphism on_torsion_free;  // F(f)
};
FunctorialAction functorial_action(const TheoryHandle& th, const Morphism& f);

}  // namespace tordec
