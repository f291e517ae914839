#pragma once

#include "tordec/torsion.hpp"

namespace tordec {

// E = Z-cokernels with torsion Z-kernel, M = arrows with torsion-free Z-kernel.
// For the dual family the morphism presents the opposite-category arrow from
// its codomain to its domain, as everywhere else.
bool in_E(const TheoryHandle& th, const Morphism& f);
bool in_M(const TheoryHandle& th, const Morphism& f);

struct FactorizationResult {
  bool dual = false;
  StructPtr middle;
  Morphism e;  // primal: A ->> I; dual: the inclusion I >-> B presenting the E-part
  Morphism m;  // primal: I -> B;  dual: the corestriction A -> I presenting the M-part
  bool e_in_class = false;
  bool m_in_class = false;
};

// Closed-form factorization cross-checked against the generic Z-cokernel route;
// a disagreement or failed membership certificate is an InternalError.
FactorizationResult factorize(const TheoryHandle& th, const Morphism& f);

struct OrthogonalityReport {
  bool ok = true;
  int squares = 0;
  std::string detail;
};
// Literal lifting check: every commuting square against (e, m) built from homs
// between catalog objects admits exactly one diagonal.
OrthogonalityReport check_orthogonality(const TheoryHandle& th, const Morphism& e,
                                        const Morphism& m, const std::vector<StructPtr>& objects,
                                        HomCache& homs);

struct ConditionReport {
  std::string condition;
  bool verdict = true;
  std::string detail;
  std::optional<Morphism> witness_arrow;
  StructPtr witness_object;
  int objects_scanned = 0;
  int arrows_scanned = 0;
};

// tags: "axioms", "N", "M", "Mprime", "S", "P"
ConditionReport check_condition(const TheoryHandle& th, const std::string& tag,
                                const Catalog& catalog, HomCache& homs);

struct SystemReport {
  bool ok = true;
  std::string detail;
  int homs_factored = 0;
  int ortho_checked = 0;
  int stability_checked = 0;
};
// Criterion-level driver: factorizes every catalog hom (closed vs generic),
// sweeps the lifting property and pullback-stability along inverted arrows.
SystemReport verify_factorization_system(const TheoryHandle& th, const Catalog& catalog,
                                         HomCache& homs);

// Protoadditivity in the strong Heyting sense: the reflector preserves every
// binary pullback of catalog cospans.
ConditionReport check_heyting_localization(const TheoryHandle& th, const Catalog& catalog,
                                           HomCache& homs);

}  // namespace tordec
