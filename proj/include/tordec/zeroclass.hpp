#pragma once

#include "tordec/morphisms.hpp"

namespace tordec {

// The MSet family carries its torsion theory in the opposite category; every
// construction below is flagged `dual` there and the witness arrows are the
// MSet-side presentations of the opposite-category arrows.

bool in_zero_class(const FiniteStructure& a);

struct ZeroPart {
  StructPtr part;
  Morphism arrow;  // primal: inclusion Z(A) >-> A; dual: projection A ->> Z(A)
  bool dual = false;
};
ZeroPart zero_part(const StructPtr& a);

bool is_trivial(const Morphism& f);

struct ZKernelWitness {
  bool dual = false;
  StructPtr obj;      // K[f] (primal) / the codomain quotient (dual)
  Morphism arrow;     // k: K -> A (primal) / q: B ->> Q (dual)
  Morphism through;   // chi: K -> Z(B) (primal) / A -> Z(A) (dual)
  Morphism zero_leg;  // eps: Z(B) >-> B (primal) / Z(A) -> Q (dual)
  Morphism original;  // f itself
};
ZKernelWitness zkernel(const Morphism& f);

// The universal quotient into the zero class, when it exists.
// primal: x: A ->> M(A); dual (mset): the arrow M -> A presenting it.
std::optional<Morphism> max_quotient_in_zero_class(const StructPtr& a);

struct ZCokernelWitness {
  bool dual = false;
  StructPtr obj;       // Q (primal) / the domain subobject C (dual)
  Morphism arrow;      // q: B ->> Q (primal) / j: C >-> A (dual)
  Morphism max_quot;   // x: A ->> M(A) (primal) / M -> B (dual)
  Morphism zero_leg;   // z: M(A) -> Q (primal) / C -> M (dual)
  Morphism original;   // f itself
};
std::optional<ZCokernelWitness> zcokernel(const Morphism& f);

// v_A into the terminal object of the ambient category (the empty mset for the
// dual family, where the arrow runs V(A) -> A on the MSet side).
struct TerminalMap {
  StructPtr terminal;
  Morphism arrow;
  bool dual = false;
};
TerminalMap terminal_map(const StructPtr& a);

// Arrows inverted by the coreflector: Z(f) is an isomorphism.
bool zero_part_inverted(const Morphism& f);

// --- catalog oracles (bounded universal-property checks) -----------------------

// Z-kernel universal property of `w` against every object of `objects`:
// every arrow whose composite with f is trivial factors uniquely through it.
bool zkernel_universal(const ZKernelWitness& w, const std::vector<StructPtr>& objects,
                       HomCache& homs, std::string* why = nullptr);
bool zcokernel_universal(const ZCokernelWitness& w, const std::vector<StructPtr>& objects,
                         HomCache& homs, std::string* why = nullptr);

}  // namespace tordec
