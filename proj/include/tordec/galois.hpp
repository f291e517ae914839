#pragma once

#include "tordec/factorization.hpp"

namespace tordec {

struct NotDescent : DomainError {
  explicit NotDescent(const std::string& msg) : DomainError(msg) {}
};

// Admissibility is gated on conditions (M') and (S) holding over the catalog.
struct GaloisContext {
  TheoryHandle theory;
  Catalog catalog;
  bool admissible = false;
  ConditionReport mprime_report;
  ConditionReport s_report;
};

GaloisContext make_galois_context(const TheoryHandle& th, Catalog catalog, HomCache& homs);

// effective descent morphisms: regular epis (surjections) in the varieties,
// monomorphisms on the MSet side for the dual family
bool is_descent_morphism(const TheoryHandle& th, const Morphism& f);

// unit naturality square is a pullback (amalgamated sum on the dual side)
bool is_trivial_extension(const GaloisContext& ctx, const Morphism& f);

// kernel-pair (cokernel-pair) projections are trivial extensions
bool normal_via_kernel_pairs(const GaloisContext& ctx, const Morphism& f);

// K[f] lands in the torsion-free part
bool central_via_kernel(const GaloisContext& ctx, const Morphism& f);

// central_via_kernel cross-checked against normal_via_kernel_pairs; a
// disagreement is an InternalError (the two criteria provably coincide)
bool is_normal_extension(const GaloisContext& ctx, const Morphism& f);
bool is_central_extension(const GaloisContext& ctx, const Morphism& f);

enum class ExtensionTag { Trivial, Normal, Central, NonCentral };
const char* extension_tag_name(ExtensionTag t);

struct ExtensionClass {
  ExtensionTag tag = ExtensionTag::NonCentral;
  bool descent = false;
  bool trivial = false;
  bool normal = false;
  bool central = false;
  StructPtr kernel;
  std::string evidence;
};

ExtensionClass classify_extension(const GaloisContext& ctx, const Morphism& f);

}  // namespace tordec
