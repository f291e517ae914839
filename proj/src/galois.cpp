#include "tordec/galois.hpp"

#include <set>

namespace tordec {

const char* extension_tag_name(ExtensionTag t) {
  switch (t) {
    case ExtensionTag::Trivial: return "Trivial";
    case ExtensionTag::Normal: return "Normal";
    case ExtensionTag::Central: return "Central";
    case ExtensionTag::NonCentral: return "NonCentral";
  }
  return "?";
}

GaloisContext make_galois_context(const TheoryHandle& th, Catalog catalog, HomCache& homs) {
  GaloisContext ctx;
  ctx.theory = th;
  ctx.catalog = std::move(catalog);
  ctx.mprime_report = check_condition(th, "Mprime", ctx.catalog, homs);
  ctx.s_report = check_condition(th, "S", ctx.catalog, homs);
  ctx.admissible = ctx.mprime_report.verdict && ctx.s_report.verdict;
  return ctx;
}

bool is_descent_morphism(const TheoryHandle& th, const Morphism& f) {
  MorphismFlags fl = classify_morphism(f);
  return th.dual ? fl.mono : fl.epi;
}

namespace {

void require_admissible(const GaloisContext& ctx) {
  if (!ctx.admissible)
    throw DomainError("galois structure is not admissible on the active catalog: " +
                      (ctx.mprime_report.verdict ? ctx.s_report.detail
                                                 : ctx.mprime_report.detail));
}

void require_descent(const GaloisContext& ctx, const Morphism& f) {
  if (!is_descent_morphism(ctx.theory, f))
    throw NotDescent(ctx.theory.dual ? "not a monomorphism on the MSet side"
                                     : "not a regular epimorphism");
}

}  // namespace

bool is_trivial_extension(const GaloisContext& ctx, const Morphism& f) {
  require_admissible(ctx);
  const TheoryHandle& th = ctx.theory;
  if (!th.dual) {
    ReflectResult ra = th.reflect(f.source);
    ReflectResult rb = th.reflect(f.target);
    Morphism ff = functorial_action(th, f).on_torsion_free;
    // comparison into B x_{F(B)} F(A)
    PullbackResult pb = pullback(rb.unit, ff);
    int m = ff.source->size();
    std::vector<int> pos(f.target->size() * m, -1);
    for (int i = 0; i < pb.obj->size(); ++i)
      pos[pb.to_left.map[i] * m + pb.to_right.map[i]] = i;
    std::vector<int> cmp(f.source->size(), -1);
    for (int x = 0; x < f.source->size(); ++x) {
      int w = pos[f.map[x] * m + ra.unit.map[x]];
      if (w < 0) return false;
      cmp[x] = w;
    }
    Morphism comparison{f.source, pb.obj, std::move(cmp)};
    if (!is_valid_morphism(comparison)) throw InternalError("trivial-extension comparison");
    return classify_morphism(comparison).iso;
  }
  // dual: the naturality square of fixed-point inclusions must be an
  // amalgamated sum; compare B +_{F(B)} F(A) against A along the canonical map
  ReflectResult ra = th.reflect(f.source);  // Fix(A) >-> A
  ReflectResult rb = th.reflect(f.target);  // Fix(B) >-> B
  Morphism fix_f = functorial_action(th, f).on_torsion_free;  // Fix(A) -> Fix(B)
  PushoutResult po = mset_pushout(ra.unit, fix_f);            // A +_{Fix(A)} Fix(B)
  // induced map to B; the cocone commutes by naturality, so this is total
  std::vector<int> cmp(po.obj->size(), -1);
  for (int x = 0; x < f.source->size(); ++x) {
    int cls = po.from_left.map[x];
    if (cmp[cls] != -1 && cmp[cls] != f.map[x])
      throw InternalError("dual trivial-extension cocone does not commute");
    cmp[cls] = f.map[x];
  }
  for (int i = 0; i < rb.part->size(); ++i) {
    int cls = po.from_right.map[i];
    int v = rb.unit.map[i];
    if (cmp[cls] != -1 && cmp[cls] != v)
      throw InternalError("dual trivial-extension cocone does not commute");
    cmp[cls] = v;
  }
  for (int v : cmp)
    if (v < 0) throw InternalError("dual trivial-extension comparison is partial");
  Morphism comparison{po.obj, f.target, std::move(cmp)};
  if (!is_valid_morphism(comparison)) throw InternalError("dual trivial-extension comparison");
  return classify_morphism(comparison).iso;
}

bool normal_via_kernel_pairs(const GaloisContext& ctx, const Morphism& f) {
  require_admissible(ctx);
  require_descent(ctx, f);
  const TheoryHandle& th = ctx.theory;
  if (!th.dual) {
    KernelPairResult kp = kernel_pair(f);
    return is_trivial_extension(ctx, kp.p1) && is_trivial_extension(ctx, kp.p2);
  }
  // dual: cokernel pair of the MSet monomorphism
  PushoutResult po = mset_pushout(f, f);
  return is_trivial_extension(ctx, po.from_left) && is_trivial_extension(ctx, po.from_right);
}

bool central_via_kernel(const GaloisContext& ctx, const Morphism& f) {
  require_admissible(ctx);
  require_descent(ctx, f);
  return ctx.theory.is_torsion_free(*zkernel(f).obj);
}

bool is_normal_extension(const GaloisContext& ctx, const Morphism& f) {
  bool normal = normal_via_kernel_pairs(ctx, f);
  bool central = central_via_kernel(ctx, f);
  if (normal != central)
    throw InternalError("normal/central criteria disagree on a descent morphism");
  return normal;
}

bool is_central_extension(const GaloisContext& ctx, const Morphism& f) {
  return is_normal_extension(ctx, f);
}

ExtensionClass classify_extension(const GaloisContext& ctx, const Morphism& f) {
  require_admissible(ctx);
  ExtensionClass out;
  out.kernel = zkernel(f).obj;
  out.descent = is_descent_morphism(ctx.theory, f);
  out.trivial = is_trivial_extension(ctx, f);
  if (out.trivial && !out.descent) {
    out.tag = ExtensionTag::Trivial;
    out.evidence = "unit naturality square is a pullback";
    return out;
  }
  if (!out.descent)
    throw NotDescent("normal/central classification requires an effective descent morphism");
  out.central = central_via_kernel(ctx, f);
  out.normal = normal_via_kernel_pairs(ctx, f);
  if (out.central != out.normal)
    throw InternalError("normal/central criteria disagree on a descent morphism");
  if (out.trivial && !out.normal)
    throw InternalError("a trivial extension failed the normality check");
  if (ctx.theory.family == Kind::Heyting && out.central != out.trivial)
    throw InternalError("heyting: central and trivial differ under a localization reflector");
  if (out.trivial) {
    out.tag = ExtensionTag::Trivial;
    out.evidence = "unit naturality square is a pullback";
  } else if (out.normal) {
    out.tag = ExtensionTag::Normal;
    out.evidence = "kernel-pair projections are trivial extensions";
  } else {
    out.tag = ExtensionTag::NonCentral;
    out.evidence = "Z-kernel is not torsion-free";
  }
  return out;
}

}  // namespace tordec
