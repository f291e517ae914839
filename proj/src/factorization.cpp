#include "tordec/factorization.hpp"

#include <atomic>
#include <map>
#include <set>

#include "tordec/parallel.hpp"

namespace tordec {

namespace {

std::set<int> image_set(const Morphism& f) { return {f.map.begin(), f.map.end()}; }

bool is_epi(const Morphism& f) { return classify_morphism(f).epi; }

std::vector<int> times_m_set(const FiniteStructure& a, const std::vector<int>& s) {
  std::set<int> out;
  for (int x : s) {
    int acc = 0;
    for (int i = 0; i < a.modulus; ++i) acc = a.add[acc][x];
    out.insert(acc);
  }
  return {out.begin(), out.end()};
}

// divisible part of a subgroup, computed inside the ambient group
std::vector<int> divisible_part_of_subgroup(const FiniteStructure& a, std::vector<int> s) {
  while (true) {
    std::vector<int> next = times_m_set(a, s);
    if (next == s) return s;
    s = std::move(next);
  }
}

// action-closed subsets of a small mset, ascending by mask
std::vector<std::vector<int>> closed_subsets(const FiniteStructure& x) {
  int n = x.size();
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool closed = true;
    for (int i = 0; i < n && closed; ++i) {
      if (!(mask & (1 << i))) continue;
      for (int g = 0; g < x.monoid.size(); ++g)
        if (!(mask & (1 << x.action[g][i]))) { closed = false; break; }
    }
    if (!closed) continue;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) members.push_back(i);
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

bool in_E(const TheoryHandle& th, const Morphism& f) {
  ZKernelWitness k = zkernel(f);
  if (!th.is_torsion(*k.obj)) return false;
  if (!th.dual) {
    if (!is_epi(f)) return false;
    auto zc = zcokernel(k.arrow);
    if (!zc) return false;
    return kernel_partition(zc->arrow) == kernel_partition(f);
  }
  if (!classify_morphism(f).mono) return false;
  auto zc = zcokernel(k.arrow);
  if (!zc) return false;
  return image_set(f) == image_set(zc->arrow);
}

bool in_M(const TheoryHandle& th, const Morphism& f) {
  return th.is_torsion_free(*zkernel(f).obj);
}

namespace {

Congruence closed_form_partition(const TheoryHandle& th, const Morphism& f) {
  const FiniteStructure& a = *f.source;
  switch (th.family) {
    case Kind::MV: {
      std::vector<int> rad = mv_radical(a);
      std::set<int> ideal;
      for (int r : rad)
        if (f.map[r] == 0) ideal.insert(r);
      MvDerived d = derive_mv_tables(a);
      int n = a.size();
      UnionFind uf(n);
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
          if (ideal.count(d.dist[x][y])) uf.unite(x, y);
      std::vector<int> raw(n);
      for (int i = 0; i < n; ++i) raw[i] = uf.find(i);
      return partition_congruence(a, std::move(raw));
    }
    case Kind::Heyting: {
      Congruence eqf = kernel_partition(f);
      Congruence equ = kernel_partition(th.reflect(f.source).unit);
      Congruence c = congruence_meet(eqf, equ);
      if (!is_congruence(a, c)) throw InternalError("heyting middle: not a congruence");
      return c;
    }
    case Kind::Coslice: {
      std::vector<int> ker;
      for (int i = 0; i < a.size(); ++i)
        if (f.map[i] == 0) ker.push_back(i);
      std::vector<int> d = divisible_part_of_subgroup(a, ker);
      int n = a.size();
      UnionFind uf(n);
      for (int x = 0; x < n; ++x)
        for (int g : d) uf.unite(x, a.add[x][g]);
      std::vector<int> raw(n);
      for (int i = 0; i < n; ++i) raw[i] = uf.find(i);
      return partition_congruence(a, std::move(raw));
    }
    case Kind::MSet: break;
  }
  throw InternalError("closed_form_partition: wrong family");
}

FactorizationResult factorize_primal(const TheoryHandle& th, const Morphism& f) {
  // closed form
  Congruence mid_part = closed_form_partition(th, f);
  QuotientResult q = quotient(f.source, mid_part);
  std::vector<int> mmap(q.quot->size(), -1);
  for (int x = 0; x < f.source->size(); ++x) {
    int c = q.projection.map[x];
    if (mmap[c] == -1) mmap[c] = f.map[x];
    else if (mmap[c] != f.map[x]) throw InternalError("factorize: middle map ill-defined");
  }
  Morphism m{q.quot, f.target, std::move(mmap)};
  if (!is_valid_morphism(m)) throw InternalError("factorize: m is not a morphism");

  // generic route through the Z-cokernel of the torsion part of the Z-kernel
  ZKernelWitness k = zkernel(f);
  CoreflectResult t = th.coreflect(k.obj);
  Morphism kt = compose(k.arrow, t.counit);
  auto zc = zcokernel(kt);
  if (!zc) throw InternalError("factorize: generic Z-cokernel missing");
  if (kernel_partition(zc->arrow) != kernel_partition(q.projection))
    throw InternalError("factorize: closed form and generic route disagree");

  // certified unique middle isomorphism between the two routes
  QuotientResult qg = quotient(f.source, kernel_partition(zc->arrow));
  int commuting = 0;
  for (const Morphism& iso : enumerate_isos(q.quot, qg.quot))
    if (compose(iso, q.projection).map == qg.projection.map) ++commuting;
  if (commuting != 1) throw InternalError("factorize: middle isomorphism not unique");

  FactorizationResult r;
  r.middle = q.quot;
  r.e = q.projection;
  r.m = m;
  r.e_in_class = in_E(th, r.e);
  r.m_in_class = in_M(th, r.m);
  if (!r.e_in_class || !r.m_in_class)
    throw InternalError("factorize: class membership certificate failed");
  return r;
}

FactorizationResult factorize_dual(const TheoryHandle& th, const Morphism& f) {
  const StructPtr& b = f.target;
  std::set<int> members(f.map.begin(), f.map.end());
  for (int z : mset_fix(*b)) members.insert(z);
  SubalgebraResult mid = subalgebra_on(b, std::vector<int>(members.begin(), members.end()));
  std::vector<int> pos(b->size(), -1);
  for (std::size_t i = 0; i < mid.member_indices.size(); ++i) pos[mid.member_indices[i]] = i;
  std::vector<int> mmap(f.source->size());
  for (int i = 0; i < f.source->size(); ++i) mmap[i] = pos[f.map[i]];
  Morphism m{f.source, mid.sub, std::move(mmap)};

  // generic route: Z-cokernel of the composite through the torsion part
  ZKernelWitness k = zkernel(f);
  CoreflectResult t = th.coreflect(k.obj);  // contraction of K[f]
  Morphism composite = compose(t.counit, k.arrow);
  auto zc = zcokernel(composite);
  if (!zc) throw InternalError("factorize: generic dual Z-cokernel missing");
  if (image_set(zc->arrow) != image_set(mid.inclusion))
    throw InternalError("factorize: dual closed form and generic route disagree");
  int commuting = 0;
  for (const Morphism& iso : enumerate_isos(mid.sub, zc->obj))
    if (compose(zc->arrow, iso).map == mid.inclusion.map) ++commuting;
  if (commuting != 1) throw InternalError("factorize: dual middle isomorphism not unique");

  FactorizationResult r;
  r.dual = true;
  r.middle = mid.sub;
  r.e = mid.inclusion;
  r.m = m;
  if (compose(r.e, r.m).map != f.map) throw InternalError("factorize: dual composite broken");
  r.e_in_class = in_E(th, r.e);
  r.m_in_class = in_M(th, r.m);
  if (!r.e_in_class || !r.m_in_class)
    throw InternalError("factorize: dual class membership certificate failed");
  return r;
}

}  // namespace

FactorizationResult factorize(const TheoryHandle& th, const Morphism& f) {
  if (!same_family(*f.source, *f.target) || f.source->kind != th.family)
    throw DomainError("factorize: morphism family does not match the theory");
  if (th.dual) return factorize_dual(th, f);
  FactorizationResult r = factorize_primal(th, f);
  if (compose(r.m, r.e).map != f.map) throw InternalError("factorize: composite broken");
  return r;
}

OrthogonalityReport check_orthogonality(const TheoryHandle& th, const Morphism& e,
                                        const Morphism& m, const std::vector<StructPtr>& objects,
                                        HomCache& homs) {
  (void)objects;
  (void)homs;
  if (!in_E(th, e) || !in_M(th, m))
    throw DomainError("check_orthogonality: arrows are not an (E, M) pair");
  OrthogonalityReport rep;
  if (!th.dual) {
    for (const Morphism& g : enumerate_homs(e.source, m.source))
      for (const Morphism& h : enumerate_homs(e.target, m.target)) {
        if (compose(m, g).map != compose(h, e).map) continue;
        ++rep.squares;
        int count = 0;
        for (const Morphism& d : enumerate_homs(e.target, m.source))
          if (compose(d, e).map == g.map && compose(m, d).map == h.map) ++count;
        if (count != 1) {
          rep.ok = false;
          rep.detail = "square admits " + std::to_string(count) + " diagonals";
          return rep;
        }
      }
    return rep;
  }
  // dual: e presented by an inclusion I >-> B, m by mu: W -> Z
  const Morphism& inc = e;
  const Morphism& mu = m;
  for (const Morphism& g : enumerate_homs(mu.target, inc.target))    // Z -> B
    for (const Morphism& h : enumerate_homs(mu.source, inc.source)) {  // W -> I
      if (compose(g, mu).map != compose(inc, h).map) continue;
      ++rep.squares;
      int count = 0;
      for (const Morphism& d : enumerate_homs(mu.target, inc.source))  // Z -> I
        if (compose(inc, d).map == g.map && compose(d, mu).map == h.map) ++count;
      if (count != 1) {
        rep.ok = false;
        rep.detail = "dual square admits " + std::to_string(count) + " diagonals";
        return rep;
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------------
// condition checks
// ---------------------------------------------------------------------------------

namespace {

std::vector<StructPtr> family_objects(const Catalog& cat) { return cat.instances; }

struct FailureSlot {
  bool failed = false;
  std::string detail;
  std::optional<Morphism> arrow;
  StructPtr object;
};

void merge_failures(ConditionReport& rep, const std::vector<FailureSlot>& slots) {
  for (const auto& s : slots)
    if (s.failed) {
      rep.verdict = false;
      rep.detail = s.detail;
      rep.witness_arrow = s.arrow;
      rep.witness_object = s.object;
      return;
    }
}

ConditionReport check_axioms(const TheoryHandle& th, const Catalog& cat, HomCache& homs) {
  ConditionReport rep;
  rep.condition = "axioms";
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());
  // (a) torsion ∩ torsion-free = zero class
  for (const auto& a : objs) {
    bool both = th.is_torsion(*a) && th.is_torsion_free(*a);
    if (both != in_zero_class(*a)) {
      rep.verdict = false;
      rep.detail = "object fails T ∩ F = Z";
      rep.witness_object = a;
      return rep;
    }
  }
  // (b) only trivial arrows from torsion to torsion-free
  for (const auto& a : objs)
    for (const auto& b : objs) {
      if (!same_family(*a, *b)) continue;
      if (!th.is_torsion(*a) || !th.is_torsion_free(*b)) continue;
      // in the dual family Hom(T, F) is presented by the MSet arrows F -> T
      const StructPtr& from = th.dual ? b : a;
      const StructPtr& to = th.dual ? a : b;
      for (const Morphism& f : homs.homs(from, to)) {
        ++rep.arrows_scanned;
        if (!is_trivial(f)) {
          rep.verdict = false;
          rep.detail = "non-trivial arrow from a torsion to a torsion-free object";
          rep.witness_arrow = f;
          return rep;
        }
      }
    }
  // (c) canonical sequences certify
  for (const auto& a : objs) {
    SequenceCheck chk = check_canonical_sequence(th, a);
    if (!chk.ok) {
      rep.verdict = false;
      rep.detail = chk.reason;
      rep.witness_arrow = chk.witness;
      rep.witness_object = a;
      return rep;
    }
  }
  return rep;
}

ConditionReport check_condition_n(const TheoryHandle& th, const Catalog& cat, HomCache& homs) {
  ConditionReport rep;
  rep.condition = "N";
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());

  if (!th.dual) {
    // per-object table of Z-kernel subsets of all quotient projections
    std::map<const FiniteStructure*, std::vector<std::set<int>>> zker_sets;
    for (const auto& a : objs) {
      std::vector<std::set<int>> sets;
      for (const Congruence& c : all_congruences(*a)) {
        QuotientResult q = quotient(a, c);
        sets.push_back(image_set(zkernel(q.projection).arrow));
      }
      zker_sets[a.get()] = std::move(sets);
    }
    std::vector<FailureSlot> slots(objs.size());
    std::atomic<int> arrows{0};
    par::for_index(objs.size(), [&](std::size_t ai) {
      const auto& a = objs[ai];
      for (const auto& b : objs) {
        if (!same_family(*a, *b)) continue;
        for (const Morphism& f : homs.homs(a, b)) {
          ++arrows;
          ZKernelWitness k = zkernel(f);
          CoreflectResult t = th.coreflect(k.obj);
          std::set<int> s = image_set(compose(k.arrow, t.counit));
          const auto& sets = zker_sets.at(a.get());
          if (std::find(sets.begin(), sets.end(), s) == sets.end()) {
            slots[ai] = {true, "torsion part of a Z-kernel is not itself a Z-kernel", f, a};
            return;
          }
        }
      }
    });
    rep.arrows_scanned = arrows.load();
    merge_failures(rep, slots);
    return rep;
  }

  // dual: the opposite-category kernel quotients must arise from subobject collapses
  std::vector<FailureSlot> slots(objs.size());
  std::atomic<int> arrows{0};
  par::for_index(objs.size(), [&](std::size_t ai) {
    const auto& a = objs[ai];
    for (const auto& b : objs) {
      if (!same_family(*a, *b)) continue;
      for (const Morphism& f : homs.homs(a, b)) {
        ++arrows;
        ZKernelWitness k = zkernel(f);                 // q: B ->> B/f(A)
        CoreflectResult t = th.coreflect(k.obj);       // contraction of the quotient
        Congruence target = kernel_partition(compose(t.counit, k.arrow));
        bool found = false;
        for (const auto& members : closed_subsets(*f.target)) {
          SubalgebraResult sub = subalgebra_on(f.target, members);
          if (kernel_partition(zkernel(sub.inclusion).arrow) == target) { found = true; break; }
        }
        if (!found) {
          slots[ai] = {true, "dual torsion composite is not a Z-kernel of any subobject", f, a};
          return;
        }
      }
    }
  });
  rep.arrows_scanned = arrows.load();
  merge_failures(rep, slots);
  return rep;
}

ConditionReport check_condition_m(const TheoryHandle& th, const Catalog& cat, HomCache& homs) {
  (void)homs;
  ConditionReport rep;
  rep.condition = "M";
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());
  std::vector<FailureSlot> slots(objs.size());
  std::atomic<int> arrows{0};
  par::for_index(objs.size(), [&](std::size_t ci) {
    const auto& c = objs[ci];
    auto consider = [&](const Morphism& q) {
      ++arrows;
      ZKernelWitness k = zkernel(q);
      if (!th.is_torsion(*k.obj)) return true;
      auto zc = zcokernel(k.arrow);
      if (!zc) return true;
      if (!th.dual) {
        if (kernel_partition(zc->arrow) != kernel_partition(q)) return true;  // not exact
      } else {
        if (image_set(zc->arrow) != image_set(q)) return true;
      }
      StructPtr ft = th.reflect(k.obj).part;
      // the right end of the sequence is the projection target (primal) or the
      // subobject itself (dual, where q is an inclusion presenting an op-quotient)
      StructPtr zq = th.dual ? zero_part(q.source).part : zero_part(q.target).part;
      if (!find_iso(ft, zq)) {
        slots[ci] = {true, "F(T) is not isomorphic to Z(Q)", q, c};
        return false;
      }
      return true;
    };
    if (!th.dual) {
      for (const Congruence& part : all_congruences(*c)) {
        QuotientResult q = quotient(c, part);
        if (!consider(q.projection)) return;
      }
    } else {
      for (const auto& members : closed_subsets(*c)) {
        SubalgebraResult sub = subalgebra_on(c, members);
        if (!consider(sub.inclusion)) return;
      }
    }
  });
  rep.arrows_scanned = arrows.load();
  merge_failures(rep, slots);
  return rep;
}

ConditionReport check_condition_mprime(const TheoryHandle& th, const Catalog& cat,
                                       HomCache& homs) {
  (void)homs;
  ConditionReport rep;
  rep.condition = "Mprime";
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());
  std::vector<FailureSlot> slots(objs.size());
  par::for_index(objs.size(), [&](std::size_t ai) {
    const auto& a = objs[ai];
    StructPtr ft = th.reflect(th.coreflect(a).part).part;
    StructPtr zf = zero_part(th.reflect(a).part).part;
    if (!find_iso(ft, zf))
      slots[ai] = {true, "F(T(A)) is not isomorphic to Z(F(A))", std::nullopt, a};
  });
  merge_failures(rep, slots);
  return rep;
}

ConditionReport check_condition_s(const TheoryHandle& th, const Catalog& cat, HomCache& homs) {
  (void)homs;
  ConditionReport rep;
  rep.condition = "S";
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());
  std::vector<StructPtr> zmembers;
  for (const auto& z : objs)
    if (in_zero_class(*z)) zmembers.push_back(z);
  std::vector<FailureSlot> slots(objs.size());
  std::atomic<int> arrows{0};
  par::for_index(objs.size(), [&](std::size_t ti) {
    const auto& t = objs[ti];
    if (!th.is_torsion(*t)) return;
    ReflectResult re = th.reflect(t);
    if (!in_zero_class(*re.part)) {
      slots[ti] = {true, "torsion object reflects outside the zero class", re.unit, t};
      return;
    }
    if (!th.dual) {
      for (const auto& z : zmembers) {
        if (!same_family(*z, *t)) continue;
        for (const Morphism& zarr : enumerate_homs(z, re.part)) {
          ++arrows;
          PullbackResult pb = pullback(re.unit, zarr);
          Morphism chi = pb.to_right;
          if (!th.is_torsion(*pb.obj)) {
            slots[ti] = {true, "pullback of a unit along a zero arrow is not torsion", chi, t};
            return;
          }
          Morphism unit_p = th.reflect(pb.obj).unit;
          if (kernel_partition(chi) != kernel_partition(unit_p) || !is_epi(chi)) {
            slots[ti] = {true, "pullback comparison is not the unit", chi, t};
            return;
          }
        }
      }
    } else {
      // opposite category: pullbacks become amalgamated sums
      for (const auto& z : zmembers) {
        if (!same_family(*z, *t)) continue;
        for (const Morphism& zarr : enumerate_homs(re.part, z)) {
          ++arrows;
          PushoutResult po = mset_pushout(re.unit, zarr);
          if (!th.is_torsion(*po.obj)) {
            slots[ti] = {true, "dual pullback of a unit is not torsion", po.from_right, t};
            return;
          }
          const Morphism& chi = po.from_right;  // presents the comparison
          std::vector<int> fix_members = mset_fix(*po.obj);
          std::set<int> fixp(fix_members.begin(), fix_members.end());
          if (!classify_morphism(chi).mono || image_set(chi) != fixp) {
            slots[ti] = {true, "dual pullback comparison is not the unit", chi, t};
            return;
          }
        }
      }
    }
  });
  rep.arrows_scanned = arrows.load();
  merge_failures(rep, slots);
  return rep;
}

// canonical comparison F(P) -> F(A) x_{F(B)} F(C) for a pullback P of (p, g)
bool reflector_preserves_pullback(const TheoryHandle& th, const Morphism& p, const Morphism& g,
                                  std::string* why) {
  PullbackResult pb = pullback(p, g);
  ReflectResult fp = th.reflect(pb.obj);
  Morphism f_p = functorial_action(th, p).on_torsion_free;
  Morphism f_g = functorial_action(th, g).on_torsion_free;
  Morphism leg_a = functorial_action(th, pb.to_left).on_torsion_free;
  Morphism leg_c = functorial_action(th, pb.to_right).on_torsion_free;
  PullbackResult pb2 = pullback(f_p, f_g);
  int fc = f_g.source->size();
  std::vector<int> pos(f_p.source->size() * fc, -1);
  // pb2 members sit inside the product of F(A) and F(C)
  {
    const FiniteStructure& prod = *pb2.obj;
    for (int i = 0; i < prod.size(); ++i)
      pos[pb2.to_left.map[i] * fc + pb2.to_right.map[i]] = i;
  }
  std::vector<int> cmp(fp.part->size(), -1);
  for (int i = 0; i < fp.part->size(); ++i) {
    int u = leg_a.map[i], v = leg_c.map[i];
    int w = pos[u * fc + v];
    if (w < 0) {
      if (why) *why = "comparison leaves the pullback of images";
      return false;
    }
    cmp[i] = w;
  }
  Morphism comparison{fp.part, pb2.obj, std::move(cmp)};
  if (!is_valid_morphism(comparison)) {
    if (why) *why = "comparison is not a morphism";
    return false;
  }
  if (!classify_morphism(comparison).iso) {
    if (why) *why = "comparison is not bijective";
    return false;
  }
  return true;
}

// dual comparison: the amalgamated sum of fixed parts versus the fixed part of
// the amalgamated sum
bool fix_preserves_pushout(const Morphism& s, const Morphism& h, std::string* why) {
  PushoutResult po = mset_pushout(s, h);
  SubalgebraResult fix_p = subalgebra_on(po.obj, mset_fix(*po.obj));
  SubalgebraResult fix_x = subalgebra_on(s.source, mset_fix(*s.source));
  SubalgebraResult fix_y = subalgebra_on(s.target, mset_fix(*s.target));
  SubalgebraResult fix_w = subalgebra_on(h.target, mset_fix(*h.target));
  auto restrict = [](const Morphism& f, const SubalgebraResult& from,
                     const SubalgebraResult& to) {
    std::vector<int> pos(f.target->size(), -1);
    for (std::size_t i = 0; i < to.member_indices.size(); ++i) pos[to.member_indices[i]] = i;
    std::vector<int> map(from.member_indices.size());
    for (std::size_t i = 0; i < from.member_indices.size(); ++i) {
      int v = pos[f.map[from.member_indices[i]]];
      if (v < 0) throw InternalError("fix restriction escapes");
      map[i] = v;
    }
    return Morphism{from.sub, to.sub, std::move(map)};
  };
  PushoutResult po_fix = mset_pushout(restrict(s, fix_x, fix_y), restrict(h, fix_x, fix_w));
  // induced map po_fix -> fix(P)
  std::vector<int> pos_p(po.obj->size(), -1);
  for (std::size_t i = 0; i < fix_p.member_indices.size(); ++i)
    pos_p[fix_p.member_indices[i]] = i;
  std::vector<int> cmp(po_fix.obj->size(), -1);
  for (int yi = 0; yi < fix_y.sub->size(); ++yi) {
    int target = pos_p[po.from_left.map[fix_y.member_indices[yi]]];
    int cls = po_fix.from_left.map[yi];
    if (target < 0) { if (why) *why = "fixed point lost in the sum"; return false; }
    if (cmp[cls] != -1 && cmp[cls] != target) {
      if (why) *why = "comparison ill-defined";
      return false;
    }
    cmp[cls] = target;
  }
  for (int wi = 0; wi < fix_w.sub->size(); ++wi) {
    int target = pos_p[po.from_right.map[fix_w.member_indices[wi]]];
    int cls = po_fix.from_right.map[wi];
    if (target < 0) { if (why) *why = "fixed point lost in the sum"; return false; }
    if (cmp[cls] != -1 && cmp[cls] != target) {
      if (why) *why = "comparison ill-defined";
      return false;
    }
    cmp[cls] = target;
  }
  for (int v : cmp)
    if (v < 0) { if (why) *why = "comparison partial"; return false; }
  Morphism comparison{po_fix.obj, fix_p.sub, std::move(cmp)};
  if (!is_valid_morphism(comparison) || !classify_morphism(comparison).iso) {
    if (why) *why = "fixed-part comparison is not an isomorphism";
    return false;
  }
  return true;
}

ConditionReport check_condition_p(const TheoryHandle& th, const Catalog& cat, HomCache& homs) {
  ConditionReport rep;
  rep.condition = "P";
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());
  std::vector<FailureSlot> slots(objs.size());
  std::atomic<int> arrows{0};

  if (!th.dual) {
    par::for_index(objs.size(), [&](std::size_t ai) {
      const auto& a = objs[ai];
      for (const Congruence& part : all_congruences(*a)) {
        QuotientResult q = quotient(a, part);
        // split epimorphisms only
        bool split = false;
        for (const Morphism& s : enumerate_homs(q.quot, a))
          if (compose(q.projection, s).map == identity_morphism(q.quot).map) {
            split = true;
            break;
          }
        if (!split) continue;
        for (const auto& c : objs) {
          if (!same_family(*c, *a)) continue;
          for (const Morphism& g : enumerate_homs(c, q.quot)) {
            if (!zero_part_inverted(g)) continue;
            ++arrows;
            std::string why;
            if (!reflector_preserves_pullback(th, q.projection, g, &why)) {
              slots[ai] = {true, "reflector breaks a split-epi pullback: " + why, g, a};
              return;
            }
          }
        }
      }
    });
  } else {
    par::for_index(objs.size(), [&](std::size_t xi) {
      const auto& x = objs[xi];
      for (const auto& y : objs) {
        if (!same_family(*y, *x)) continue;
        for (const Morphism& s : homs.homs(x, y)) {
          if (!classify_morphism(s).mono) continue;
          bool split = false;
          for (const Morphism& r : homs.homs(y, x))
            if (compose(r, s).map == identity_morphism(x).map) { split = true; break; }
          if (!split) continue;
          for (const auto& w : objs) {
            if (!same_family(*w, *x)) continue;
            for (const Morphism& h : homs.homs(x, w)) {
              bool xe = x->size() == 0, we = w->size() == 0;
              if (xe != we) continue;  // not inverted by the dual zero-part functor
              ++arrows;
              std::string why;
              if (!fix_preserves_pushout(s, h, &why)) {
                slots[xi] = {true, "fixed-point reflector breaks a split-mono sum: " + why, h, x};
                return;
              }
            }
          }
        }
      }
    });
  }
  rep.arrows_scanned = arrows.load();
  merge_failures(rep, slots);
  return rep;
}

}  // namespace

ConditionReport check_condition(const TheoryHandle& th, const std::string& tag,
                                const Catalog& cat, HomCache& homs) {
  // a broken theory is reported here rather than poisoning the sweeps below
  ConditionReport axioms = check_axioms(th, cat, homs);
  if (tag == "axioms") return axioms;
  if (!axioms.verdict) {
    axioms.condition = tag;
    return axioms;
  }
  if (tag == "N") return check_condition_n(th, cat, homs);
  if (tag == "M") return check_condition_m(th, cat, homs);
  if (tag == "Mprime") return check_condition_mprime(th, cat, homs);
  if (tag == "S") return check_condition_s(th, cat, homs);
  if (tag == "P") return check_condition_p(th, cat, homs);
  throw DomainError("unknown condition '" + tag + "'");
}

ConditionReport check_heyting_localization(const TheoryHandle& th, const Catalog& cat,
                                           HomCache& homs) {
  ConditionReport rep;
  rep.condition = "localization";
  if (th.family != Kind::Heyting) throw DomainError("localization check: heyting only");
  const auto objs = family_objects(cat);
  rep.objects_scanned = static_cast<int>(objs.size());
  std::vector<FailureSlot> slots(objs.size());
  std::atomic<int> arrows{0};
  par::for_index(objs.size(), [&](std::size_t li) {
    const auto& l = objs[li];
    for (const auto& h1 : objs)
      for (const auto& h2 : objs)
        for (const Morphism& f : homs.homs(h1, l))
          for (const Morphism& g : homs.homs(h2, l)) {
            ++arrows;
            std::string why;
            if (!reflector_preserves_pullback(th, f, g, &why)) {
              slots[li] = {true, "reflector breaks a pullback: " + why, f, l};
              return;
            }
          }
  });
  rep.arrows_scanned = arrows.load();
  merge_failures(rep, slots);
  return rep;
}

// ---------------------------------------------------------------------------------
// factorization-system driver
// ---------------------------------------------------------------------------------

namespace {

struct ERep {
  StructPtr base;       // A (primal) / X (dual)
  Morphism arrow;       // projection A ->> Q (primal) / inclusion C >-> X (dual)
  Congruence partition; // primal only
};

std::vector<ERep> e_representatives(const TheoryHandle& th, const Catalog& cat) {
  std::vector<ERep> reps;
  for (const auto& a : cat.instances) {
    if (!th.dual) {
      for (const Congruence& c : all_congruences(*a)) {
        QuotientResult q = quotient(a, c);
        if (in_E(th, q.projection)) reps.push_back({a, q.projection, c});
      }
    } else {
      for (const auto& members : closed_subsets(*a)) {
        SubalgebraResult sub = subalgebra_on(a, members);
        if (in_E(th, sub.inclusion)) reps.push_back({a, sub.inclusion, {}});
      }
    }
  }
  return reps;
}

}  // namespace

SystemReport verify_factorization_system(const TheoryHandle& th, const Catalog& cat,
                                         HomCache& homs) {
  SystemReport rep;
  const auto objs = cat.instances;

  // 1. every catalog hom factors, closed form against generic route
  {
    std::vector<std::pair<const StructPtr*, const StructPtr*>> pairs;
    for (const auto& a : objs)
      for (const auto& b : objs)
        if (same_family(*a, *b)) pairs.emplace_back(&a, &b);
    std::vector<int> counts(pairs.size(), 0);
    std::vector<std::string> errors(pairs.size());
    par::for_index(pairs.size(), [&](std::size_t i) {
      for (const Morphism& f : homs.homs(*pairs[i].first, *pairs[i].second)) {
        try {
          factorize(th, f);
        } catch (const InternalError& e) {
          errors[i] = e.what();
          return;
        }
        ++counts[i];
      }
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!errors[i].empty()) {
        rep.ok = false;
        rep.detail = errors[i];
        return rep;
      }
      rep.homs_factored += counts[i];
    }
  }

  // 2. lifting property: every commuting catalog square has a diagonal (the
  //    diagonal is unique because the E-side is epi/mono in the respective
  //    direction); a literal sampled square cross-checks uniqueness below
  std::vector<ERep> reps = e_representatives(th, cat);
  {
    // cache of M-membership flags per hom set
    std::map<std::pair<const FiniteStructure*, const FiniteStructure*>, std::vector<char>>
        mflags;
    for (const auto& c : objs)
      for (const auto& d : objs) {
        if (!same_family(*c, *d)) continue;
        const auto& hs = homs.homs(c, d);
        std::vector<char> flags(hs.size());
        for (std::size_t i = 0; i < hs.size(); ++i) flags[i] = in_M(th, hs[i]) ? 1 : 0;
        mflags[{c.get(), d.get()}] = std::move(flags);
      }
    std::vector<FailureSlot> slots(reps.size());
    std::atomic<long long> checked{0};
    par::for_index(reps.size(), [&](std::size_t ri) {
      const ERep& er = reps[ri];
      for (const auto& c : objs) {
        if (!same_family(*c, *er.base)) continue;
        if (!th.dual) {
          for (const Morphism& g : homs.homs(er.base, c)) {
            ++checked;
            // pairs that the diagonal would need e to collapse
            std::vector<std::pair<int, int>> obstruction;
            std::vector<int> rep_of(er.partition.num_classes, -1);
            for (int x = 0; x < er.base->size(); ++x) {
              int cl = er.partition.class_of[x];
              if (rep_of[cl] == -1) rep_of[cl] = x;
              else if (g.map[rep_of[cl]] != g.map[x])
                obstruction.emplace_back(g.map[rep_of[cl]], g.map[x]);
            }
            if (obstruction.empty()) continue;  // g factors; diagonal always exists
            for (const auto& d : objs) {
              if (!same_family(*d, *c)) continue;
              const auto& hs = homs.homs(c, d);
              const auto& flags = mflags.at({c.get(), d.get()});
              for (std::size_t mi = 0; mi < hs.size(); ++mi) {
                if (!flags[mi]) continue;
                bool commutes = true;
                for (auto [u, v] : obstruction)
                  if (hs[mi].map[u] != hs[mi].map[v]) { commutes = false; break; }
                if (commutes) {
                  slots[ri] = {true, "commuting square admits no diagonal", hs[mi], er.base};
                  return;
                }
              }
            }
          }
        } else {
          // dual form: subsets instead of partitions
          std::set<int> cset(er.arrow.map.begin(), er.arrow.map.end());
          for (const Morphism& g : homs.homs(c, er.base)) {
            ++checked;
            bool inside = true;
            for (int v : g.map)
              if (!cset.count(v)) { inside = false; break; }
            if (inside) continue;
            for (const auto& d : objs) {
              if (!same_family(*d, *c)) continue;
              const auto& hs = homs.homs(d, c);
              const auto& flags = mflags.at({d.get(), c.get()});
              for (std::size_t mi = 0; mi < hs.size(); ++mi) {
                if (!flags[mi]) continue;
                bool commutes = true;
                for (int w : hs[mi].map)
                  if (!cset.count(g.map[w])) { commutes = false; break; }
                if (commutes) {
                  slots[ri] = {true, "dual commuting square admits no diagonal", hs[mi],
                               er.base};
                  return;
                }
              }
            }
          }
        }
      }
    });
    rep.ortho_checked = static_cast<int>(checked.load());
    for (const auto& s : slots)
      if (s.failed) {
        rep.ok = false;
        rep.detail = s.detail;
        return rep;
      }
  }

  // literal sampled cross-check of the lifting property, diagonal uniqueness included
  {
    int sampled = 0;
    for (const ERep& er : reps) {
      if (sampled >= 3) break;
      for (const auto& c : objs) {
        if (sampled >= 3) break;
        if (!same_family(*c, *er.base)) continue;
        for (const auto& d : objs) {
          if (!same_family(*d, *c)) continue;
          const auto& hs = homs.homs(th.dual ? d : c, th.dual ? c : d);
          for (const Morphism& m : hs) {
            if (!in_M(th, m)) continue;
            OrthogonalityReport orep = check_orthogonality(th, er.arrow, m, objs, homs);
            if (!orep.ok) {
              rep.ok = false;
              rep.detail = "sampled literal lifting check failed: " + orep.detail;
              return rep;
            }
            ++sampled;
            break;
          }
          if (sampled >= 3) break;
        }
      }
    }
  }

  // 3. stability: pullbacks of E-arrows along arrows inverted by the zero-part functor
  {
    std::vector<FailureSlot> slots(reps.size());
    std::atomic<int> checked{0};
    par::for_index(reps.size(), [&](std::size_t ri) {
      const ERep& er = reps[ri];
      if (!th.dual) {
        for (const auto& c : objs) {
          if (!same_family(*c, *er.base)) continue;
          for (const Morphism& g : enumerate_homs(c, er.arrow.target)) {
            if (!zero_part_inverted(g)) continue;
            ++checked;
            PullbackResult pb = pullback(er.arrow, g);
            if (!in_E(th, pb.to_right)) {
              slots[ri] = {true, "pullback of an E-arrow left the class", g, er.base};
              return;
            }
          }
        }
      } else {
        for (const auto& v : objs) {
          if (!same_family(*v, *er.base)) continue;
          for (const Morphism& h : enumerate_homs(er.arrow.source, v)) {
            bool ce = er.arrow.source->size() == 0, ve = v->size() == 0;
            if (ce != ve) continue;
            ++checked;
            PushoutResult po = mset_pushout(er.arrow, h);
            if (!in_E(th, po.from_right)) {
              slots[ri] = {true, "dual pullback of an E-arrow left the class", h, er.base};
              return;
            }
          }
        }
      }
    });
    rep.stability_checked = checked.load();
    for (const auto& s : slots)
      if (s.failed) {
        rep.ok = false;
        rep.detail = s.detail;
        return rep;
      }
  }

  return rep;
}

}  // namespace tordec
