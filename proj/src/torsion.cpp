#include "tordec/torsion.hpp"

#include <set>

namespace tordec {

// --- MV ---------------------------------------------------------------------

std::vector<int> mv_radical(const FiniteStructure& a) {
  int n = a.size();
  MvDerived d = derive_mv_tables(a);
  std::vector<int> rad = {0};
  for (int x = 1; x < n; ++x) {
    bool inf = true;
    int acc = 0;  // 0·x
    for (int k = 0; k <= n; ++k) {
      if (!d.leq[acc][a.neg[x]]) { inf = false; break; }
      acc = a.oplus[acc][x];
    }
    if (inf) rad.push_back(x);
  }
  return rad;
}

SubalgebraResult mv_perfect_part(const StructPtr& a) {
  std::vector<int> rad = mv_radical(*a);
  std::set<int> members(rad.begin(), rad.end());
  for (int x = 0; x < a->size(); ++x)
    if (members.count(a->neg[x])) members.insert(x);
  return subalgebra_on(a, std::vector<int>(members.begin(), members.end()));
}

QuotientResult mv_semisimple_quotient(const StructPtr& a) {
  std::vector<int> rad = mv_radical(*a);
  std::set<int> rs(rad.begin(), rad.end());
  MvDerived d = derive_mv_tables(*a);
  int n = a->size();
  UnionFind uf(n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (rs.count(d.dist[x][y])) uf.unite(x, y);
  std::vector<int> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = uf.find(i);
  return quotient(a, partition_congruence(*a, std::move(raw)));
}

bool mv_is_perfect(const FiniteStructure& a) {
  std::vector<int> rad = mv_radical(a);
  std::set<int> rs(rad.begin(), rad.end());
  for (int x = 0; x < a.size(); ++x)
    if (!rs.count(x) && !rs.count(a.neg[x])) return false;
  return true;
}

bool mv_is_semisimple(const FiniteStructure& a) { return mv_radical(a).size() == 1; }

// --- Heyting ------------------------------------------------------------------

namespace {
int heyting_not(const FiniteStructure& h, int x) { return h.imp[x][h.bottom]; }
}  // namespace

std::vector<int> heyting_regular_elements(const FiniteStructure& h) {
  std::vector<int> out;
  for (int x = 0; x < h.size(); ++x)
    if (heyting_not(h, heyting_not(h, x)) == x) out.push_back(x);
  return out;
}

HeytingReflection heyting_regulars(const StructPtr& h) {
  std::vector<int> reg = heyting_regular_elements(*h);
  int k = static_cast<int>(reg.size());
  std::vector<int> pos(h->size(), -1);
  for (int i = 0; i < k; ++i) pos[reg[i]] = i;
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = h->elements[reg[i]];
  Table meet(k, std::vector<int>(k)), join(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      meet[i][j] = pos[h->meet[reg[i]][reg[j]]];
      int jn = heyting_not(*h, h->meet[heyting_not(*h, reg[i])][heyting_not(*h, reg[j])]);
      join[i][j] = pos[jn];
    }
  StructPtr f = make_heyting(h->name + ".reg", labels, meet, join, pos[h->bottom], pos[h->top]);
  std::vector<int> unit(h->size());
  for (int x = 0; x < h->size(); ++x) unit[x] = pos[heyting_not(*h, heyting_not(*h, x))];
  HeytingReflection r;
  r.regulars = f;
  r.unit = Morphism{h, f, std::move(unit)};
  if (!is_valid_morphism(r.unit)) throw InternalError("heyting unit is not a morphism");
  return r;
}

SubalgebraResult heyting_pseudo_det_part(const StructPtr& h) {
  std::vector<int> members;
  for (int x = 0; x < h->size(); ++x) {
    int nx = heyting_not(*h, x);
    if (nx == h->bottom || nx == h->top) members.push_back(x);
  }
  return subalgebra_on(h, std::move(members));
}

bool heyting_is_pseudo_deterministic(const FiniteStructure& h) {
  for (int x = 0; x < h.size(); ++x) {
    int nx = heyting_not(h, x);
    if (nx != h.bottom && nx != h.top) return false;
  }
  return true;
}

bool heyting_is_boolean(const FiniteStructure& h) {
  return static_cast<int>(heyting_regular_elements(h).size()) == h.size();
}

// --- MSet -----------------------------------------------------------------------

std::vector<int> mset_fix(const FiniteStructure& x) {
  std::vector<int> out;
  for (int i = 0; i < x.size(); ++i) {
    bool fix = true;
    for (int g = 0; g < x.monoid.size(); ++g)
      if (x.action[g][i] != i) { fix = false; break; }
    if (fix) out.push_back(i);
  }
  return out;
}

QuotientResult mset_contract(const StructPtr& x) {
  std::vector<int> fix = mset_fix(*x);
  if (fix.empty()) {
    QuotientResult r;
    r.quot = x;
    r.projection = identity_morphism(x);
    return r;
  }
  std::set<int> fs(fix.begin(), fix.end());
  std::vector<int> raw(x->size());
  for (int i = 0; i < x->size(); ++i) raw[i] = fs.count(i) ? x->size() : i;
  return quotient(x, partition_congruence(*x, std::move(raw)));
}

// --- Coslice --------------------------------------------------------------------

std::vector<int> coslice_divisible_part(const FiniteStructure& a) {
  if (a.kind != Kind::Coslice) throw DomainError("coslice_divisible_part: wrong family");
  // stabilize x |-> m·x on the whole group
  std::set<int> cur;
  for (int i = 0; i < a.size(); ++i) cur.insert(i);
  while (true) {
    std::set<int> next;
    for (int x : cur) {
      int acc = 0;
      for (int i = 0; i < a.modulus; ++i) acc = a.add[acc][x];
      next.insert(acc);
    }
    if (next == cur) break;
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

std::vector<int> coslice_divisible_part_chain_oracle(const FiniteStructure& a) {
  // x is infinitely divisible iff a backward chain of length |A| exists
  int n = a.size();
  auto times_m = [&](int x) {
    int acc = 0;
    for (int i = 0; i < a.modulus; ++i) acc = a.add[acc][x];
    return acc;
  };
  std::vector<bool> alive(n, true);
  for (int depth = 0; depth < n; ++depth) {
    std::vector<bool> next(n, false);
    for (int y = 0; y < n; ++y)
      if (alive[y]) next[times_m(y)] = true;
    alive = std::move(next);
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (alive[i]) out.push_back(i);
  return out;
}

SubalgebraResult coslice_torsion_part(const StructPtr& a) {
  std::vector<int> gens = coslice_divisible_part(*a);
  gens.push_back(a->basepoint);
  return subalgebra_generated(a, gens);
}

QuotientResult coslice_reflect(const StructPtr& a) {
  std::vector<int> d = coslice_divisible_part(*a);
  std::set<int> ds(d.begin(), d.end());
  int n = a->size();
  UnionFind uf(n);
  for (int x = 0; x < n; ++x)
    for (int g : d) uf.unite(x, a->add[x][g]);
  std::vector<int> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = uf.find(i);
  return quotient(a, partition_congruence(*a, std::move(raw)));
}

// --- theory handles ------------------------------------------------------------

bool TheoryHandle::is_torsion(const FiniteStructure& a) const {
  switch (family) {
    case Kind::MV: return swapped ? mv_is_semisimple(a) : mv_is_perfect(a);
    case Kind::Heyting: return heyting_is_pseudo_deterministic(a);
    case Kind::MSet: return static_cast<int>(mset_fix(a).size()) <= 1;
    case Kind::Coslice: {
      std::vector<int> gens = coslice_divisible_part(a);
      gens.push_back(a.basepoint);
      std::vector<int> closure = subgroup_generated(a, gens);
      return static_cast<int>(closure.size()) == a.size();
    }
  }
  return false;
}

bool TheoryHandle::is_torsion_free(const FiniteStructure& a) const {
  switch (family) {
    case Kind::MV: return swapped ? mv_is_perfect(a) : mv_is_semisimple(a);
    case Kind::Heyting: return heyting_is_boolean(a);
    case Kind::MSet: return static_cast<int>(mset_fix(a).size()) == a.size();
    case Kind::Coslice: return coslice_divisible_part(a).size() == 1;
  }
  return false;
}

CoreflectResult TheoryHandle::coreflect(const StructPtr& a) const {
  CoreflectResult r;
  switch (family) {
    case Kind::MV: {
      SubalgebraResult s = mv_perfect_part(a);
      r.part = s.sub;
      r.counit = s.inclusion;
      return r;
    }
    case Kind::Heyting: {
      SubalgebraResult s = heyting_pseudo_det_part(a);
      r.part = s.sub;
      r.counit = s.inclusion;
      return r;
    }
    case Kind::MSet: {
      QuotientResult q = mset_contract(a);
      r.part = q.quot;
      r.counit = q.projection;  // dual presentation A ->> T(A)
      return r;
    }
    case Kind::Coslice: {
      SubalgebraResult s = coslice_torsion_part(a);
      r.part = s.sub;
      r.counit = s.inclusion;
      return r;
    }
  }
  throw DomainError("unknown family");
}

ReflectResult TheoryHandle::reflect(const StructPtr& a) const {
  ReflectResult r;
  switch (family) {
    case Kind::MV: {
      QuotientResult q = mv_semisimple_quotient(a);
      r.part = q.quot;
      r.unit = q.projection;
      return r;
    }
    case Kind::Heyting: {
      HeytingReflection h = heyting_regulars(a);
      r.part = h.regulars;
      r.unit = h.unit;
      return r;
    }
    case Kind::MSet: {
      SubalgebraResult s = subalgebra_on(a, mset_fix(*a));
      r.part = s.sub;
      r.unit = s.inclusion;  // dual presentation F(A) >-> A
      return r;
    }
    case Kind::Coslice: {
      QuotientResult q = coslice_reflect(a);
      r.part = q.quot;
      r.unit = q.projection;
      return r;
    }
  }
  throw DomainError("unknown family");
}

TheoryHandle TheoryHandle::make(const std::string& tag, int modulus) {
  TheoryHandle t;
  t.tag = tag;
  if (tag == "mv") {
    t.family = Kind::MV;
  } else if (tag == "mv-swapped") {
    t.family = Kind::MV;
    t.swapped = true;
  } else if (tag == "heyting") {
    t.family = Kind::Heyting;
  } else if (tag == "mset") {
    t.family = Kind::MSet;
    t.dual = true;
  } else if (tag == "coslice") {
    t.family = Kind::Coslice;
    t.modulus = modulus;
  } else {
    throw DomainError("unknown theory '" + tag + "'");
  }
  return t;
}

// --- decompose -------------------------------------------------------------------

SequenceCheck check_canonical_sequence(const TheoryHandle& th, const StructPtr& a) {
  SequenceCheck out;
  CoreflectResult co = th.coreflect(a);
  ReflectResult re = th.reflect(a);
  auto fail = [&](const std::string& r, const Morphism& w) {
    out.ok = false;
    out.reason = r;
    out.witness = w;
    return out;
  };
  if (!th.is_torsion(*co.part))
    return fail("left end fails the torsion predicate", co.counit);
  if (!th.is_torsion_free(*re.part))
    return fail("right end fails the torsion-free predicate", re.unit);
  if (!th.dual) {
    // t must be the Z-kernel of eta: same subobject of A
    ZKernelWitness zk = zkernel(re.unit);
    std::set<int> got(zk.arrow.map.begin(), zk.arrow.map.end());
    std::set<int> want(co.counit.map.begin(), co.counit.map.end());
    if (got != want) return fail("counit is not the Z-kernel of the unit", re.unit);
    auto zc = zcokernel(co.counit);
    if (!zc) return fail("counit has no Z-cokernel", co.counit);
    if (kernel_partition(zc->arrow) != kernel_partition(re.unit))
      return fail("unit is not the Z-cokernel of the counit", re.unit);
  } else {
    // opposite category: kernels contract, cokernels cut out fixed points
    ZKernelWitness zk = zkernel(re.unit);  // unit presented as F(A) >-> A
    if (kernel_partition(zk.arrow) != kernel_partition(co.counit))
      return fail("counit is not the Z-kernel of the unit (dual)", re.unit);
    auto zc = zcokernel(co.counit);  // counit presented as A ->> T(A)
    if (!zc) return fail("counit has no Z-cokernel (dual)", co.counit);
    std::set<int> got(zc->arrow.map.begin(), zc->arrow.map.end());
    std::set<int> want(re.unit.map.begin(), re.unit.map.end());
    if (got != want) return fail("unit is not the Z-cokernel of the counit (dual)", re.unit);
  }
  return out;
}

ZExactSequence decompose(const TheoryHandle& th, const StructPtr& a) {
  SequenceCheck chk = check_canonical_sequence(th, a);
  if (!chk.ok) throw InternalError("decompose(" + a->name + "): " + chk.reason);
  ZExactSequence seq;
  seq.object = a;
  seq.dual = th.dual;
  CoreflectResult co = th.coreflect(a);
  ReflectResult re = th.reflect(a);
  seq.torsion_part = co.part;
  seq.torsion_free_part = re.part;
  seq.counit = co.counit;
  seq.unit = re.unit;
  seq.zker = zkernel(re.unit);
  auto zc = zcokernel(co.counit);
  seq.zcoker = *zc;
  return seq;
}

FunctorialAction functorial_action(const TheoryHandle& th, const Morphism& f) {
  FunctorialAction out;
  CoreflectResult ca = th.coreflect(f.source), cb = th.coreflect(f.target);
  ReflectResult ra = th.reflect(f.source), rb = th.reflect(f.target);
  if (!th.dual) {
    // T(f): restriction of f, F(f): induced on quotients
    std::vector<int> pos(f.target->size(), -1);
    for (int i = 0; i < cb.part->size(); ++i) pos[cb.counit.map[i]] = i;
    std::vector<int> tmap(ca.part->size());
    for (int i = 0; i < ca.part->size(); ++i) {
      int v = pos[f.map[ca.counit.map[i]]];
      if (v < 0) throw InternalError("functorial_action: torsion part not preserved");
      tmap[i] = v;
    }
    out.on_torsion = Morphism{ca.part, cb.part, std::move(tmap)};
    std::vector<int> fmap(ra.part->size(), -1);
    for (int x = 0; x < f.source->size(); ++x) {
      int cls = ra.unit.map[x];
      int v = rb.unit.map[f.map[x]];
      if (fmap[cls] == -1) fmap[cls] = v;
      else if (fmap[cls] != v) throw InternalError("functorial_action: unit not natural");
    }
    out.on_torsion_free = Morphism{ra.part, rb.part, std::move(fmap)};
  } else {
    // dual family: T(f) induced on contractions, F(f) restricted to fixed points
    std::vector<int> tmap(ca.part->size(), -1);
    for (int x = 0; x < f.source->size(); ++x) {
      int cls = ca.counit.map[x];
      int v = cb.counit.map[f.map[x]];
      if (tmap[cls] == -1) tmap[cls] = v;
      else if (tmap[cls] != v)
        throw InternalError("functorial_action: contraction not preserved");
    }
    out.on_torsion = Morphism{ca.part, cb.part, std::move(tmap)};
    std::vector<int> pos(f.target->size(), -1);
    for (int i = 0; i < rb.part->size(); ++i) pos[rb.unit.map[i]] = i;
    std::vector<int> fmap(ra.part->size());
    for (int i = 0; i < ra.part->size(); ++i) {
      int v = pos[f.map[ra.unit.map[i]]];
      if (v < 0) throw InternalError("functorial_action: fixed points not preserved");
      fmap[i] = v;
    }
    out.on_torsion_free = Morphism{ra.part, rb.part, std::move(fmap)};
  }
  if (!is_valid_morphism(out.on_torsion) || !is_valid_morphism(out.on_torsion_free))
    throw InternalError("functorial_action: induced maps fail preservation");
  return out;
}

}  // namespace tordec
