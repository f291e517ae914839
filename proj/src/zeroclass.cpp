#include "tordec/zeroclass.hpp"

#include <set>

namespace tordec {

namespace {

std::vector<int> fixed_points(const FiniteStructure& x) {
  std::vector<int> out;
  for (int i = 0; i < x.size(); ++i) {
    bool fix = true;
    for (int g = 0; g < x.monoid.size(); ++g)
      if (x.action[g][i] != i) { fix = false; break; }
    if (fix) out.push_back(i);
  }
  return out;
}

std::vector<int> zero_part_members(const FiniteStructure& a) {
  switch (a.kind) {
    case Kind::MV: {
      std::set<int> m{0, a.mv_one()};
      return {m.begin(), m.end()};
    }
    case Kind::Heyting: {
      std::set<int> m{a.bottom, a.top};
      return {m.begin(), m.end()};
    }
    case Kind::Coslice: return subgroup_generated(a, {a.basepoint});
    case Kind::MSet: throw InternalError("zero_part_members: dual family");
  }
  throw DomainError("unknown kind");
}

}  // namespace

bool in_zero_class(const FiniteStructure& a) {
  switch (a.kind) {
    case Kind::MV: return a.size() <= 2;
    case Kind::Heyting: return a.size() <= 2;
    case Kind::MSet: return a.size() <= 1;
    case Kind::Coslice:
      return static_cast<int>(subgroup_generated(a, {a.basepoint}).size()) == a.size();
  }
  return false;
}

ZeroPart zero_part(const StructPtr& a) {
  ZeroPart z;
  if (a->kind == Kind::MSet) {
    z.dual = true;
    if (a->size() == 0) {
      z.part = empty_mset(a->monoid);
      z.arrow = Morphism{a, z.part, {}};
    } else {
      z.part = terminal_structure(Kind::MSet, 0, &a->monoid);
      z.arrow = Morphism{a, z.part, std::vector<int>(a->size(), 0)};
    }
    return z;
  }
  SubalgebraResult sub = subalgebra_on(a, zero_part_members(*a));
  z.part = sub.sub;
  z.arrow = sub.inclusion;
  return z;
}

bool is_trivial(const Morphism& f) {
  if (f.source->kind == Kind::MSet) {
    if (f.source->size() == 0) return true;
    std::set<int> img(f.map.begin(), f.map.end());
    if (img.size() != 1) return false;
    int pt = *img.begin();
    for (int g = 0; g < f.target->monoid.size(); ++g)
      if (f.target->action[g][pt] != pt) return false;
    return true;
  }
  std::vector<int> zb = zero_part_members(*f.target);
  std::set<int> zset(zb.begin(), zb.end());
  for (int v : f.map)
    if (!zset.count(v)) return false;
  return true;
}

ZKernelWitness zkernel(const Morphism& f) {
  ZKernelWitness w;
  w.original = f;
  if (f.source->kind == Kind::MSet) {
    w.dual = true;
    // opposite-category kernel: contract the image of f in the codomain
    const StructPtr& b = f.target;
    if (f.source->size() == 0) {
      w.obj = b;
      w.arrow = identity_morphism(b);
    } else {
      std::vector<int> raw(b->size());
      std::set<int> img(f.map.begin(), f.map.end());
      for (int i = 0; i < b->size(); ++i) raw[i] = img.count(i) ? b->size() : i;
      QuotientResult q = quotient(b, partition_congruence(*b, std::move(raw)));
      w.obj = q.quot;
      w.arrow = q.projection;
    }
    ZeroPart za = zero_part(f.source);
    w.through = za.arrow;  // A ->> Z(A)
    if (f.source->size() == 0) {
      w.zero_leg = Morphism{za.part, w.obj, {}};
    } else {
      int cls = w.arrow.map[f.map[0]];
      w.zero_leg = Morphism{za.part, w.obj, {cls}};
    }
    return w;
  }
  std::vector<int> zb = zero_part_members(*f.target);
  std::set<int> zset(zb.begin(), zb.end());
  std::vector<int> members;
  for (int i = 0; i < f.source->size(); ++i)
    if (zset.count(f.map[i])) members.push_back(i);
  SubalgebraResult sub = subalgebra_on(f.source, std::move(members));
  ZeroPart zp = zero_part(f.target);
  std::vector<int> pos(f.target->size(), -1);
  for (std::size_t i = 0; i < zb.size(); ++i) pos[zb[i]] = static_cast<int>(i);
  w.obj = sub.sub;
  w.arrow = sub.inclusion;
  std::vector<int> chi(sub.member_indices.size());
  for (std::size_t i = 0; i < sub.member_indices.size(); ++i)
    chi[i] = pos[f.map[sub.member_indices[i]]];
  w.through = Morphism{sub.sub, zp.part, std::move(chi)};
  w.zero_leg = zp.arrow;
  return w;
}

std::optional<Morphism> max_quotient_in_zero_class(const StructPtr& a) {
  if (a->kind == Kind::MSet) {
    // in the opposite category: exists iff the carrier has at most one fixed point
    std::vector<int> fix = fixed_points(*a);
    if (fix.size() > 1) return std::nullopt;
    if (fix.empty()) {
      StructPtr e = empty_mset(a->monoid);
      return Morphism{e, a, {}};
    }
    StructPtr t = terminal_structure(Kind::MSet, 0, &a->monoid);
    return Morphism{t, a, {fix[0]}};
  }
  // least congruence whose quotient lies in the zero class
  auto quotient_in_z = [&](const Congruence& c) {
    switch (a->kind) {
      case Kind::MV:
      case Kind::Heyting: return c.num_classes <= 2;
      case Kind::Coslice: {
        std::set<int> hit;
        int x = 0;
        do {
          hit.insert(c.class_of[x]);
          x = a->add[x][a->basepoint];
        } while (x != 0);
        return static_cast<int>(hit.size()) == c.num_classes;
      }
      case Kind::MSet: break;
    }
    throw InternalError("quotient_in_z: unreachable");
  };
  std::vector<Congruence> candidates;
  for (Congruence& c : all_congruences(*a))
    if (quotient_in_z(c)) candidates.push_back(std::move(c));
  for (const Congruence& c : candidates) {
    bool minimum = true;
    for (const Congruence& other : candidates)
      if (!congruence_leq(c, other)) { minimum = false; break; }
    if (minimum) return quotient(a, c).projection;
  }
  return std::nullopt;
}

std::optional<ZCokernelWitness> zcokernel(const Morphism& f) {
  ZCokernelWitness w;
  w.original = f;
  if (f.source->kind == Kind::MSet) {
    w.dual = true;
    std::vector<int> fix = fixed_points(*f.target);
    if (fix.size() > 1) return std::nullopt;
    std::vector<int> members;
    if (fix.size() == 1)
      for (int i = 0; i < f.source->size(); ++i)
        if (f.map[i] == fix[0]) members.push_back(i);
    SubalgebraResult sub = subalgebra_on(f.source, std::move(members));
    w.obj = sub.sub;
    w.arrow = sub.inclusion;
    auto mq = max_quotient_in_zero_class(f.target);
    w.max_quot = *mq;  // M -> B
    w.zero_leg = Morphism{sub.sub, mq->source,
                          std::vector<int>(sub.member_indices.size(), 0)};
    return w;
  }
  auto mq = max_quotient_in_zero_class(f.source);
  if (!mq) return std::nullopt;
  // push the maximum quotient out along f
  std::vector<std::pair<int, int>> pairs;
  const std::vector<int>& cls = mq->map;
  std::vector<int> rep(mq->target->size(), -1);
  for (int i = 0; i < f.source->size(); ++i) {
    if (rep[cls[i]] == -1) rep[cls[i]] = i;
    else pairs.emplace_back(f.map[rep[cls[i]]], f.map[i]);
  }
  QuotientResult q = quotient(f.target, congruence_generated(*f.target, pairs));
  w.obj = q.quot;
  w.arrow = q.projection;
  w.max_quot = *mq;
  std::vector<int> zmap(mq->target->size());
  for (int c = 0; c < mq->target->size(); ++c) zmap[c] = q.projection.map[f.map[rep[c]]];
  w.zero_leg = Morphism{mq->target, q.quot, std::move(zmap)};
  if (!is_valid_morphism(w.zero_leg)) throw InternalError("zcokernel: bad pushout leg");
  return w;
}

TerminalMap terminal_map(const StructPtr& a) {
  TerminalMap t;
  if (a->kind == Kind::MSet) {
    t.dual = true;
    t.terminal = empty_mset(a->monoid);
    t.arrow = Morphism{t.terminal, a, {}};
    return t;
  }
  t.terminal = terminal_structure(a->kind, a->modulus);
  t.arrow = Morphism{a, t.terminal, std::vector<int>(a->size(), 0)};
  return t;
}

bool zero_part_inverted(const Morphism& f) {
  if (f.source->kind == Kind::MSet) {
    bool se = f.source->size() == 0, te = f.target->size() == 0;
    return se == te;
  }
  std::vector<int> za = zero_part_members(*f.source);
  std::vector<int> zb = zero_part_members(*f.target);
  if (za.size() != zb.size()) return false;
  std::set<int> hit;
  for (int x : za) hit.insert(f.map[x]);
  return hit == std::set<int>(zb.begin(), zb.end());
}

bool zkernel_universal(const ZKernelWitness& w, const std::vector<StructPtr>& objects,
                       HomCache& homs, std::string* why) {
  const Morphism& f = w.original;
  if (!w.dual) {
    for (const auto& e : objects) {
      if (!same_family(*e, *f.source)) continue;
      for (const Morphism& u : homs.homs(e, f.source)) {
        if (!is_trivial(compose(f, u))) continue;
        int count = 0;
        for (const Morphism& phi : homs.homs(e, w.obj))
          if (compose(w.arrow, phi).map == u.map) ++count;
        if (count != 1) {
          if (why)
            *why = "arrow from " + e->name + " factors " + std::to_string(count) + " times";
          return false;
        }
      }
    }
    return true;
  }
  // dual: every u: B -> E with u∘f trivial factors uniquely through q: B ->> Q
  for (const auto& e : objects) {
    if (!same_family(*e, *f.target)) continue;
    for (const Morphism& u : homs.homs(f.target, e)) {
      if (!is_trivial(compose(u, f))) continue;
      int count = 0;
      for (const Morphism& v : homs.homs(w.obj, e))
        if (compose(v, w.arrow).map == u.map) ++count;
      if (count != 1) {
        if (why) *why = "arrow into " + e->name + " factors " + std::to_string(count) + " times";
        return false;
      }
    }
  }
  return true;
}

bool zcokernel_universal(const ZCokernelWitness& w, const std::vector<StructPtr>& objects,
                         HomCache& homs, std::string* why) {
  const Morphism& f = w.original;
  if (!w.dual) {
    for (const auto& p : objects) {
      if (!same_family(*p, *f.target)) continue;
      for (const Morphism& u : homs.homs(f.target, p)) {
        if (!is_trivial(compose(u, f))) continue;
        int count = 0;
        for (const Morphism& th : homs.homs(w.obj, p))
          if (compose(th, w.arrow).map == u.map) ++count;
        if (count != 1) {
          if (why)
            *why = "arrow into " + p->name + " factors " + std::to_string(count) + " times";
          return false;
        }
      }
    }
    return true;
  }
  // dual: every w0: D -> A with f∘w0 trivial factors uniquely through j: C >-> A
  for (const auto& d : objects) {
    if (!same_family(*d, *f.source)) continue;
    for (const Morphism& u : homs.homs(d, f.source)) {
      if (!is_trivial(compose(f, u))) continue;
      int count = 0;
      for (const Morphism& psi : homs.homs(d, w.obj))
        if (compose(w.arrow, psi).map == u.map) ++count;
      if (count != 1) {
        if (why)
          *why = "arrow from " + d->name + " factors " + std::to_string(count) + " times";
        return false;
      }
    }
  }
  return true;
}

}  // namespace tordec
