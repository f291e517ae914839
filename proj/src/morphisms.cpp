#include "tordec/morphisms.hpp"

#include <numeric>
#include <set>

#include "tordec/parallel.hpp"

namespace tordec {

namespace {

void require_compatible(const FiniteStructure& a, const FiniteStructure& b) {
  if (!same_family(a, b))
    throw DomainError("structures '" + a.name + "' and '" + b.name +
                      "' are not in the same family");
}

}  // namespace

Morphism identity_morphism(StructPtr a) {
  Morphism f;
  f.map.resize(a->size());
  std::iota(f.map.begin(), f.map.end(), 0);
  f.source = a;
  f.target = std::move(a);
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!same_structure(*f.target, *g.source))
    throw DomainError("compose: middle objects differ");
  Morphism h;
  h.source = f.source;
  h.target = g.target;
  h.map.resize(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

bool is_valid_morphism(const Morphism& f) {
  const FiniteStructure& a = *f.source;
  const FiniteStructure& b = *f.target;
  if (!same_family(a, b)) return false;
  if (static_cast<int>(f.map.size()) != a.size()) return false;
  for (int v : f.map)
    if (v < 0 || v >= b.size()) return false;
  OpView va = op_view(a), vb = op_view(b);
  for (std::size_t c = 0; c < va.constants.size(); ++c)
    if (f.map[va.constants[c]] != vb.constants[c]) return false;
  int n = a.size();
  for (std::size_t u = 0; u < va.unary.size(); ++u)
    for (int x = 0; x < n; ++x)
      if (f.map[(*va.unary[u])[x]] != (*vb.unary[u])[f.map[x]]) return false;
  for (std::size_t t = 0; t < va.binary.size(); ++t)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (f.map[(*va.binary[t])[x][y]] != (*vb.binary[t])[f.map[x]][f.map[y]]) return false;
  return true;
}

MorphismFlags classify_morphism(const Morphism& f) {
  MorphismFlags fl;
  std::vector<bool> hit(f.target->size(), false);
  std::set<int> images;
  for (int v : f.map) {
    hit[v] = true;
    images.insert(v);
  }
  fl.mono = static_cast<int>(images.size()) == f.source->size();
  fl.epi = std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
  fl.iso = fl.mono && fl.epi;
  return fl;
}

namespace {

struct HomSearch {
  const FiniteStructure& a;
  const FiniteStructure& b;
  OpView va, vb;
  bool injective_only;
  std::vector<Morphism>* out;
  StructPtr ap, bp;

  // Forces images along operations; returns false on conflict.
  bool propagate(std::vector<int>& img) const {
    bool changed = true;
    int n = a.size();
    while (changed) {
      changed = false;
      for (std::size_t u = 0; u < va.unary.size(); ++u) {
        const auto& ua = *va.unary[u];
        const auto& ub = *vb.unary[u];
        for (int x = 0; x < n; ++x) {
          if (img[x] < 0) continue;
          int y = ua[x], w = ub[img[x]];
          if (img[y] < 0) {
            img[y] = w;
            changed = true;
          } else if (img[y] != w) {
            return false;
          }
        }
      }
      for (std::size_t t = 0; t < va.binary.size(); ++t) {
        const auto& ta = *va.binary[t];
        const auto& tb = *vb.binary[t];
        for (int x = 0; x < n; ++x) {
          if (img[x] < 0) continue;
          for (int y = 0; y < n; ++y) {
            if (img[y] < 0) continue;
            int z = ta[x][y], w = tb[img[x]][img[y]];
            if (img[z] < 0) {
              img[z] = w;
              changed = true;
            } else if (img[z] != w) {
              return false;
            }
          }
        }
      }
    }
    if (injective_only) {
      std::vector<bool> used(b.size(), false);
      for (int v : img) {
        if (v < 0) continue;
        if (used[v]) return false;
        used[v] = true;
      }
    }
    return true;
  }

  void run(std::vector<int> img) const {
    int n = a.size();
    int next = -1;
    for (int i = 0; i < n; ++i)
      if (img[i] < 0) { next = i; break; }
    if (next < 0) {
      Morphism m{ap, bp, img};
      out->push_back(std::move(m));
      return;
    }
    for (int v = 0; v < b.size(); ++v) {
      std::vector<int> trial = img;
      trial[next] = v;
      if (propagate(trial)) run(std::move(trial));
    }
  }
};

}  // namespace

std::vector<Morphism> enumerate_homs(const StructPtr& a, const StructPtr& b) {
  require_compatible(*a, *b);
  std::vector<Morphism> out;
  std::vector<int> img(a->size(), -1);
  HomSearch hs{*a, *b, op_view(*a), op_view(*b), false, &out, a, b};
  bool consistent = true;
  for (std::size_t c = 0; c < hs.va.constants.size(); ++c) {
    int& slot = img[hs.va.constants[c]];
    if (slot >= 0 && slot != hs.vb.constants[c]) consistent = false;
    slot = hs.vb.constants[c];
  }
  if (consistent && hs.propagate(img)) hs.run(std::move(img));
  std::sort(out.begin(), out.end(),
            [](const Morphism& x, const Morphism& y) { return x.map < y.map; });
  return out;
}

std::vector<Morphism> enumerate_isos(const StructPtr& a, const StructPtr& b) {
  if (!same_family(*a, *b) || a->size() != b->size()) return {};
  std::vector<Morphism> out;
  std::vector<int> img(a->size(), -1);
  HomSearch hs{*a, *b, op_view(*a), op_view(*b), true, &out, a, b};
  bool consistent = true;
  for (std::size_t c = 0; c < hs.va.constants.size(); ++c) {
    int& slot = img[hs.va.constants[c]];
    if (slot >= 0 && slot != hs.vb.constants[c]) consistent = false;
    slot = hs.vb.constants[c];
  }
  if (consistent && hs.propagate(img)) hs.run(std::move(img));
  std::vector<Morphism> isos;
  for (auto& m : out)
    if (classify_morphism(m).iso) isos.push_back(std::move(m));
  std::sort(isos.begin(), isos.end(),
            [](const Morphism& x, const Morphism& y) { return x.map < y.map; });
  return isos;
}

std::optional<Morphism> find_iso(const StructPtr& a, const StructPtr& b) {
  auto isos = enumerate_isos(a, b);
  if (isos.empty()) return std::nullopt;
  return isos.front();
}

std::vector<Morphism> enumerate_homs_naive(const StructPtr& a, const StructPtr& b) {
  require_compatible(*a, *b);
  int n = a->size(), m = b->size();
  std::vector<Morphism> out;
  std::vector<int> img(n, 0);
  if (n == 0) {
    out.push_back({a, b, {}});
    return out;
  }
  if (m == 0) return out;
  while (true) {
    Morphism f{a, b, img};
    if (is_valid_morphism(f)) out.push_back(f);
    int pos = n - 1;
    while (pos >= 0 && img[pos] == m - 1) img[pos--] = 0;
    if (pos < 0) break;
    ++img[pos];
  }
  return out;
}

namespace {

StructPtr restrict_to(const FiniteStructure& a, const std::vector<int>& members,
                      const std::string& name) {
  int n = static_cast<int>(members.size());
  std::vector<int> pos(a.size(), -1);
  for (int i = 0; i < n; ++i) pos[members[i]] = i;
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = a.elements[members[i]];

  auto sub_unary = [&](const std::vector<int>& u) {
    std::vector<int> r(n);
    for (int i = 0; i < n; ++i) r[i] = pos[u[members[i]]];
    return r;
  };
  auto sub_binary = [&](const Table& t) {
    Table r(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i][j] = pos[t[members[i]][members[j]]];
    return r;
  };

  switch (a.kind) {
    case Kind::MV: return make_mv(name, labels, sub_binary(a.oplus), sub_unary(a.neg));
    case Kind::Heyting:
      return make_heyting(name, labels, sub_binary(a.meet), sub_binary(a.join), pos[a.bottom],
                          pos[a.top]);
    case Kind::MSet: {
      Table act(a.monoid.size(), std::vector<int>(n));
      for (int m = 0; m < a.monoid.size(); ++m)
        for (int i = 0; i < n; ++i) act[m][i] = pos[a.action[m][members[i]]];
      return make_mset(name, a.monoid, labels, act);
    }
    case Kind::Coslice:
      return make_coslice(name, labels, sub_binary(a.add), pos[a.basepoint], a.modulus);
  }
  throw DomainError("unknown kind");
}

bool subset_closed(const FiniteStructure& a, const std::vector<bool>& in) {
  OpView v = op_view(a);
  for (int c : v.constants)
    if (!in[c]) return false;
  int n = a.size();
  for (const auto* u : v.unary)
    for (int x = 0; x < n; ++x)
      if (in[x] && !in[(*u)[x]]) return false;
  for (const auto* t : v.binary)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (in[x] && in[y] && !in[(*t)[x][y]]) return false;
  return true;
}

}  // namespace

SubalgebraResult subalgebra_generated(const StructPtr& a, const std::vector<int>& subset) {
  int n = a->size();
  std::vector<bool> in(n, false);
  OpView v = op_view(*a);
  for (int c : v.constants) in[c] = true;
  for (int x : subset) {
    if (x < 0 || x >= n) throw DomainError("subalgebra_generated: index out of range");
    in[x] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto* u : v.unary)
      for (int x = 0; x < n; ++x)
        if (in[x] && !in[(*u)[x]]) { in[(*u)[x]] = true; changed = true; }
    for (const auto* t : v.binary)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (in[x] && in[y] && !in[(*t)[x][y]]) { in[(*t)[x][y]] = true; changed = true; }
  }
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if (in[i]) members.push_back(i);
  return subalgebra_on(a, std::move(members));
}

SubalgebraResult subalgebra_on(const StructPtr& a, std::vector<int> closed_subset) {
  std::sort(closed_subset.begin(), closed_subset.end());
  closed_subset.erase(std::unique(closed_subset.begin(), closed_subset.end()),
                      closed_subset.end());
  std::vector<bool> in(a->size(), false);
  for (int x : closed_subset) in[x] = true;
  if (!subset_closed(*a, in)) throw InternalError("subalgebra_on: subset not closed");
  SubalgebraResult r;
  r.sub = restrict_to(*a, closed_subset, a->name + ".sub");
  r.inclusion = Morphism{r.sub, a, closed_subset};
  r.member_indices = std::move(closed_subset);
  return r;
}

std::vector<int> subgroup_generated(const FiniteStructure& a, const std::vector<int>& gens) {
  if (a.kind != Kind::Coslice) throw DomainError("subgroup_generated: coslice only");
  int n = a.size();
  std::vector<bool> in(n, false);
  in[0] = true;
  for (int g : gens) in[g] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      if (!in[x]) continue;
      if (!in[a.neg[x]]) { in[a.neg[x]] = true; changed = true; }
      for (int y = 0; y < n; ++y)
        if (in[y] && !in[a.add[x][y]]) { in[a.add[x][y]] = true; changed = true; }
    }
  }
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if (in[i]) members.push_back(i);
  return members;
}

Congruence identity_congruence(const FiniteStructure& a) {
  Congruence c;
  c.class_of.resize(a.size());
  std::iota(c.class_of.begin(), c.class_of.end(), 0);
  c.num_classes = a.size();
  return c;
}

Congruence total_congruence(const FiniteStructure& a) {
  Congruence c;
  c.class_of.assign(a.size(), 0);
  c.num_classes = a.size() > 0 ? 1 : 0;
  return c;
}

Congruence partition_congruence(const FiniteStructure& a, std::vector<int> raw) {
  if (static_cast<int>(raw.size()) != a.size())
    throw DomainError("partition_congruence: wrong length");
  Congruence c;
  c.class_of = normalize_partition(raw);
  c.num_classes = c.class_of.empty()
                      ? 0
                      : *std::max_element(c.class_of.begin(), c.class_of.end()) + 1;
  return c;
}

Congruence congruence_generated(const FiniteStructure& a,
                                const std::vector<std::pair<int, int>>& pairs) {
  int n = a.size();
  UnionFind uf(n);
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw DomainError("congruence_generated: index out of range");
    uf.unite(x, y);
  }
  OpView v = op_view(a);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto* u : v.unary)
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
          if (uf.find(x) == uf.find(y) && uf.unite((*u)[x], (*u)[y])) changed = true;
    for (const auto* t : v.binary)
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
          if (uf.find(x) != uf.find(y)) continue;
          for (int z = 0; z < n; ++z) {
            if (uf.unite((*t)[x][z], (*t)[y][z])) changed = true;
            if (uf.unite((*t)[z][x], (*t)[z][y])) changed = true;
          }
        }
  }
  std::vector<int> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = uf.find(i);
  return partition_congruence(a, std::move(raw));
}

bool is_congruence(const FiniteStructure& a, const Congruence& c) {
  int n = a.size();
  OpView v = op_view(a);
  for (const auto* u : v.unary)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (c.class_of[x] == c.class_of[y] && c.class_of[(*u)[x]] != c.class_of[(*u)[y]])
          return false;
  for (const auto* t : v.binary)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        if (c.class_of[x] != c.class_of[y]) continue;
        for (int z = 0; z < n; ++z) {
          if (c.class_of[(*t)[x][z]] != c.class_of[(*t)[y][z]]) return false;
          if (c.class_of[(*t)[z][x]] != c.class_of[(*t)[z][y]]) return false;
        }
      }
  return true;
}

bool congruence_leq(const Congruence& finer, const Congruence& coarser) {
  int n = static_cast<int>(finer.class_of.size());
  // every finer-class sits inside one coarser-class
  std::vector<int> rep(finer.num_classes, -1);
  for (int i = 0; i < n; ++i) {
    int fc = finer.class_of[i];
    if (rep[fc] == -1) rep[fc] = coarser.class_of[i];
    else if (rep[fc] != coarser.class_of[i]) return false;
  }
  return true;
}

Congruence congruence_meet(const Congruence& x, const Congruence& y) {
  int n = static_cast<int>(x.class_of.size());
  std::vector<int> raw(n);
  int m = static_cast<int>(y.class_of.size());
  (void)m;
  for (int i = 0; i < n; ++i) raw[i] = x.class_of[i] * n + y.class_of[i];
  Congruence c;
  c.class_of = normalize_partition(raw);
  c.num_classes =
      c.class_of.empty() ? 0 : *std::max_element(c.class_of.begin(), c.class_of.end()) + 1;
  return c;
}

Congruence congruence_join(const FiniteStructure& a, const Congruence& x, const Congruence& y) {
  std::vector<std::pair<int, int>> pairs;
  int n = a.size();
  for (int i = 0; i + 1 < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (x.class_of[i] == x.class_of[j] || y.class_of[i] == y.class_of[j])
        pairs.emplace_back(i, j);
  return congruence_generated(a, pairs);
}

std::vector<Congruence> all_congruences(const FiniteStructure& a) {
  int n = a.size();
  std::set<std::vector<int>> seen;
  std::vector<Congruence> out;
  auto add = [&](Congruence c) -> bool {
    if (seen.insert(c.class_of).second) {
      out.push_back(std::move(c));
      return true;
    }
    return false;
  };
  add(identity_congruence(a));
  std::vector<Congruence> principals;
  for (int i = 0; i + 1 < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Congruence c = congruence_generated(a, {{i, j}});
      if (add(c)) principals.push_back(out.back());
    }
  // close under joins
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i)
      for (const auto& p : principals) {
        Congruence j = congruence_join(a, out[i], p);
        if (add(std::move(j))) changed = true;
      }
  }
  std::sort(out.begin(), out.end(), [](const Congruence& x, const Congruence& y) {
    if (x.num_classes != y.num_classes) return x.num_classes > y.num_classes;
    return x.class_of < y.class_of;
  });
  return out;
}

Congruence kernel_partition(const Morphism& f) {
  Congruence c;
  c.class_of = normalize_partition(f.map);
  c.num_classes =
      c.class_of.empty() ? 0 : *std::max_element(c.class_of.begin(), c.class_of.end()) + 1;
  return c;
}

QuotientResult quotient(const StructPtr& a, const Congruence& c) {
  if (!is_congruence(*a, c)) throw InternalError("quotient: partition is not a congruence");
  int n = a->size();
  int k = c.num_classes;
  std::vector<int> rep(k, -1);
  for (int i = 0; i < n; ++i)
    if (rep[c.class_of[i]] == -1) rep[c.class_of[i]] = i;
  std::vector<std::string> labels(k);
  for (int q = 0; q < k; ++q) labels[q] = "[" + a->elements[rep[q]] + "]";

  auto q_unary = [&](const std::vector<int>& u) {
    std::vector<int> r(k);
    for (int q = 0; q < k; ++q) r[q] = c.class_of[u[rep[q]]];
    return r;
  };
  auto q_binary = [&](const Table& t) {
    Table r(k, std::vector<int>(k));
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) r[p][q] = c.class_of[t[rep[p]][rep[q]]];
    return r;
  };

  StructPtr qs;
  std::string name = a->name + "/~";
  switch (a->kind) {
    case Kind::MV: qs = make_mv(name, labels, q_binary(a->oplus), q_unary(a->neg)); break;
    case Kind::Heyting:
      qs = make_heyting(name, labels, q_binary(a->meet), q_binary(a->join),
                        c.class_of[a->bottom], c.class_of[a->top]);
      break;
    case Kind::MSet: {
      Table act(a->monoid.size(), std::vector<int>(k));
      for (int m = 0; m < a->monoid.size(); ++m)
        for (int q = 0; q < k; ++q) act[m][q] = c.class_of[a->action[m][rep[q]]];
      qs = make_mset(name, a->monoid, labels, act);
      break;
    }
    case Kind::Coslice:
      qs = make_coslice(name, labels, q_binary(a->add), c.class_of[a->basepoint], a->modulus);
      break;
  }
  QuotientResult r;
  r.quot = qs;
  r.projection = Morphism{a, qs, c.class_of};
  return r;
}

ProductResult product(const StructPtr& a, const StructPtr& b) {
  require_compatible(*a, *b);
  int n = a->size(), m = b->size();
  int sz = n * m;
  auto idx = [m](int x, int y) { return x * m + y; };
  std::vector<std::string> labels(sz);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < m; ++y)
      labels[idx(x, y)] = "(" + a->elements[x] + "," + b->elements[y] + ")";

  auto p_unary = [&](const std::vector<int>& ua, const std::vector<int>& ub) {
    std::vector<int> r(sz);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < m; ++y) r[idx(x, y)] = idx(ua[x], ub[y]);
    return r;
  };
  auto p_binary = [&](const Table& ta, const Table& tb) {
    Table r(sz, std::vector<int>(sz));
    for (int x1 = 0; x1 < n; ++x1)
      for (int y1 = 0; y1 < m; ++y1)
        for (int x2 = 0; x2 < n; ++x2)
          for (int y2 = 0; y2 < m; ++y2)
            r[idx(x1, y1)][idx(x2, y2)] = idx(ta[x1][x2], tb[y1][y2]);
    return r;
  };

  // pair ordering puts the pair of distinguished constants at index 0
  std::string name = "(" + a->name + "x" + b->name + ")";
  StructPtr p;
  switch (a->kind) {
    case Kind::MV:
      p = make_mv(name, labels, p_binary(a->oplus, b->oplus), p_unary(a->neg, b->neg));
      break;
    case Kind::Heyting:
      p = make_heyting(name, labels, p_binary(a->meet, b->meet), p_binary(a->join, b->join),
                       idx(a->bottom, b->bottom), idx(a->top, b->top));
      break;
    case Kind::MSet: {
      Table act(a->monoid.size(), std::vector<int>(sz));
      for (int g = 0; g < a->monoid.size(); ++g)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < m; ++y) act[g][idx(x, y)] = idx(a->action[g][x], b->action[g][y]);
      p = make_mset(name, a->monoid, labels, act);
      break;
    }
    case Kind::Coslice:
      p = make_coslice(name, labels, p_binary(a->add, b->add), idx(a->basepoint, b->basepoint),
                       a->modulus);
      break;
  }
  ProductResult r;
  r.prod = p;
  std::vector<int> m1(sz), m2(sz);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < m; ++y) {
      m1[idx(x, y)] = x;
      m2[idx(x, y)] = y;
    }
  r.proj1 = Morphism{p, a, std::move(m1)};
  r.proj2 = Morphism{p, b, std::move(m2)};
  return r;
}

PullbackResult pullback(const Morphism& f, const Morphism& g) {
  if (!same_structure(*f.target, *g.target)) throw DomainError("pullback: targets differ");
  ProductResult pr = product(f.source, g.source);
  int m = g.source->size();
  std::vector<int> members;
  for (int x = 0; x < f.source->size(); ++x)
    for (int y = 0; y < m; ++y)
      if (f.map[x] == g.map[y]) members.push_back(x * m + y);
  SubalgebraResult sub = subalgebra_on(pr.prod, std::move(members));
  PullbackResult r;
  r.obj = sub.sub;
  r.to_left = compose(pr.proj1, sub.inclusion);
  r.to_right = compose(pr.proj2, sub.inclusion);
  return r;
}

KernelPairResult kernel_pair(const Morphism& f) {
  PullbackResult pb = pullback(f, f);
  KernelPairResult r;
  r.obj = pb.obj;
  r.p1 = pb.to_left;
  r.p2 = pb.to_right;
  r.eq = kernel_partition(f);
  return r;
}

ImageFactorization image(const Morphism& f) {
  std::vector<int> members = f.map;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  SubalgebraResult sub = subalgebra_on(f.target, std::move(members));
  std::vector<int> pos(f.target->size(), -1);
  for (std::size_t i = 0; i < sub.member_indices.size(); ++i) pos[sub.member_indices[i]] = i;
  ImageFactorization r;
  r.image = sub.sub;
  std::vector<int> emap(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) emap[i] = pos[f.map[i]];
  r.epi = Morphism{f.source, sub.sub, std::move(emap)};
  r.mono = sub.inclusion;
  return r;
}

PushoutResult mset_pushout(const Morphism& u, const Morphism& v) {
  if (u.source->kind != Kind::MSet) throw DomainError("mset_pushout: mset only");
  if (!same_structure(*u.source, *v.source)) throw DomainError("mset_pushout: sources differ");
  const FiniteStructure& x = *u.target;
  const FiniteStructure& y = *v.target;
  require_compatible(x, y);
  int nx = x.size(), ny = y.size();
  UnionFind uf(nx + ny);
  for (int s = 0; s < u.source->size(); ++s) uf.unite(u.map[s], nx + v.map[s]);
  std::vector<int> raw(nx + ny);
  for (int i = 0; i < nx + ny; ++i) raw[i] = uf.find(i);
  std::vector<int> cls = normalize_partition(raw);
  int k = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> rep(k, -1);
  for (int i = 0; i < nx + ny; ++i)
    if (rep[cls[i]] == -1) rep[cls[i]] = i;
  std::vector<std::string> labels(k);
  for (int q = 0; q < k; ++q) {
    int r0 = rep[q];
    labels[q] = "[" + (r0 < nx ? ("l:" + x.elements[r0]) : ("r:" + y.elements[r0 - nx])) + "]";
  }
  const MonoidTable& mon = x.monoid;
  Table act(mon.size(), std::vector<int>(k));
  for (int g = 0; g < mon.size(); ++g)
    for (int q = 0; q < k; ++q) {
      int r0 = rep[q];
      act[g][q] = r0 < nx ? cls[x.action[g][r0]] : cls[nx + y.action[g][r0 - nx]];
    }
  StructPtr p = make_mset("(" + x.name + "+" + y.name + ")", mon, labels, act);
  // well-definedness: the relation is generated by equivariant pairs
  for (int g = 0; g < mon.size(); ++g)
    for (int i = 0; i < nx + ny; ++i) {
      int gi = i < nx ? cls[x.action[g][i]] : cls[nx + y.action[g][i - nx]];
      if (gi != act[g][cls[i]]) throw InternalError("mset_pushout: action not well-defined");
    }
  PushoutResult r;
  r.obj = p;
  std::vector<int> ml(nx), mr(ny);
  for (int i = 0; i < nx; ++i) ml[i] = cls[i];
  for (int j = 0; j < ny; ++j) mr[j] = cls[nx + j];
  r.from_left = Morphism{u.target, p, std::move(ml)};
  r.from_right = Morphism{v.target, p, std::move(mr)};
  return r;
}

const std::vector<Morphism>& HomCache::homs(const StructPtr& a, const StructPtr& b) {
  auto key = std::make_pair(a.get(), b.get());
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::vector<Morphism> fresh = enumerate_homs(a, b);
  std::unique_lock lock(mutex_);
  auto [ins, ok] = cache_.emplace(key, std::move(fresh));
  (void)ok;
  return ins->second;
}

void HomCache::precompute(const std::vector<StructPtr>& objects) {
  std::vector<std::pair<StructPtr, StructPtr>> pairs;
  for (const auto& a : objects)
    for (const auto& b : objects)
      if (same_family(*a, *b)) pairs.emplace_back(a, b);
  std::vector<std::vector<Morphism>> results(pairs.size());
  par::for_index(pairs.size(), [&](std::size_t i) {
    results[i] = enumerate_homs(pairs[i].first, pairs[i].second);
  });
  std::unique_lock lock(mutex_);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    cache_[{pairs[i].first.get(), pairs[i].second.get()}] = std::move(results[i]);
}

}  // namespace tordec
