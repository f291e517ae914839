#include "tordec/morphisms.hpp"
#include "tordec/structures.hpp"

namespace tordec {

namespace {

// --- MV: chains and binary products of chains ---------------------------------

std::vector<StructPtr> mv_catalog(int bound) {
  std::vector<StructPtr> out;
  out.push_back(terminal_structure(Kind::MV));
  if (bound < 2) return out;
  std::vector<StructPtr> chains;
  for (int n = 1; n + 1 <= bound; ++n) chains.push_back(mv_chain(n));
  for (const auto& c : chains) out.push_back(c);
  for (std::size_t i = 0; i < chains.size(); ++i)
    for (std::size_t j = i; j < chains.size(); ++j) {
      int sz = chains[i]->size() * chains[j]->size();
      if (sz <= bound) out.push_back(product(chains[i], chains[j]).prod);
    }
  return out;
}

// --- Heyting: downset lattices of small posets ---------------------------------

struct Poset {
  int n;
  std::vector<std::vector<bool>> leq;
};

std::vector<Poset> posets_up_to_iso(int max_points) {
  std::vector<Poset> out;
  for (int n = 0; n <= max_points; ++n) {
    if (n == 0) {
      out.push_back({0, {}});
      continue;
    }
    int m = n * (n - 1);  // off-diagonal cells
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) cells.emplace_back(i, j);
    std::vector<std::vector<std::vector<bool>>> found;
    for (long long mask = 0; mask < (1LL << m); ++mask) {
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i) leq[i][i] = true;
      for (int c = 0; c < m; ++c)
        if (mask & (1LL << c)) leq[cells[c].first][cells[c].second] = true;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) {
          if (i != j && leq[i][j] && leq[j][i]) ok = false;
          for (int k = 0; k < n; ++k)
            if (leq[i][j] && leq[j][k] && !leq[i][k]) { ok = false; break; }
        }
      if (!ok) continue;
      // dedupe by permutation
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      bool fresh = true;
      do {
        std::vector<std::vector<bool>> im(n, std::vector<bool>(n));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) im[perm[i]][perm[j]] = leq[i][j];
        for (const auto& f : found)
          if (f == im) { fresh = false; break; }
        if (!fresh) break;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (fresh) found.push_back(leq);
    }
    for (auto& leq : found) out.push_back({n, std::move(leq)});
  }
  return out;
}

StructPtr downset_lattice(const Poset& p, const std::string& name) {
  int n = p.n;
  std::vector<int> downsets;
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool closed = true;
    for (int i = 0; i < n && closed; ++i)
      for (int j = 0; j < n; ++j)
        if ((mask & (1 << j)) && p.leq[i][j] && !(mask & (1 << i))) { closed = false; break; }
    if (closed) downsets.push_back(mask);
  }
  int k = static_cast<int>(downsets.size());
  std::vector<int> pos(1 << std::max(n, 1), -1);
  for (int i = 0; i < k; ++i) pos[downsets[i]] = i;
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = "u" + std::to_string(downsets[i]);
  Table meet(k, std::vector<int>(k)), join(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      meet[i][j] = pos[downsets[i] & downsets[j]];
      join[i][j] = pos[downsets[i] | downsets[j]];
    }
  return make_heyting(name, labels, meet, join, pos[0], pos[(1 << n) - 1]);
}

std::vector<StructPtr> heyting_catalog(int bound) {
  int p = 0;
  while ((1 << (p + 1)) <= bound) ++p;
  std::vector<StructPtr> out;
  int idx = 0;
  for (const Poset& ps : posets_up_to_iso(p)) {
    StructPtr h = downset_lattice(ps, "hey" + std::to_string(idx));
    if (h->size() <= bound) {
      // posets of different shape can share a downset lattice
      bool dup = false;
      for (const auto& prev : out)
        if (prev->size() == h->size() && find_iso(prev, h)) { dup = true; break; }
      if (!dup) {
        out.push_back(h);
        ++idx;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const StructPtr& a, const StructPtr& b) { return a->size() < b->size(); });
  return out;
}

// --- MSet: every action of each small monoid, up to equivariant iso -------------

std::vector<StructPtr> mset_catalog(int bound) {
  if (bound == 1) {
    MonoidTable t = trivial_monoid();
    return {terminal_structure(Kind::MSet, 0, &t)};
  }
  std::vector<StructPtr> out;
  std::vector<MonoidTable> monoids = enumerate_monoids(3);
  int mi = 0;
  for (auto& mon : monoids) {
    std::string mname = "M" + std::to_string(mon.size()) + "_" + std::to_string(mi++);
    for (int n = 0; n <= bound; ++n) {
      std::vector<std::string> labels(n);
      for (int i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
      // choose a transformation per non-identity generator, consistently
      int k = mon.size();
      std::vector<int> nonunit;
      for (int g = 0; g < k; ++g)
        if (g != mon.identity) nonunit.push_back(g);
      std::vector<StructPtr> fresh;
      long long total = 1;
      for (std::size_t i = 0; i < nonunit.size(); ++i) {
        for (int j = 0; j < n; ++j) total *= n;
        if (total > 2000000) throw DomainError("mset catalog bound too large");
      }
      if (n == 0) total = 1;
      for (long long code = 0; code < total; ++code) {
        Table act(k, std::vector<int>(n));
        for (int x = 0; x < n; ++x) act[mon.identity][x] = x;
        long long c = code;
        for (int g : nonunit)
          for (int x = 0; x < n; ++x) {
            act[g][x] = n == 0 ? 0 : static_cast<int>(c % n);
            if (n > 0) c /= n;
          }
        bool ok = true;
        for (int g = 0; g < k && ok; ++g)
          for (int h = 0; h < k && ok; ++h)
            for (int x = 0; x < n; ++x)
              if (act[mon.table[g][h]][x] != act[g][act[h][x]]) { ok = false; break; }
        if (!ok) continue;
        StructPtr s = make_mset(
            mname + "_n" + std::to_string(n) + "_a" + std::to_string(fresh.size()), mon, labels,
            act);
        bool dup = false;
        for (const auto& prev : fresh)
          if (find_iso(prev, s)) { dup = true; break; }
        if (!dup) fresh.push_back(s);
      }
      for (auto& s : fresh) out.push_back(std::move(s));
    }
  }
  return out;
}

// --- Coslice: abelian groups by invariant factors, all annihilated basepoints ---

std::vector<std::vector<int>> invariant_factor_sequences(int bound) {
  std::vector<std::vector<int>> out = {{}};  // trivial group
  std::vector<std::vector<int>> work = {{}};
  while (!work.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& seq : work) {
      long long ord = 1;
      for (int d : seq) ord *= d;
      int start = seq.empty() ? 2 : seq.back();
      for (int d = start; ord * d <= bound; ++d) {
        if (!seq.empty() && d % seq.back() != 0) continue;
        auto ext = seq;
        ext.push_back(d);
        out.push_back(ext);
        next.push_back(std::move(ext));
      }
    }
    work = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    long long oa = 1, ob = 1;
    for (int d : a) oa *= d;
    for (int d : b) ob *= d;
    if (oa != ob) return oa < ob;
    return a < b;
  });
  return out;
}

StructPtr group_from_factors(const std::vector<int>& factors, int basepoint, int modulus) {
  int n = 1;
  for (int d : factors) n *= d;
  std::vector<std::string> labels(n);
  auto digits = [&](int x) {
    std::vector<int> ds(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      ds[i] = x % factors[i];
      x /= factors[i];
    }
    return ds;
  };
  for (int x = 0; x < n; ++x) {
    if (factors.empty()) {
      labels[x] = "0";
    } else if (factors.size() == 1) {
      labels[x] = std::to_string(x);
    } else {
      auto ds = digits(x);
      std::string l = "(";
      for (std::size_t i = 0; i < ds.size(); ++i)
        l += (i ? "," : "") + std::to_string(ds[i]);
      labels[x] = l + ")";
    }
  }
  Table add(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto dx = digits(x), dy = digits(y);
      int z = 0;
      for (std::size_t i = 0; i < factors.size(); ++i)
        z = z * factors[i] + (dx[i] + dy[i]) % factors[i];
      add[x][y] = z;
    }
  std::string name = factors.empty() ? "Z1" : "Z";
  for (std::size_t i = 0; i < factors.size(); ++i)
    name += (i ? "xZ" : "") + std::to_string(factors[i]);
  name += "_b" + std::to_string(basepoint);
  return make_coslice(name, labels, add, basepoint, modulus);
}

std::vector<StructPtr> coslice_catalog(int bound, int modulus) {
  std::vector<StructPtr> out;
  for (const auto& factors : invariant_factor_sequences(bound)) {
    int n = 1;
    for (int d : factors) n *= d;
    StructPtr plain = group_from_factors(factors, 0, modulus);
    std::vector<StructPtr> pointed;
    for (int a = 0; a < n; ++a) {
      int acc = 0;
      for (int i = 0; i < modulus; ++i) acc = plain->add[acc][a];
      if (acc != 0) continue;
      StructPtr s = group_from_factors(factors, a, modulus);
      bool dup = false;
      for (const auto& prev : pointed)
        if (find_iso(prev, s)) { dup = true; break; }
      if (!dup) pointed.push_back(s);
    }
    for (auto& s : pointed) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Catalog generate_catalog(Kind kind, int size_bound, int modulus) {
  if (size_bound < 1) throw DomainError("generate_catalog: size_bound must be >= 1");
  Catalog c;
  c.kind = kind;
  c.size_bound = size_bound;
  c.modulus = kind == Kind::Coslice ? modulus : 0;
  if (size_bound == 1) {
    c.instances = {terminal_structure(kind, modulus)};
    return c;
  }
  switch (kind) {
    case Kind::MV: c.instances = mv_catalog(size_bound); break;
    case Kind::Heyting: c.instances = heyting_catalog(size_bound); break;
    case Kind::MSet: c.instances = mset_catalog(size_bound); break;
    case Kind::Coslice: c.instances = coslice_catalog(size_bound, modulus); break;
  }
  return c;
}

}  // namespace tordec
