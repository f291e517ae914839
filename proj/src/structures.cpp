#include "tordec/structures.hpp"

#include <array>
#include <numeric>
#include <set>
#include <sstream>

namespace tordec {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::MV: return "mv";
    case Kind::Heyting: return "heyting";
    case Kind::MSet: return "mset";
    case Kind::Coslice: return "coslice";
  }
  return "?";
}

std::optional<Kind> kind_from_name(const std::string& s) {
  if (s == "mv") return Kind::MV;
  if (s == "heyting") return Kind::Heyting;
  if (s == "mset") return Kind::MSet;
  if (s == "coslice") return Kind::Coslice;
  return std::nullopt;
}

namespace {

void check_table(const Table& t, int rows, int cols, int range, const std::string& what) {
  if (static_cast<int>(t.size()) != rows)
    throw DomainError(what + ": expected " + std::to_string(rows) + " rows");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != cols)
      throw DomainError(what + ": ragged or mis-sized row");
    for (int v : row)
      if (v < 0 || v >= range) throw DomainError(what + ": entry out of range");
  }
}

void check_vec(const std::vector<int>& v, int len, int range, const std::string& what) {
  if (static_cast<int>(v.size()) != len) throw DomainError(what + ": wrong length");
  for (int x : v)
    if (x < 0 || x >= range) throw DomainError(what + ": entry out of range");
}

void check_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw DomainError("duplicate element label '" + l + "'");
}

std::string pair_witness(const FiniteStructure& s, int x, int y) {
  return "(" + s.label(x) + "," + s.label(y) + ")";
}

}  // namespace

StructPtr make_mv(std::string name, std::vector<std::string> elements, Table oplus,
                  std::vector<int> neg) {
  int n = static_cast<int>(elements.size());
  if (n == 0) throw DomainError("mv: empty carrier");
  check_labels(elements);
  check_table(oplus, n, n, n, "mv oplus");
  check_vec(neg, n, n, "mv neg");
  auto s = std::make_shared<FiniteStructure>();
  s->kind = Kind::MV;
  s->name = std::move(name);
  s->elements = std::move(elements);
  s->oplus = std::move(oplus);
  s->neg = std::move(neg);
  return s;
}

StructPtr make_heyting(std::string name, std::vector<std::string> elements, Table meet,
                       Table join, int bottom, int top) {
  int n = static_cast<int>(elements.size());
  if (n == 0) throw DomainError("heyting: empty carrier");
  check_labels(elements);
  check_table(meet, n, n, n, "heyting meet");
  check_table(join, n, n, n, "heyting join");
  if (bottom < 0 || bottom >= n || top < 0 || top >= n)
    throw DomainError("heyting: bottom/top out of range");

  auto leq = [&](int x, int y) { return meet[x][y] == x; };
  // quick bounded-lattice sanity before the residual search
  for (int x = 0; x < n; ++x) {
    if (meet[x][x] != x || join[x][x] != x) throw DomainError("heyting: not idempotent");
    if (meet[x][bottom] != bottom || join[x][top] != top || meet[x][top] != x ||
        join[x][bottom] != x)
      throw DomainError("heyting: bounds are not neutral/absorbing");
    for (int y = 0; y < n; ++y) {
      if (meet[x][y] != meet[y][x] || join[x][y] != join[y][x])
        throw DomainError("heyting: not commutative");
      if (meet[x][join[x][y]] != x || join[x][meet[x][y]] != x)
        throw DomainError("heyting: absorption fails");
      for (int z = 0; z < n; ++z) {
        if (meet[meet[x][y]][z] != meet[x][meet[y][z]] ||
            join[join[x][y]][z] != join[x][join[y][z]])
          throw DomainError("heyting: not associative");
      }
    }
  }

  Table imp(n, std::vector<int>(n, -1));
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      // greatest x with x∧y <= z
      int best = -1;
      for (int x = 0; x < n; ++x) {
        if (!leq(meet[x][y], z)) continue;
        if (best == -1 || leq(best, x)) best = x;
      }
      if (best != -1) {
        for (int x = 0; x < n; ++x)
          if (leq(meet[x][y], z) && !leq(x, best)) { best = -1; break; }
      }
      if (best == -1)
        throw NotHeyting(y, z, "lattice is not Heyting: no greatest residual at (" +
                                   elements[y] + "," + elements[z] + ")");
      imp[y][z] = best;
    }
  }

  auto s = std::make_shared<FiniteStructure>();
  s->kind = Kind::Heyting;
  s->name = std::move(name);
  s->elements = std::move(elements);
  s->meet = std::move(meet);
  s->join = std::move(join);
  s->imp = std::move(imp);
  s->bottom = bottom;
  s->top = top;
  return s;
}

StructPtr make_mset(std::string name, MonoidTable monoid, std::vector<std::string> carrier,
                    Table action) {
  int k = monoid.size();
  int n = static_cast<int>(carrier.size());
  if (k == 0) throw DomainError("mset: empty monoid");
  check_labels(monoid.elements);
  check_labels(carrier);
  check_table(monoid.table, k, k, k, "mset monoid table");
  if (monoid.identity < 0 || monoid.identity >= k)
    throw DomainError("mset: identity out of range");
  check_table(action, k, n, n, "mset action");
  auto s = std::make_shared<FiniteStructure>();
  s->kind = Kind::MSet;
  s->name = std::move(name);
  s->elements = std::move(carrier);
  s->monoid = std::move(monoid);
  s->action = std::move(action);
  return s;
}

StructPtr make_coslice(std::string name, std::vector<std::string> elements, Table add,
                       int basepoint, int modulus) {
  int n = static_cast<int>(elements.size());
  if (n == 0) throw DomainError("coslice: empty carrier");
  check_labels(elements);
  check_table(add, n, n, n, "coslice add");
  if (basepoint < 0 || basepoint >= n) throw DomainError("coslice: basepoint out of range");
  if (modulus < 1) throw DomainError("coslice: modulus must be positive");
  // negation is determined by the addition table
  std::vector<int> neg(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (add[x][y] == 0) neg[x] = y;
  for (int x = 0; x < n; ++x)
    if (neg[x] < 0) throw DomainError("coslice: element without inverse");
  auto s = std::make_shared<FiniteStructure>();
  s->kind = Kind::Coslice;
  s->name = std::move(name);
  s->elements = std::move(elements);
  s->add = std::move(add);
  s->neg = std::move(neg);
  s->basepoint = basepoint;
  s->modulus = modulus;
  return s;
}

MvDerived derive_mv_tables(const FiniteStructure& a) {
  int n = a.size();
  const Table& op = a.oplus;
  const std::vector<int>& ng = a.neg;
  MvDerived d;
  d.odot.assign(n, std::vector<int>(n));
  d.ominus.assign(n, std::vector<int>(n));
  d.implies.assign(n, std::vector<int>(n));
  d.dist.assign(n, std::vector<int>(n));
  d.leq.assign(n, std::vector<bool>(n));
  int one = a.mv_one();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      d.odot[x][y] = ng[op[ng[x]][ng[y]]];
      d.implies[x][y] = op[ng[x]][y];
      d.ominus[x][y] = ng[op[ng[x]][y]];
      d.leq[x][y] = op[ng[x]][y] == one;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d.dist[x][y] = op[d.ominus[x][y]][d.ominus[y][x]];
  return d;
}

namespace {

void validate_mv(const FiniteStructure& s, ValidationReport& r) {
  int n = s.size();
  const Table& op = s.oplus;
  auto bad = [&](const std::string& ax, const std::string& w) {
    r.violations.push_back({ax, w});
  };
  for (int x = 0; x < n; ++x) {
    if (op[x][0] != x) bad("oplus-unit", "(" + s.label(x) + ")");
    if (s.neg[s.neg[x]] != x) bad("neg-involution", "(" + s.label(x) + ")");
    if (op[x][s.mv_one()] != s.mv_one()) bad("one-absorbing", "(" + s.label(x) + ")");
    for (int y = 0; y < n; ++y) {
      if (op[x][y] != op[y][x]) bad("oplus-commutativity", pair_witness(s, x, y));
      int l = op[s.neg[op[s.neg[x]][y]]][y];
      int rr = op[s.neg[op[s.neg[y]][x]]][x];
      if (l != rr) bad("lukasiewicz", pair_witness(s, x, y));
      for (int z = 0; z < n; ++z)
        if (op[op[x][y]][z] != op[x][op[y][z]])
          bad("oplus-associativity",
              "(" + s.label(x) + "," + s.label(y) + "," + s.label(z) + ")");
    }
  }
  if (!r.violations.empty()) return;
  // derived-table sanity: distance and order behave as the formulas demand
  MvDerived d = derive_mv_tables(s);
  for (int x = 0; x < n; ++x) {
    if (d.dist[x][x] != 0) bad("distance-diagonal", "(" + s.label(x) + ")");
    if (!d.leq[x][x]) bad("order-reflexive", "(" + s.label(x) + ")");
    for (int y = 0; y < n; ++y) {
      if (d.dist[x][y] != d.dist[y][x]) bad("distance-symmetry", pair_witness(s, x, y));
      if (d.leq[x][y] && d.leq[y][x] && x != y) bad("order-antisymmetry", pair_witness(s, x, y));
      for (int z = 0; z < n; ++z)
        if (d.leq[x][y] && d.leq[y][z] && !d.leq[x][z])
          bad("order-transitivity", "(" + s.label(x) + "," + s.label(y) + "," + s.label(z) + ")");
    }
  }
}

void validate_heyting(const FiniteStructure& s, ValidationReport& r) {
  int n = s.size();
  auto leq = [&](int x, int y) { return s.meet[x][y] == x; };
  // the factory guarantees lattice laws; re-check residuation exhaustively
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        bool lhs = leq(s.meet[x][y], z);
        bool rhs = leq(x, s.imp[y][z]);
        if (lhs != rhs)
          r.violations.push_back(
              {"residuation", "(" + s.label(x) + "," + s.label(y) + "," + s.label(z) + ")"});
      }
}

void validate_mset(const FiniteStructure& s, ValidationReport& r) {
  const MonoidTable& m = s.monoid;
  int k = m.size();
  int n = s.size();
  auto bad = [&](const std::string& ax, const std::string& w) {
    r.violations.push_back({ax, w});
  };
  for (int a = 0; a < k; ++a) {
    if (m.table[m.identity][a] != a || m.table[a][m.identity] != a)
      bad("monoid-identity", "(" + m.elements[a] + ")");
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (m.table[m.table[a][b]][c] != m.table[a][m.table[b][c]])
          bad("monoid-associativity",
              "(" + m.elements[a] + "," + m.elements[b] + "," + m.elements[c] + ")");
  }
  for (int x = 0; x < n; ++x) {
    if (s.action[m.identity][x] != x) bad("action-identity", "(" + s.label(x) + ")");
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (s.action[m.table[a][b]][x] != s.action[a][s.action[b][x]])
          bad("action-compatibility",
              "(" + m.elements[a] + "," + m.elements[b] + "," + s.label(x) + ")");
  }
}

void validate_coslice(const FiniteStructure& s, ValidationReport& r) {
  int n = s.size();
  const Table& add = s.add;
  auto bad = [&](const std::string& ax, const std::string& w) {
    r.violations.push_back({ax, w});
  };
  for (int x = 0; x < n; ++x) {
    if (add[x][0] != x) bad("group-zero", "(" + s.label(x) + ")");
    if (add[x][s.neg[x]] != 0) bad("group-inverse", "(" + s.label(x) + ")");
    for (int y = 0; y < n; ++y) {
      if (add[x][y] != add[y][x]) bad("group-commutativity", pair_witness(s, x, y));
      for (int z = 0; z < n; ++z)
        if (add[add[x][y]][z] != add[x][add[y][z]])
          bad("group-associativity",
              "(" + s.label(x) + "," + s.label(y) + "," + s.label(z) + ")");
    }
  }
  int acc = 0;
  for (int i = 0; i < s.modulus; ++i) acc = add[acc][s.basepoint];
  if (acc != 0) bad("basepoint-annihilated", "(" + s.label(s.basepoint) + ")");
}

}  // namespace

ValidationReport validate(const FiniteStructure& s) {
  ValidationReport r;
  switch (s.kind) {
    case Kind::MV: validate_mv(s, r); break;
    case Kind::Heyting: validate_heyting(s, r); break;
    case Kind::MSet: validate_mset(s, r); break;
    case Kind::Coslice: validate_coslice(s, r); break;
  }
  r.valid = r.violations.empty();
  return r;
}

OpView op_view(const FiniteStructure& s) {
  OpView v;
  switch (s.kind) {
    case Kind::MV:
      v.constants = {0, s.mv_one()};
      v.unary = {&s.neg};
      v.binary = {&s.oplus};
      break;
    case Kind::Heyting:
      v.constants = {s.bottom, s.top};
      v.binary = {&s.meet, &s.join, &s.imp};
      break;
    case Kind::MSet:
      for (const auto& row : s.action) v.unary.push_back(&row);
      break;
    case Kind::Coslice:
      v.constants = {0, s.basepoint};
      v.unary = {&s.neg};
      v.binary = {&s.add};
      break;
  }
  return v;
}

bool same_family(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::MSet) return a.monoid == b.monoid;
  if (a.kind == Kind::Coslice) return a.modulus == b.modulus;
  return true;
}

bool same_structure(const FiniteStructure& a, const FiniteStructure& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.elements != b.elements) return false;
  switch (a.kind) {
    case Kind::MV: return a.oplus == b.oplus && a.neg == b.neg;
    case Kind::Heyting:
      return a.meet == b.meet && a.join == b.join && a.bottom == b.bottom && a.top == b.top;
    case Kind::MSet: return a.monoid == b.monoid && a.action == b.action;
    case Kind::Coslice:
      return a.add == b.add && a.basepoint == b.basepoint && a.modulus == b.modulus;
  }
  return false;
}

StructPtr terminal_structure(Kind kind, int modulus, const MonoidTable* monoid) {
  switch (kind) {
    case Kind::MV: return make_mv("terminal", {"0"}, {{0}}, {0});
    case Kind::Heyting: return make_heyting("terminal", {"0"}, {{0}}, {{0}}, 0, 0);
    case Kind::MSet: {
      MonoidTable m = monoid ? *monoid : trivial_monoid();
      Table act(m.size(), std::vector<int>(1, 0));
      return make_mset("terminal", m, {"*"}, act);
    }
    case Kind::Coslice: return make_coslice("terminal", {"0"}, {{0}}, 0, modulus);
  }
  throw DomainError("unknown kind");
}

StructPtr initial_mv() { return make_mv("L1", {"0", "1"}, {{0, 1}, {1, 1}}, {1, 0}); }

StructPtr initial_heyting() {
  return make_heyting("2", {"0", "1"}, {{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, 0, 1);
}

StructPtr empty_mset(const MonoidTable& m) {
  Table act(m.size());
  return make_mset("empty", m, {}, act);
}

StructPtr cyclic_group(int order, int basepoint, int modulus, std::string name) {
  if (order < 1) throw DomainError("cyclic_group: order must be >= 1");
  std::vector<std::string> labels(order);
  for (int i = 0; i < order; ++i) labels[i] = std::to_string(i);
  Table add(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) add[i][j] = (i + j) % order;
  if (name.empty()) name = "Z" + std::to_string(order) + "_b" + std::to_string(basepoint);
  return make_coslice(std::move(name), std::move(labels), std::move(add), basepoint, modulus);
}

StructPtr mv_chain(int n) {
  if (n < 0) throw DomainError("mv_chain: n must be >= 0");
  if (n == 0) return terminal_structure(Kind::MV);
  int sz = n + 1;
  std::vector<std::string> labels(sz);
  labels[0] = "0";
  labels[n] = "1";
  for (int i = 1; i < n; ++i) labels[i] = std::to_string(i) + "/" + std::to_string(n);
  Table op(sz, std::vector<int>(sz));
  std::vector<int> nn(sz);
  for (int i = 0; i < sz; ++i) {
    nn[i] = n - i;
    for (int j = 0; j < sz; ++j) op[i][j] = std::min(n, i + j);
  }
  return make_mv("L" + std::to_string(n), std::move(labels), std::move(op), std::move(nn));
}

MonoidTable trivial_monoid() {
  MonoidTable m;
  m.elements = {"1"};
  m.table = {{0}};
  m.identity = 0;
  return m;
}

std::vector<MonoidTable> enumerate_monoids(int max_order) {
  std::vector<MonoidTable> out;
  for (int k = 1; k <= max_order; ++k) {
    std::vector<Table> found;
    Table t(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i) {
      t[0][i] = i;  // element 0 is the unit
      t[i][0] = i;
    }
    // fill the (k-1)x(k-1) block of non-unit products
    int cells = (k - 1) * (k - 1);
    std::vector<int> choice(cells, 0);
    auto cell = [&](int idx) -> std::pair<int, int> {
      return {1 + idx / (k - 1), 1 + idx % (k - 1)};
    };
    bool done = k == 1;
    if (k == 1) found.push_back(t);
    while (!done) {
      for (int idx = 0; idx < cells; ++idx) {
        auto [i, j] = cell(idx);
        t[i][j] = choice[idx];
      }
      bool assoc = true;
      for (int a = 0; a < k && assoc; ++a)
        for (int b = 0; b < k && assoc; ++b)
          for (int c = 0; c < k; ++c)
            if (t[t[a][b]][c] != t[a][t[b][c]]) { assoc = false; break; }
      if (assoc) {
        // canonical under permutations of the non-unit elements
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        bool minimal = true;
        std::vector<int> sub(perm.begin() + 1, perm.end());
        std::sort(sub.begin(), sub.end());
        do {
          for (int i = 1; i < k; ++i) perm[i] = sub[i - 1];
          Table relab(k, std::vector<int>(k));
          std::vector<int> inv(k);
          for (int i = 0; i < k; ++i) inv[perm[i]] = i;
          for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) relab[inv[a]][inv[b]] = inv[t[a][b]];
          if (relab < t) { minimal = false; break; }
        } while (std::next_permutation(sub.begin(), sub.end()));
        if (minimal) found.push_back(t);
      }
      // next choice vector
      int pos = cells - 1;
      while (pos >= 0 && choice[pos] == k - 1) choice[pos--] = 0;
      if (pos < 0) done = true;
      else ++choice[pos];
    }
    int idx = 0;
    for (const auto& table : found) {
      MonoidTable m;
      m.identity = 0;
      m.table = table;
      m.elements.resize(k);
      m.elements[0] = "1";
      for (int i = 1; i < k; ++i) m.elements[i] = "g" + std::to_string(i);
      // keep names stable across runs
      (void)idx;
      ++idx;
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace tordec
