#pragma once

#include "tordec/common.hpp"

namespace tordec {

enum class Kind { MV, Heyting, MSet, Coslice };

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& s);

struct MonoidTable {
  std::vector<std::string> elements;
  Table table;       // table[i][j] = index of i*j
  int identity = 0;  // index of the unit

  int size() const { return static_cast<int>(elements.size()); }
  bool operator==(const MonoidTable&) const = default;
};

// One finite structure; only the fields of its kind are populated.
// Element index 0 is the distinguished constant where the family has one
// (0 in MV, bottom in Heyting, the group zero in the coslice).
struct FiniteStructure {
  Kind kind{};
  std::string name;
  std::vector<std::string> elements;

  // mv
  Table oplus;
  std::vector<int> neg;  // also the coslice negation

  // heyting
  Table meet, join, imp;  // imp is derived from the lattice, never read from files
  int bottom = -1, top = -1;

  // mset
  MonoidTable monoid;
  Table action;  // action[m][x]

  // coslice
  Table add;
  int basepoint = -1;
  int modulus = 0;

  int size() const { return static_cast<int>(elements.size()); }
  int mv_one() const { return neg[0]; }
  const std::string& label(int i) const { return elements[i]; }
};

using StructPtr = std::shared_ptr<const FiniteStructure>;

struct NotHeyting : DomainError {
  int y, z;
  NotHeyting(int y_, int z_, const std::string& msg) : DomainError(msg), y(y_), z(z_) {}
};

// Factories check dimensions and index ranges (malformed input is rejected
// here); algebraic axioms are the job of validate().
StructPtr make_mv(std::string name, std::vector<std::string> elements, Table oplus,
                  std::vector<int> neg);
// Derives the implication by residuation; throws NotHeyting when some pair has
// no greatest residual, and DomainError when the tables are not a bounded lattice.
StructPtr make_heyting(std::string name, std::vector<std::string> elements, Table meet,
                       Table join, int bottom, int top);
StructPtr make_mset(std::string name, MonoidTable monoid, std::vector<std::string> carrier,
                    Table action);
StructPtr make_coslice(std::string name, std::vector<std::string> elements, Table add,
                       int basepoint, int modulus);

struct Violation {
  std::string axiom;
  std::string witness;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

ValidationReport validate(const FiniteStructure& s);

struct MvDerived {
  Table odot, ominus, implies, dist;
  std::vector<std::vector<bool>> leq;  // leq[x][y]  <=>  ¬x⊕y = 1
};
MvDerived derive_mv_tables(const FiniteStructure& a);

// Uniform signature view used by the generic hom/congruence machinery.
struct OpView {
  std::vector<int> constants;
  std::vector<const std::vector<int>*> unary;
  std::vector<const Table*> binary;
};
OpView op_view(const FiniteStructure& s);

bool same_family(const FiniteStructure& a, const FiniteStructure& b);
bool same_structure(const FiniteStructure& a, const FiniteStructure& b);

// Distinguished small objects.
StructPtr terminal_structure(Kind kind, int modulus = 2, const MonoidTable* monoid = nullptr);
StructPtr initial_mv();                      // {0,1}
StructPtr initial_heyting();                 // two-element chain
StructPtr empty_mset(const MonoidTable& m);  // the empty carrier
StructPtr cyclic_group(int order, int basepoint, int modulus, std::string name = "");
StructPtr mv_chain(int n);  // n+1 elements 0, 1/n, ..., 1

MonoidTable trivial_monoid();
// All monoids of order <= max_order, up to isomorphism, deterministically ordered.
std::vector<MonoidTable> enumerate_monoids(int max_order);

struct Catalog {
  Kind kind{};
  int size_bound = 0;
  int modulus = 0;  // coslice only
  std::vector<StructPtr> instances;
};

Catalog generate_catalog(Kind kind, int size_bound, int modulus = 2);

}  // namespace tordec
