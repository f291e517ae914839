#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tordec/factorization.hpp"

using namespace tordec;

namespace {

StructPtr heyting_chain3() {
  Table meet = {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
  Table join = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  return make_heyting("chain3", {"0", "a", "1"}, meet, join, 0, 2);
}

StructPtr z4xz3_pointed() {
  ProductResult p = product(cyclic_group(4, 2, 2), cyclic_group(3, 0, 2));
  return make_coslice("Z4xZ3", p.prod->elements, p.prod->add, 2 * 3 + 0, 2);
}

Morphism worked_projection() {
  StructPtr a = z4xz3_pointed();
  StructPtr z4 = cyclic_group(4, 2, 2);
  std::vector<int> map(12);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 3; ++y) map[x * 3 + y] = x;
  return Morphism{a, z4, map};
}

MonoidTable band2() {
  MonoidTable m;
  m.elements = {"1", "e"};
  m.identity = 0;
  m.table = {{0, 1}, {1, 1}};
  return m;
}

}  // namespace

TEST_CASE("isomorphisms belong to both classes") {
  TheoryHandle mv = TheoryHandle::make("mv");
  Morphism id = identity_morphism(mv_chain(2));
  CHECK(in_E(mv, id));
  CHECK(in_M(mv, id));
  TheoryHandle ms = TheoryHandle::make("mset");
  StructPtr x = make_mset("X", band2(), {"x", "y"}, {{0, 1}, {1, 1}});
  Morphism idx = identity_morphism(x);
  CHECK(in_E(ms, idx));
  CHECK(in_M(ms, idx));
}

TEST_CASE("the worked coslice projection is an E-arrow") {
  TheoryHandle cos = TheoryHandle::make("coslice", 2);
  Morphism f = worked_projection();
  REQUIRE(is_valid_morphism(f));
  CHECK(in_E(cos, f));       // kernel {0,2} x Z3 is torsion, f is its Z-cokernel
  CHECK_FALSE(in_M(cos, f));
}

TEST_CASE("heyting factorization of the canonical surjection") {
  TheoryHandle hey = TheoryHandle::make("heyting");
  StructPtr h = heyting_chain3();
  StructPtr two = initial_heyting();
  Morphism f{h, two, {0, 1, 1}};
  REQUIRE(is_valid_morphism(f));
  FactorizationResult r = factorize(hey, f);
  CHECK(r.middle->size() == 2);  // Eq(f) = Eq(unit) here, so the middle is F(H)
  CHECK(r.e_in_class);
  CHECK(r.m_in_class);
  CHECK(classify_morphism(r.m).iso);
}

TEST_CASE("coslice factorization of the worked projection has middle Z4") {
  TheoryHandle cos = TheoryHandle::make("coslice", 2);
  Morphism f = worked_projection();
  FactorizationResult r = factorize(cos, f);
  CHECK(r.middle->size() == 4);
  CHECK(find_iso(r.middle, cyclic_group(4, 2, 2)).has_value());
  CHECK(compose(r.m, r.e).map == f.map);
}

TEST_CASE("coslice factorization through the divisible part of the kernel") {
  // (Z4 x Z3, (2,0)) -> (Z2, 0): fiber of 0 is {0,2} x Z3, its divisible part
  // is {0} x Z3, so the middle is Z4
  TheoryHandle cos = TheoryHandle::make("coslice", 2);
  StructPtr a = z4xz3_pointed();
  StructPtr z2 = cyclic_group(2, 0, 2);
  std::vector<int> map(12);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 3; ++y) map[x * 3 + y] = x % 2;
  Morphism f{a, z2, map};
  REQUIRE(is_valid_morphism(f));
  FactorizationResult r = factorize(cos, f);
  CHECK(r.middle->size() == 4);
}

TEST_CASE("identity factorizes with isomorphisms on both sides") {
  TheoryHandle mv = TheoryHandle::make("mv");
  FactorizationResult r = factorize(mv, identity_morphism(mv_chain(2)));
  CHECK(classify_morphism(r.e).iso);
  CHECK(classify_morphism(r.m).iso);
}

TEST_CASE("mset factorization middle is the image plus the fixed points") {
  TheoryHandle ms = TheoryHandle::make("mset");
  MonoidTable m = band2();
  StructPtr x = make_mset("X", m, {"x"}, {{0}, {0}});
  StructPtr y = make_mset("Y", m, {"y0", "y1", "y2"}, {{0, 1, 2}, {0, 1, 2}});
  Morphism f{x, y, {1}};
  REQUIRE(is_valid_morphism(f));
  FactorizationResult r = factorize(ms, f);
  CHECK(r.dual);
  CHECK(r.middle->size() == 3);  // f(X) ∪ Fix(Y) = all of Y here
  CHECK(compose(r.e, r.m).map == f.map);
  // a non-trivial case: only part of the codomain is fixed
  StructPtr y2 = make_mset("Y2", m, {"a", "b", "c"}, {{0, 1, 2}, {1, 1, 2}});
  Morphism g{x, y2, {2}};
  REQUIRE(is_valid_morphism(g));
  FactorizationResult r2 = factorize(ms, g);
  CHECK(r2.middle->size() == 2);  // {c} ∪ Fix(Y2) = {b, c}
}

TEST_CASE("orthogonality with an isomorphism on the E side") {
  TheoryHandle mv = TheoryHandle::make("mv");
  StructPtr l2 = mv_chain(2);
  Morphism id = identity_morphism(l2);
  HomCache homs;
  OrthogonalityReport rep = check_orthogonality(mv, id, id, {}, homs);
  CHECK(rep.ok);
  CHECK(rep.squares > 0);
}

TEST_CASE("orthogonality rejects non-class arrows in the precondition") {
  TheoryHandle cos = TheoryHandle::make("coslice", 2);
  Morphism f = worked_projection();  // in E, not in M
  HomCache homs;
  CHECK_THROWS_AS(check_orthogonality(cos, f, f, {}, homs), DomainError);
}

TEST_CASE("conditions hold on small catalogs for the four theories") {
  struct Row {
    const char* tag;
    Kind kind;
    int bound;
    std::vector<const char*> conditions;
  };
  std::vector<Row> rows = {
      {"mv", Kind::MV, 5, {"N", "M", "S"}},
      {"heyting", Kind::Heyting, 5, {"S", "M", "N"}},
      {"mset", Kind::MSet, 3, {"S", "M", "N"}},
      {"coslice", Kind::Coslice, 8, {"M", "Mprime", "S", "N"}},
  };
  for (const auto& row : rows) {
    TheoryHandle th = TheoryHandle::make(row.tag, 2);
    Catalog cat = generate_catalog(row.kind, row.bound, 2);
    HomCache homs;
    homs.precompute(cat.instances);
    for (const char* c : row.conditions) {
      ConditionReport rep = check_condition(th, c, cat, homs);
      INFO(row.tag, " condition ", c, ": ", rep.detail);
      CHECK(rep.verdict);
    }
  }
}

TEST_CASE("the swapped MV theory is reported false with an explicit counterexample") {
  TheoryHandle swapped = TheoryHandle::make("mv-swapped");
  Catalog cat = generate_catalog(Kind::MV, 5);
  HomCache homs;
  homs.precompute(cat.instances);
  for (const char* c : {"axioms", "M", "S", "N"}) {
    ConditionReport rep = check_condition(swapped, c, cat, homs);
    CHECK_FALSE(rep.verdict);
    REQUIRE(rep.witness_arrow);
    CHECK(rep.witness_arrow->source->size() == 3);  // the morphism L2 -> L2
    CHECK(rep.witness_arrow->target->size() == 3);
    CHECK(rep.witness_object->name == "L2");
  }
}

TEST_CASE("condition P holds on small catalogs") {
  {
    TheoryHandle th = TheoryHandle::make("coslice", 2);
    Catalog cat = generate_catalog(Kind::Coslice, 6, 2);
    HomCache homs;
    homs.precompute(cat.instances);
    ConditionReport rep = check_condition(th, "P", cat, homs);
    INFO(rep.detail);
    CHECK(rep.verdict);
  }
  {
    TheoryHandle th = TheoryHandle::make("mset");
    Catalog cat = generate_catalog(Kind::MSet, 3);
    HomCache homs;
    homs.precompute(cat.instances);
    ConditionReport rep = check_condition(th, "P", cat, homs);
    INFO(rep.detail);
    CHECK(rep.verdict);
  }
}

TEST_CASE("heyting reflector preserves small binary pullbacks") {
  TheoryHandle th = TheoryHandle::make("heyting");
  Catalog cat = generate_catalog(Kind::Heyting, 5);
  HomCache homs;
  homs.precompute(cat.instances);
  ConditionReport rep = check_heyting_localization(th, cat, homs);
  INFO(rep.detail);
  CHECK(rep.verdict);
}

TEST_CASE("factorization system verifies on small catalogs") {
  struct Row {
    const char* tag;
    Kind kind;
    int bound;
  };
  for (const Row& row : {Row{"mv", Kind::MV, 5}, Row{"heyting", Kind::Heyting, 5},
                         Row{"mset", Kind::MSet, 3}, Row{"coslice", Kind::Coslice, 6}}) {
    TheoryHandle th = TheoryHandle::make(row.tag, 2);
    Catalog cat = generate_catalog(row.kind, row.bound, 2);
    HomCache homs;
    homs.precompute(cat.instances);
    SystemReport rep = verify_factorization_system(th, cat, homs);
    INFO(row.tag, ": ", rep.detail);
    CHECK(rep.ok);
    CHECK(rep.homs_factored > 0);
  }
}

TEST_CASE("E and M are closed under composition over sampled catalog pairs") {
  TheoryHandle cos = TheoryHandle::make("coslice", 2);
  Catalog cat = generate_catalog(Kind::Coslice, 6, 2);
  HomCache homs;
  homs.precompute(cat.instances);
  int e_checked = 0, m_checked = 0;
  for (const auto& a : cat.instances)
    for (const auto& b : cat.instances)
      for (const auto& c : cat.instances) {
        for (const Morphism& f : homs.homs(a, b)) {
          bool fe = in_E(cos, f), fm = in_M(cos, f);
          for (const Morphism& g : homs.homs(b, c)) {
            if (fe && in_E(cos, g) && e_checked < 300) {
              CHECK(in_E(cos, compose(g, f)));
              ++e_checked;
            }
            if (fm && in_M(cos, g) && m_checked < 300) {
              CHECK(in_M(cos, compose(g, f)));
              ++m_checked;
            }
          }
        }
      }
  CHECK(e_checked > 0);
  CHECK(m_checked > 0);
}
