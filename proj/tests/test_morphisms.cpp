#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tordec/morphisms.hpp"

using namespace tordec;

namespace {

MonoidTable band2() {
  MonoidTable m;
  m.elements = {"1", "e"};
  m.identity = 0;
  m.table = {{0, 1}, {1, 1}};
  return m;
}

}  // namespace

TEST_CASE("hom search agrees with the naive filter on small instances") {
  std::vector<std::pair<StructPtr, StructPtr>> cases;
  Catalog mv = generate_catalog(Kind::MV, 4);
  for (const auto& a : mv.instances)
    for (const auto& b : mv.instances)
      if (a->size() <= 4 && b->size() <= 4) cases.emplace_back(a, b);
  Catalog cos = generate_catalog(Kind::Coslice, 4, 2);
  for (const auto& a : cos.instances)
    for (const auto& b : cos.instances) cases.emplace_back(a, b);
  Catalog ms = generate_catalog(Kind::MSet, 3);
  for (const auto& a : ms.instances)
    for (const auto& b : ms.instances) {
      if (!same_family(*a, *b)) continue;
      if (a->size() > 3 || b->size() > 3) continue;
      cases.emplace_back(a, b);
    }
  for (const auto& [a, b] : cases) {
    auto fast = enumerate_homs(a, b);
    auto slow = enumerate_homs_naive(a, b);
    CHECK(fast.size() == slow.size());
    for (const auto& f : fast) CHECK(is_valid_morphism(f));
  }
}

TEST_CASE("no MV morphism from the 3-chain to the initial object") {
  CHECK(enumerate_homs(mv_chain(2), mv_chain(1)).empty());
}

TEST_CASE("exactly one morphism out of the initial object") {
  Catalog mv = generate_catalog(Kind::MV, 6);
  StructPtr initial = initial_mv();
  for (const auto& a : mv.instances) CHECK(enumerate_homs(initial, a).size() == 1);
  Catalog cos = generate_catalog(Kind::Coslice, 8, 2);
  StructPtr zm = cyclic_group(2, 1, 2);
  for (const auto& a : cos.instances) CHECK(enumerate_homs(zm, a).size() == 1);
}

TEST_CASE("the pointed hom (Z2,1) -> (Z4,2) is unique and sends 1 to 2") {
  auto hs = enumerate_homs(cyclic_group(2, 1, 2), cyclic_group(4, 2, 2));
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].map == std::vector<int>{0, 2});
}

TEST_CASE("classification flags") {
  StructPtr l2 = mv_chain(2);
  MorphismFlags id = classify_morphism(identity_morphism(l2));
  CHECK(id.mono);
  CHECK(id.epi);
  CHECK(id.iso);
  // unique map to the terminal structure: epi, not mono
  StructPtr t = terminal_structure(Kind::MV);
  Morphism bang{l2, t, {0, 0, 0}};
  REQUIRE(is_valid_morphism(bang));
  MorphismFlags fl = classify_morphism(bang);
  CHECK(fl.epi);
  CHECK_FALSE(fl.mono);
  // quotient Z4 -> Z2
  Morphism q{cyclic_group(4, 2, 2), cyclic_group(2, 0, 2), {0, 1, 0, 1}};
  REQUIRE(is_valid_morphism(q));
  CHECK(classify_morphism(q).epi);
  CHECK_FALSE(classify_morphism(q).mono);
}

TEST_CASE("subalgebra generated by the empty set is the constants") {
  SubalgebraResult r = subalgebra_generated(mv_chain(2), {});
  CHECK(r.member_indices == std::vector<int>{0, 2});
}

TEST_CASE("coslice subalgebra adjoins the basepoint") {
  ProductResult p = product(cyclic_group(4, 2, 2), cyclic_group(3, 0, 2));
  // re-point the product at (2,0)
  const FiniteStructure& pr = *p.prod;
  StructPtr a = make_coslice("Z4xZ3", pr.elements, pr.add, 2 * 3 + 0, 2);
  std::vector<int> subset;
  for (int y = 0; y < 3; ++y) subset.push_back(0 * 3 + y);  // {0} x Z3
  SubalgebraResult r = subalgebra_generated(a, subset);
  std::set<int> expect;
  for (int y = 0; y < 3; ++y) {
    expect.insert(0 * 3 + y);
    expect.insert(2 * 3 + y);
  }
  CHECK(std::set<int>(r.member_indices.begin(), r.member_indices.end()) == expect);
}

TEST_CASE("mset orbit closure") {
  StructPtr x = make_mset("X", band2(), {"x", "y"}, {{0, 1}, {1, 1}});
  SubalgebraResult r = subalgebra_generated(x, {0});
  CHECK(r.member_indices == std::vector<int>{0, 1});
}

TEST_CASE("congruence generation") {
  StructPtr l2 = mv_chain(2);
  CHECK(congruence_generated(*l2, {}).num_classes == 3);
  // collapsing 0 with h forces everything together
  CHECK(congruence_generated(*l2, {{0, 1}}).num_classes == 1);
  StructPtr z4 = cyclic_group(4, 0, 2);
  Congruence c = congruence_generated(*z4, {{0, 2}});
  CHECK(c.num_classes == 2);
  CHECK(c.class_of == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("quotients") {
  StructPtr z4 = cyclic_group(4, 2, 2);
  QuotientResult idq = quotient(z4, identity_congruence(*z4));
  CHECK(idq.quot->size() == 4);
  CHECK(classify_morphism(idq.projection).iso);
  QuotientResult total = quotient(z4, total_congruence(*z4));
  CHECK(total.quot->size() == 1);
  QuotientResult half = quotient(z4, congruence_generated(*z4, {{0, 2}}));
  CHECK(half.quot->size() == 2);
  CHECK(half.quot->basepoint == 0);  // [2] = [0]
  CHECK(validate(*half.quot).valid);
}

TEST_CASE("pullback of identities is the diagonal") {
  StructPtr l2 = mv_chain(2);
  Morphism id = identity_morphism(l2);
  PullbackResult pb = pullback(id, id);
  CHECK(pb.obj->size() == 3);
  CHECK(classify_morphism(pb.to_left).iso);
  CHECK(pb.to_left.map == pb.to_right.map);  // both projections agree on the diagonal
}

TEST_CASE("coslice pullback along an identity recovers the source") {
  StructPtr z4 = cyclic_group(4, 2, 2);
  StructPtr z2 = cyclic_group(2, 0, 2);
  Morphism f{z4, z2, {0, 1, 0, 1}};
  REQUIRE(is_valid_morphism(f));
  PullbackResult pb = pullback(f, identity_morphism(z2));
  CHECK(find_iso(pb.obj, z4).has_value());
}

TEST_CASE("kernel pair of the mod-2 quotient") {
  StructPtr z4 = cyclic_group(4, 2, 2);
  StructPtr z2 = cyclic_group(2, 0, 2);
  Morphism f{z4, z2, {0, 1, 0, 1}};
  KernelPairResult kp = kernel_pair(f);
  CHECK(kp.eq.class_of == std::vector<int>{0, 1, 0, 1});
  CHECK(kp.obj->size() == 8);
  CHECK(is_valid_morphism(kp.p1));
  CHECK(is_valid_morphism(kp.p2));
}

TEST_CASE("image factorization composes back to the original") {
  StructPtr z4 = cyclic_group(4, 0, 2);
  StructPtr z8 = cyclic_group(8, 0, 2);
  Morphism f{z4, z8, {0, 2, 4, 6}};
  REQUIRE(is_valid_morphism(f));
  ImageFactorization im = image(f);
  CHECK(im.image->size() == 4);
  CHECK(classify_morphism(im.epi).epi);
  CHECK(classify_morphism(im.mono).mono);
  CHECK(compose(im.mono, im.epi).map == f.map);
}

TEST_CASE("pullback universal property against a small catalog") {
  Catalog cos = generate_catalog(Kind::Coslice, 6, 2);
  HomCache homs;
  homs.precompute(cos.instances);
  int pullbacks = 0, squares = 0;
  for (const auto& a : cos.instances)
    for (const auto& b : cos.instances)
      for (const auto& c : cos.instances) {
        for (const Morphism& f : homs.homs(a, c))
          for (const Morphism& g : homs.homs(b, c)) {
            if (++pullbacks > 40) return;  // sampled but broad coverage
            PullbackResult pb = pullback(f, g);
            for (const auto& w : cos.instances) {
              auto into_pb = enumerate_homs(w, pb.obj);
              for (const Morphism& u : homs.homs(w, a))
                for (const Morphism& v : homs.homs(w, b)) {
                  if (compose(f, u).map != compose(g, v).map) continue;
                  ++squares;
                  int count = 0;
                  for (const Morphism& h : into_pb)
                    if (compose(pb.to_left, h).map == u.map &&
                        compose(pb.to_right, h).map == v.map)
                      ++count;
                  CHECK(count == 1);
                }
            }
          }
      }
  CHECK(squares > 0);
}

TEST_CASE("generated congruence quotient is the universal coequalizer") {
  Catalog mv = generate_catalog(Kind::MV, 4);
  StructPtr a = mv_chain(3);
  std::vector<std::pair<int, int>> pairs = {{1, 2}};  // collapse 1/3 with 2/3
  Congruence c = congruence_generated(*a, pairs);
  QuotientResult q = quotient(a, c);
  for (const auto& t : mv.instances) {
    for (const Morphism& f : enumerate_homs(a, t)) {
      bool coequalizes = true;
      for (auto [x, y] : pairs)
        if (f.map[x] != f.map[y]) coequalizes = false;
      if (!coequalizes) continue;
      int count = 0;
      for (const Morphism& h : enumerate_homs(q.quot, t))
        if (compose(h, q.projection).map == f.map) ++count;
      CHECK(count == 1);
    }
  }
}

TEST_CASE("mset pushout glues along the span") {
  MonoidTable m = band2();
  StructPtr s = make_mset("S", m, {"s"}, {{0}, {0}});
  StructPtr x = make_mset("X", m, {"x0", "x1"}, {{0, 1}, {1, 1}});
  StructPtr y = make_mset("Y", m, {"y0"}, {{0}, {0}});
  Morphism u{s, x, {1}};
  Morphism v{s, y, {0}};
  REQUIRE(is_valid_morphism(u));
  REQUIRE(is_valid_morphism(v));
  PushoutResult po = mset_pushout(u, v);
  CHECK(po.obj->size() == 2);  // x0 and the glued point
  CHECK(po.from_left.map[1] == po.from_right.map[0]);
  // universal property against a few cocones
  for (const auto& t : {x, y, po.obj}) {
    for (const Morphism& f : enumerate_homs(x, t))
      for (const Morphism& g : enumerate_homs(y, t)) {
        if (compose(f, u).map != compose(g, v).map) continue;
        int count = 0;
        for (const Morphism& h : enumerate_homs(po.obj, t))
          if (compose(h, po.from_left).map == f.map && compose(h, po.from_right).map == g.map)
            ++count;
        CHECK(count == 1);
      }
  }
}

TEST_CASE("all_congruences finds the full subgroup lattice of Z4") {
  StructPtr z4 = cyclic_group(4, 0, 2);
  auto cs = all_congruences(*z4);
  CHECK(cs.size() == 3);  // trivial, index-2, total
}

TEST_CASE("family mismatches are rejected") {
  CHECK_THROWS_AS(enumerate_homs(mv_chain(2), cyclic_group(3, 0, 2)), DomainError);
  CHECK_THROWS_AS(product(cyclic_group(2, 0, 2), cyclic_group(2, 0, 3)), DomainError);
  MonoidTable m1;
  m1.elements = {"1"};
  m1.identity = 0;
  m1.table = {{0}};
  MonoidTable m2;
  m2.elements = {"1", "g"};
  m2.identity = 0;
  m2.table = {{0, 1}, {1, 0}};
  StructPtr x = make_mset("X", m1, {"x"}, {{0}});
  StructPtr y = make_mset("Y", m2, {"y"}, {{0}, {0}});
  CHECK_THROWS_AS(enumerate_homs(x, y), DomainError);
}
