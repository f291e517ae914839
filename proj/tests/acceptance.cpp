// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// The canonical JSON payload is rebuilt twice for the reproducibility check.

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "tordec/cli.hpp"
#include "tordec/json_io.hpp"
#include "tordec/parallel.hpp"

using namespace tordec;

namespace {

struct FamilyContext {
  TheoryHandle theory;
  Catalog catalog;
  HomCache homs;
};

struct Suite {
  FamilyContext mv, heyting, mset, coslice;

  Suite() {
    mv.theory = TheoryHandle::make("mv");
    mv.catalog = generate_catalog(Kind::MV, 9);
    heyting.theory = TheoryHandle::make("heyting");
    heyting.catalog = generate_catalog(Kind::Heyting, 8);
    mset.theory = TheoryHandle::make("mset");
    mset.catalog = generate_catalog(Kind::MSet, 4);
    coslice.theory = TheoryHandle::make("coslice", 2);
    coslice.catalog = generate_catalog(Kind::Coslice, 12, 2);
    for (FamilyContext* c : {&mv, &heyting, &mset, &coslice})
      c->homs.precompute(c->catalog.instances);
  }

  std::vector<FamilyContext*> all() { return {&mv, &heyting, &mset, &coslice}; }
};

struct CriterionResult {
  bool pass = true;
  std::string detail;
};

StructPtr worked_product() {
  ProductResult p = product(cyclic_group(4, 2, 2), cyclic_group(3, 0, 2));
  return make_coslice("Z4xZ3", p.prod->elements, p.prod->add, 2 * 3 + 0, 2);
}

Morphism worked_projection() {
  StructPtr a = worked_product();
  StructPtr z4 = cyclic_group(4, 2, 2);
  std::vector<int> map(12);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 3; ++y) map[x * 3 + y] = x;
  return Morphism{a, z4, map};
}

// 1. decompose everything; certify both witnesses by the bounded oracles
CriterionResult criterion1(Suite& s, Json& payload) {
  CriterionResult out;
  Json fam = Json::object();
  for (FamilyContext* c : s.all()) {
    std::vector<std::string> errors(c->catalog.instances.size());
    par::for_index(c->catalog.instances.size(), [&](std::size_t i) {
      const StructPtr& a = c->catalog.instances[i];
      try {
        ZExactSequence seq = decompose(c->theory, a);
        std::string why;
        if (!zkernel_universal(seq.zker, c->catalog.instances, c->homs, &why))
          throw InternalError("zker oracle: " + why);
        if (!zcokernel_universal(seq.zcoker, c->catalog.instances, c->homs, &why))
          throw InternalError("zcoker oracle: " + why);
      } catch (const std::exception& e) {
        errors[i] = a->name + std::string(": ") + e.what();
      }
    });
    for (const auto& e : errors)
      if (!e.empty()) {
        out.pass = false;
        out.detail = c->theory.tag + " " + e;
        return out;
      }
    fam[c->theory.tag] = c->catalog.instances.size();
  }
  payload["criterion1"] = fam;
  return out;
}

// 2. torsion-theory axioms over the full catalogs
CriterionResult criterion2(Suite& s, Json& payload) {
  CriterionResult out;
  Json fam = Json::object();
  for (FamilyContext* c : s.all()) {
    ConditionReport rep = check_condition(c->theory, "axioms", c->catalog, c->homs);
    fam[c->theory.tag] = condition_to_json(rep);
    if (!rep.verdict) {
      out.pass = false;
      out.detail = c->theory.tag + ": " + rep.detail;
    }
    for (const auto& a : c->catalog.instances) {
      bool both = c->theory.is_torsion(*a) && c->theory.is_torsion_free(*a);
      if (both != in_zero_class(*a)) {
        out.pass = false;
        out.detail = c->theory.tag + ": T ∩ F mismatch at " + a->name;
      }
    }
  }
  payload["criterion2"] = fam;
  return out;
}

// 3. condition table per family plus the deliberately swapped theory
CriterionResult criterion3(Suite& s, Json& payload) {
  CriterionResult out;
  Json fam = Json::object();
  auto run = [&](FamilyContext& c, const std::vector<const char*>& conds) {
    Json reports = Json::object();
    for (const char* tag : conds) {
      ConditionReport rep = check_condition(c.theory, tag, c.catalog, c.homs);
      reports[tag] = condition_to_json(rep);
      if (!rep.verdict) {
        out.pass = false;
        out.detail = c.theory.tag + " condition " + std::string(tag) + ": " + rep.detail;
      }
    }
    fam[c.theory.tag] = std::move(reports);
  };
  run(s.mv, {"N", "M", "S"});
  run(s.heyting, {"S", "M", "N"});
  run(s.mset, {"S", "M", "N"});
  run(s.coslice, {"M", "Mprime", "S", "N"});

  TheoryHandle swapped = TheoryHandle::make("mv-swapped");
  ConditionReport rep = check_condition(swapped, "M", s.mv.catalog, s.mv.homs);
  fam["mv-swapped"] = condition_to_json(rep);
  if (rep.verdict || !rep.witness_arrow || !rep.witness_object ||
      rep.witness_object->name != "L2" || rep.witness_arrow->source->size() != 3 ||
      rep.witness_arrow->target->size() != 3) {
    out.pass = false;
    out.detail = "swapped theory did not fail with the L2 -> L2 counterexample";
  }
  payload["criterion3"] = fam;
  return out;
}

// 4. factorization system: closed vs generic, lifting, stability
CriterionResult criterion4(Suite& s, Json& payload) {
  CriterionResult out;
  Json fam = Json::object();
  for (FamilyContext* c : s.all()) {
    SystemReport rep = verify_factorization_system(c->theory, c->catalog, c->homs);
    Json j;
    j["ok"] = rep.ok;
    j["homs_factored"] = rep.homs_factored;
    j["lifting_configurations"] = rep.ortho_checked;
    j["stability_pullbacks"] = rep.stability_checked;
    fam[c->theory.tag] = std::move(j);
    if (!rep.ok) {
      out.pass = false;
      out.detail = c->theory.tag + ": " + rep.detail;
    }
  }
  payload["criterion4"] = fam;
  return out;
}

// 5. normal-vs-central agreement over every descent morphism (coslice, heyting)
CriterionResult criterion5(Suite& s, Json& payload) {
  CriterionResult out;
  Json fam = Json::object();
  for (FamilyContext* c : {&s.coslice, &s.heyting}) {
    GaloisContext ctx = make_galois_context(c->theory, c->catalog, c->homs);
    if (!ctx.admissible) {
      out.pass = false;
      out.detail = c->theory.tag + ": context not admissible";
      continue;
    }
    const auto& objs = c->catalog.instances;
    std::vector<std::pair<const StructPtr*, const StructPtr*>> pairs;
    for (const auto& a : objs)
      for (const auto& b : objs)
        if (same_family(*a, *b)) pairs.emplace_back(&a, &b);
    std::vector<int> counts(pairs.size(), 0);
    std::vector<std::string> errors(pairs.size());
    par::for_index(pairs.size(), [&](std::size_t i) {
      for (const Morphism& f : c->homs.homs(*pairs[i].first, *pairs[i].second)) {
        if (!is_descent_morphism(c->theory, f)) continue;
        bool central = central_via_kernel(ctx, f);
        bool normal = normal_via_kernel_pairs(ctx, f);
        if (central != normal) {
          errors[i] = "disagreement on an arrow " + (*pairs[i].first)->name + " -> " +
                      (*pairs[i].second)->name;
          return;
        }
        ++counts[i];
      }
    });
    int total = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!errors[i].empty()) {
        out.pass = false;
        out.detail = c->theory.tag + ": " + errors[i];
      }
      total += counts[i];
    }
    fam[c->theory.tag] = total;
  }
  payload["criterion5"] = fam;
  return out;
}

// 6. heyting central => trivial; the two worked coslice instances classify as stated
CriterionResult criterion6(Suite& s, Json& payload) {
  CriterionResult out;
  Json j = Json::object();
  {
    GaloisContext ctx = make_galois_context(s.heyting.theory, s.heyting.catalog, s.heyting.homs);
    int central_count = 0;
    for (const auto& a : s.heyting.catalog.instances)
      for (const auto& b : s.heyting.catalog.instances)
        for (const Morphism& f : s.heyting.homs.homs(a, b)) {
          if (!is_descent_morphism(s.heyting.theory, f)) continue;
          if (!central_via_kernel(ctx, f)) continue;
          ++central_count;
          if (!is_trivial_extension(ctx, f)) {
            out.pass = false;
            out.detail =
                "central heyting extension " + a->name + " -> " + b->name + " is not trivial";
          }
        }
    j["heyting_central_extensions"] = central_count;
  }
  {
    GaloisContext ctx = make_galois_context(s.coslice.theory, s.coslice.catalog, s.coslice.homs);
    Morphism mod2{cyclic_group(4, 2, 2), cyclic_group(2, 0, 2), {0, 1, 0, 1}};
    ExtensionClass a = classify_extension(ctx, mod2);
    ExtensionClass b = classify_extension(ctx, worked_projection());
    j["mod2_instance"] = extension_tag_name(a.tag);
    j["projection_instance"] = extension_tag_name(b.tag);
    if (a.tag != ExtensionTag::Trivial) {
      out.pass = false;
      out.detail = "the mod-2 instance is not Trivial";
    }
    if (b.tag != ExtensionTag::NonCentral) {
      out.pass = false;
      out.detail = "the divisible-part projection is not NonCentral";
    }
  }
  payload["criterion6"] = j;
  return out;
}

// 7. protoadditivity per family; all binary pullbacks for heyting
CriterionResult criterion7(Suite& s, Json& payload) {
  CriterionResult out;
  Json fam = Json::object();
  for (FamilyContext* c : {&s.mv, &s.mset, &s.coslice}) {
    ConditionReport rep = check_condition(c->theory, "P", c->catalog, c->homs);
    fam[c->theory.tag] = condition_to_json(rep);
    if (!rep.verdict) {
      out.pass = false;
      out.detail = c->theory.tag + " protoadditivity: " + rep.detail;
    }
  }
  {
    ConditionReport rep =
        check_heyting_localization(s.heyting.theory, s.heyting.catalog, s.heyting.homs);
    fam["heyting"] = condition_to_json(rep);
    if (!rep.verdict) {
      out.pass = false;
      out.detail = "heyting localization: " + rep.detail;
    }
  }
  payload["criterion7"] = fam;
  return out;
}

// 8. every catalog MV-algebra is semisimple; every factorization has an iso E-part
CriterionResult criterion8(Suite& s, Json& payload) {
  CriterionResult out;
  int checked = 0;
  for (const auto& a : s.mv.catalog.instances) {
    if (!mv_is_semisimple(*a)) {
      out.pass = false;
      out.detail = a->name + " is not semisimple";
    }
  }
  for (const auto& a : s.mv.catalog.instances)
    for (const auto& b : s.mv.catalog.instances)
      for (const Morphism& f : s.mv.homs.homs(a, b)) {
        FactorizationResult r = factorize(s.mv.theory, f);
        ++checked;
        if (!classify_morphism(r.e).iso) {
          out.pass = false;
          out.detail = "non-iso E-part over " + a->name;
        }
      }
  payload["criterion8"] =
      Json{{"mv_objects", s.mv.catalog.instances.size()}, {"factorizations", checked}};
  return out;
}

Json build_payload(std::vector<CriterionResult>& results) {
  Suite s;
  Json payload = Json::object();
  results.push_back(criterion1(s, payload));
  results.push_back(criterion2(s, payload));
  results.push_back(criterion3(s, payload));
  results.push_back(criterion4(s, payload));
  results.push_back(criterion5(s, payload));
  results.push_back(criterion6(s, payload));
  results.push_back(criterion7(s, payload));
  results.push_back(criterion8(s, payload));
  return payload;
}

const char* criterion_names[] = {
    "decomposition exactness with Z-kernel/Z-cokernel oracles",
    "torsion-theory axioms (T ∩ F = Z, only trivial arrows T -> F)",
    "condition suite per family plus the swapped-theory counterexample",
    "factorization system: closed vs generic, lifting, stability",
    "normal/central agreement over all descent morphisms",
    "heyting central => trivial; worked coslice instances",
    "protoadditivity (all binary pullbacks for heyting)",
    "finite MV semisimplicity regression",
    "byte-identical reports across two full runs",
};

}  // namespace

int main(int argc, char** argv) {
  bool serial = argc > 1 && std::string(argv[1]) == "--serial";
  if (serial) par::mode() = par::Mode::Serial;

  auto t0 = std::chrono::steady_clock::now();
  std::vector<CriterionResult> results;
  Json payload = build_payload(results);

  // criterion 9: a second full run, fresh caches and catalogs, identical bytes;
  // plus a CLI double-run on a fixed command
  CriterionResult c9;
  {
    std::vector<CriterionResult> again;
    Json payload2 = build_payload(again);
    if (dump_canonical(payload) != dump_canonical(payload2)) {
      c9.pass = false;
      c9.detail = "suite payloads differ between runs";
    }
    std::ostringstream o1, o2, e1, e2;
    std::vector<std::string> cmd = {"check",       "--theory", "heyting",
                                    "--condition", "S",        "--catalog-bound", "6"};
    int r1 = cli::run(cmd, o1, e1);
    int r2 = cli::run(cmd, o2, e2);
    if (r1 != 0 || r2 != 0 || o1.str() != o2.str()) {
      c9.pass = false;
      c9.detail = "CLI output differs between runs";
    }
  }
  results.push_back(c9);

  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    bool ok = results[i].pass;
    failures += ok ? 0 : 1;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
              << criterion_names[i];
    if (!ok) std::cout << " — " << results[i].detail;
    std::cout << "\n";
  }
  std::cout << "acceptance " << (failures == 0 ? "PASSED" : "FAILED") << " (" << results.size()
            << " criteria, " << elapsed << "s, " << par::mode_name(par::mode()) << ")\n";
  return failures == 0 ? 0 : 1;
}
