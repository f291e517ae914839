#include "tordec/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tordec/json_io.hpp"
#include "tordec/parallel.hpp"

namespace tordec::cli {

namespace {

int default_bound(Kind k) {
  switch (k) {
    case Kind::MV: return 9;
    case Kind::Heyting: return 8;
    case Kind::MSet: return 4;
    case Kind::Coslice: return 12;
  }
  return 6;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DomainError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

struct LoadedFiles {
  std::vector<StructPtr> structures;
  std::vector<Json> morphisms;
};

LoadedFiles load_files(const std::vector<std::string>& paths, bool validate_structures) {
  LoadedFiles out;
  for (const auto& p : paths) {
    Json j = load_json(p);
    if (j.contains("map")) {
      out.morphisms.push_back(std::move(j));
      continue;
    }
    StructPtr s = structure_from_json(j);
    if (validate_structures) {
      ValidationReport rep = validate(*s);
      if (!rep.valid)
        throw DomainError("structure '" + s->name + "' violates " + rep.violations[0].axiom +
                          " at " + rep.violations[0].witness);
    }
    out.structures.push_back(std::move(s));
  }
  return out;
}

Morphism single_morphism(const LoadedFiles& files) {
  if (files.morphisms.size() != 1)
    throw DomainError("expected exactly one morphism file among the inputs");
  return morphism_from_json(files.morphisms[0], files.structures);
}

TheoryHandle theory_for(const std::string& tag, int modulus) {
  return TheoryHandle::make(tag, modulus);
}

void emit(std::ostream& out, const Json& j) { out << dump_canonical(j); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"torsion-theoretic decompositions on finite algebraic structures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<std::string> files;
  std::string theory_tag = "mv";
  std::string condition = "S";
  std::string kind_tag = "mv";
  std::string out_dir;
  std::string format = "json";
  int modulus = 2;
  int catalog_bound = 0;
  bool serial = false;

  app.add_flag("--serial", serial, "run sweeps on the serial reference path");
  app.add_option("--format", format, "output format (json)")
      ->check(CLI::IsMember({"json"}));

  auto add_common = [&](CLI::App* c, bool with_theory) {
    if (with_theory)
      c->add_option("--theory", theory_tag, "mv | heyting | mset | coslice | mv-swapped");
    c->add_option("--modulus", modulus, "coslice modulus m");
    c->add_option("--catalog-bound", catalog_bound, "size bound for catalog sweeps");
  };

  auto* c_validate = app.add_subcommand("validate", "check the axioms of a structure file");
  c_validate->add_option("files", files)->required();

  auto* c_homs = app.add_subcommand("homs", "enumerate all morphisms between two structures");
  c_homs->add_option("files", files)->required()->expected(2);

  auto* c_decompose =
      app.add_subcommand("decompose", "torsion-theoretic short exact sequence of a structure");
  add_common(c_decompose, true);
  c_decompose->add_option("files", files)->required()->expected(1);

  auto* c_radical = app.add_subcommand("radical", "radical of an MV-algebra");
  c_radical->add_option("files", files)->required()->expected(1);

  auto* c_fix = app.add_subcommand("fix", "fixed points of a monoid action");
  c_fix->add_option("files", files)->required()->expected(1);

  auto* c_div = app.add_subcommand("divisible-part", "m-divisible part of a pointed group");
  c_div->add_option("files", files)->required()->expected(1);

  auto* c_zker = app.add_subcommand("zker", "Z-kernel witness of a morphism");
  c_zker->add_option("files", files)->required();

  auto* c_zcoker = app.add_subcommand("zcoker", "Z-cokernel witness of a morphism, if any");
  c_zcoker->add_option("files", files)->required();

  auto* c_fact = app.add_subcommand("factorize", "(E, M)-factorization of a morphism");
  add_common(c_fact, true);
  c_fact->add_option("files", files)->required();

  auto* c_check = app.add_subcommand("check", "verify a torsion-theory condition on a catalog");
  add_common(c_check, true);
  c_check->add_option("--condition", condition, "axioms | N | M | Mprime | S | P");

  auto* c_classify =
      app.add_subcommand("classify-extension", "trivial/normal/central classification");
  add_common(c_classify, true);
  c_classify->add_option("files", files)->required();

  auto* c_catalog = app.add_subcommand("catalog", "generate the deterministic catalog");
  c_catalog->add_option("--kind", kind_tag, "mv | heyting | mset | coslice");
  c_catalog->add_option("--size-bound", catalog_bound, "largest structure size");
  c_catalog->add_option("--modulus", modulus, "coslice modulus m");
  c_catalog->add_option("--out", out_dir, "write one file per structure plus a manifest");

  std::vector<const char*> argv;
  argv.push_back("tordec");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (serial) par::mode() = par::Mode::Serial;

  try {
    if (c_validate->parsed()) {
      LoadedFiles lf = load_files(files, false);
      Json result = Json::array();
      for (const auto& s : lf.structures) {
        Json j = validation_to_json(validate(*s));
        j["name"] = s->name;
        result.push_back(std::move(j));
      }
      emit(out, result.size() == 1 ? result[0] : result);
      return 0;
    }
    if (c_homs->parsed()) {
      LoadedFiles lf = load_files(files, true);
      if (lf.structures.size() != 2) throw DomainError("homs: two structure files expected");
      auto hs = enumerate_homs(lf.structures[0], lf.structures[1]);
      Json j;
      j["source"] = lf.structures[0]->name;
      j["target"] = lf.structures[1]->name;
      j["count"] = hs.size();
      Json arr = Json::array();
      for (const auto& h : hs) arr.push_back(morphism_to_json(h));
      j["homs"] = std::move(arr);
      emit(out, j);
      return 0;
    }
    if (c_decompose->parsed()) {
      LoadedFiles lf = load_files(files, true);
      const StructPtr& s = lf.structures.at(0);
      TheoryHandle th = theory_for(theory_tag, s->kind == Kind::Coslice ? s->modulus : modulus);
      if (th.family != s->kind) throw DomainError("theory does not match the structure family");
      emit(out, sequence_to_json(decompose(th, s)));
      return 0;
    }
    if (c_radical->parsed() || c_fix->parsed() || c_div->parsed()) {
      LoadedFiles lf = load_files(files, true);
      const StructPtr& s = lf.structures.at(0);
      Json j;
      j["object"] = s->name;
      std::vector<int> subset;
      if (c_radical->parsed()) {
        if (s->kind != Kind::MV) throw DomainError("radical: mv structure expected");
        subset = mv_radical(*s);
      } else if (c_fix->parsed()) {
        if (s->kind != Kind::MSet) throw DomainError("fix: mset structure expected");
        subset = mset_fix(*s);
      } else {
        if (s->kind != Kind::Coslice) throw DomainError("divisible-part: coslice expected");
        subset = coslice_divisible_part(*s);
      }
      Json arr = Json::array();
      for (int i : subset) arr.push_back(s->elements[i]);
      j["subset"] = std::move(arr);
      emit(out, j);
      return 0;
    }
    if (c_zker->parsed()) {
      LoadedFiles lf = load_files(files, true);
      emit(out, zkernel_to_json(zkernel(single_morphism(lf))));
      return 0;
    }
    if (c_zcoker->parsed()) {
      LoadedFiles lf = load_files(files, true);
      auto w = zcokernel(single_morphism(lf));
      Json j;
      j["exists"] = bool(w);
      j["witness"] = w ? zcokernel_to_json(*w) : Json(nullptr);
      emit(out, j);
      return 0;
    }
    if (c_fact->parsed()) {
      LoadedFiles lf = load_files(files, true);
      Morphism f = single_morphism(lf);
      TheoryHandle th = theory_for(
          theory_tag, f.source->kind == Kind::Coslice ? f.source->modulus : modulus);
      emit(out, factorization_to_json(factorize(th, f)));
      return 0;
    }
    if (c_check->parsed()) {
      TheoryHandle th = theory_for(theory_tag, modulus);
      int bound = catalog_bound > 0 ? catalog_bound : default_bound(th.family);
      Catalog cat = generate_catalog(th.family, bound, modulus);
      HomCache homs;
      homs.precompute(cat.instances);
      ConditionReport rep = check_condition(th, condition, cat, homs);
      Json j = condition_to_json(rep);
      j["theory"] = th.tag;
      j["catalog_bound"] = bound;
      emit(out, j);
      return 0;
    }
    if (c_classify->parsed()) {
      LoadedFiles lf = load_files(files, true);
      Morphism f = single_morphism(lf);
      TheoryHandle th = theory_for(
          theory_tag, f.source->kind == Kind::Coslice ? f.source->modulus : modulus);
      if (th.family != f.source->kind)
        throw DomainError("theory does not match the morphism family");
      int bound = catalog_bound > 0 ? catalog_bound : default_bound(th.family);
      HomCache homs;
      Catalog cat = generate_catalog(th.family, bound, th.modulus);
      homs.precompute(cat.instances);
      GaloisContext ctx = make_galois_context(th, std::move(cat), homs);
      emit(out, extension_to_json(classify_extension(ctx, f)));
      return 0;
    }
    if (c_catalog->parsed()) {
      auto kind = kind_from_name(kind_tag);
      if (!kind) throw DomainError("unknown kind '" + kind_tag + "'");
      int bound = catalog_bound > 0 ? catalog_bound : default_bound(*kind);
      Catalog cat = generate_catalog(*kind, bound, modulus);
      Json manifest;
      manifest["kind"] = kind_name(cat.kind);
      manifest["size_bound"] = cat.size_bound;
      if (cat.kind == Kind::Coslice) manifest["modulus"] = cat.modulus;
      manifest["count"] = cat.instances.size();
      Json names = Json::array();
      for (const auto& s : cat.instances) names.push_back(s->name);
      manifest["instances"] = std::move(names);
      if (out_dir.empty()) {
        Json j = manifest;
        Json arr = Json::array();
        for (const auto& s : cat.instances) arr.push_back(structure_to_json(*s));
        j["structures"] = std::move(arr);
        emit(out, j);
      } else {
        std::filesystem::create_directories(out_dir);
        for (const auto& s : cat.instances) {
          std::ofstream f(std::filesystem::path(out_dir) / (s->name + ".json"));
          f << dump_canonical(structure_to_json(*s));
        }
        std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json");
        mf << dump_canonical(manifest);
        emit(out, manifest);
      }
      return 0;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace tordec::cli
