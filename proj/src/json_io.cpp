#include "tordec/json_io.hpp"

#include <map>

namespace tordec {

namespace {

Json table_to_labels(const Table& t, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (int v : row) r.push_back(labels[v]);
    out.push_back(std::move(r));
  }
  return out;
}

Json vec_to_labels(const std::vector<int>& v, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (int x : v) out.push_back(labels[x]);
  return out;
}

std::vector<std::string> parse_labels(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw DomainError(std::string(key) + " missing");
  std::vector<std::string> out;
  for (const auto& e : j[key]) out.push_back(e.get<std::string>());
  return out;
}

std::map<std::string, int> label_index(const std::vector<std::string>& labels) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!out.emplace(labels[i], static_cast<int>(i)).second)
      throw DomainError("duplicate label '" + labels[i] + "'");
  }
  return out;
}

int resolve(const std::map<std::string, int>& idx, const Json& j) {
  auto it = idx.find(j.get<std::string>());
  if (it == idx.end()) throw DomainError("unknown element label '" + j.get<std::string>() + "'");
  return it->second;
}

Table parse_table(const Json& j, const char* key, const std::map<std::string, int>& idx) {
  if (!j.contains(key) || !j[key].is_array()) throw DomainError(std::string(key) + " missing");
  Table out;
  for (const auto& row : j[key]) {
    std::vector<int> r;
    for (const auto& e : row) r.push_back(resolve(idx, e));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<int> parse_vec(const Json& j, const char* key,
                           const std::map<std::string, int>& idx) {
  if (!j.contains(key) || !j[key].is_array()) throw DomainError(std::string(key) + " missing");
  std::vector<int> out;
  for (const auto& e : j[key]) out.push_back(resolve(idx, e));
  return out;
}

}  // namespace

Json structure_to_json(const FiniteStructure& s) {
  Json j;
  j["kind"] = kind_name(s.kind);
  j["name"] = s.name;
  j["elements"] = s.elements;
  switch (s.kind) {
    case Kind::MV:
      j["oplus"] = table_to_labels(s.oplus, s.elements);
      j["neg"] = vec_to_labels(s.neg, s.elements);
      break;
    case Kind::Heyting:
      j["bottom"] = s.elements[s.bottom];
      j["top"] = s.elements[s.top];
      j["meet"] = table_to_labels(s.meet, s.elements);
      j["join"] = table_to_labels(s.join, s.elements);
      break;
    case Kind::MSet: {
      Json mon;
      mon["elements"] = s.monoid.elements;
      mon["identity"] = s.monoid.elements[s.monoid.identity];
      mon["table"] = table_to_labels(s.monoid.table, s.monoid.elements);
      j["monoid"] = std::move(mon);
      j["action"] = table_to_labels(s.action, s.elements);
      break;
    }
    case Kind::Coslice:
      j["modulus"] = s.modulus;
      j["basepoint"] = s.elements[s.basepoint];
      j["add"] = table_to_labels(s.add, s.elements);
      break;
  }
  return j;
}

StructPtr structure_from_json(const Json& j) {
  if (!j.contains("kind")) throw DomainError("structure file: kind missing");
  auto kind = kind_from_name(j["kind"].get<std::string>());
  if (!kind) throw DomainError("structure file: unknown kind");
  std::string name = j.value("name", std::string("unnamed"));
  std::vector<std::string> elements = parse_labels(j, "elements");
  auto idx = label_index(elements);
  switch (*kind) {
    case Kind::MV:
      return make_mv(name, elements, parse_table(j, "oplus", idx), parse_vec(j, "neg", idx));
    case Kind::Heyting:
      return make_heyting(name, elements, parse_table(j, "meet", idx),
                          parse_table(j, "join", idx), resolve(idx, j.at("bottom")),
                          resolve(idx, j.at("top")));
    case Kind::MSet: {
      if (!j.contains("monoid")) throw DomainError("mset file: monoid missing");
      const Json& mj = j["monoid"];
      MonoidTable mon;
      mon.elements = parse_labels(mj, "elements");
      auto midx = label_index(mon.elements);
      mon.identity = resolve(midx, mj.at("identity"));
      mon.table = parse_table(mj, "table", midx);
      // action rows are indexed by monoid elements, entries are carrier labels
      if (!j.contains("action")) throw DomainError("mset file: action missing");
      Table action;
      for (const auto& row : j["action"]) {
        std::vector<int> r;
        for (const auto& e : row) r.push_back(resolve(idx, e));
        action.push_back(std::move(r));
      }
      return make_mset(name, mon, elements, action);
    }
    case Kind::Coslice:
      return make_coslice(name, elements, parse_table(j, "add", idx),
                          resolve(idx, j.at("basepoint")), j.at("modulus").get<int>());
  }
  throw DomainError("unreachable");
}

Json morphism_to_json(const Morphism& f) {
  Json j;
  j["source"] = f.source->name;
  j["target"] = f.target->name;
  Json map;
  for (int i = 0; i < f.source->size(); ++i)
    map[f.source->elements[i]] = f.target->elements[f.map[i]];
  j["map"] = std::move(map);
  return j;
}

Morphism morphism_from_json(const Json& j, const std::vector<StructPtr>& registry) {
  auto find = [&](const std::string& name) -> StructPtr {
    for (const auto& s : registry)
      if (s->name == name) return s;
    throw DomainError("morphism file references unknown structure '" + name + "'");
  };
  StructPtr src = find(j.at("source").get<std::string>());
  StructPtr tgt = find(j.at("target").get<std::string>());
  auto sidx = label_index(src->elements);
  auto tidx = label_index(tgt->elements);
  std::vector<int> map(src->size(), -1);
  for (const auto& [k, v] : j.at("map").items()) {
    auto it = sidx.find(k);
    if (it == sidx.end()) throw DomainError("morphism map: unknown source label '" + k + "'");
    map[it->second] = resolve(tidx, v);
  }
  for (int v : map)
    if (v < 0) throw DomainError("morphism map: not total");
  Morphism f{src, tgt, std::move(map)};
  if (!is_valid_morphism(f)) throw DomainError("morphism does not preserve the structure");
  return f;
}

Json validation_to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid;
  Json v = Json::array();
  for (const auto& viol : r.violations) {
    Json e;
    e["axiom"] = viol.axiom;
    e["witness"] = viol.witness;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

Json zkernel_to_json(const ZKernelWitness& w) {
  Json j;
  j["direction"] = w.dual ? "op" : "primal";
  j["kernel"] = structure_to_json(*w.obj);
  j["arrow"] = morphism_to_json(w.arrow);
  Json sq;
  sq["through_zero"] = morphism_to_json(w.through);
  sq["zero_leg"] = morphism_to_json(w.zero_leg);
  sq["original"] = morphism_to_json(w.original);
  j["square"] = std::move(sq);
  return j;
}

Json zcokernel_to_json(const ZCokernelWitness& w) {
  Json j;
  j["direction"] = w.dual ? "op" : "primal";
  j["cokernel"] = structure_to_json(*w.obj);
  j["arrow"] = morphism_to_json(w.arrow);
  Json sq;
  sq["max_quotient"] = morphism_to_json(w.max_quot);
  sq["zero_leg"] = morphism_to_json(w.zero_leg);
  sq["original"] = morphism_to_json(w.original);
  j["square"] = std::move(sq);
  return j;
}

Json sequence_to_json(const ZExactSequence& s) {
  Json j;
  j["direction"] = s.dual ? "op" : "primal";
  j["object"] = s.object->name;
  j["torsion_part"] = structure_to_json(*s.torsion_part);
  j["torsion_free_part"] = structure_to_json(*s.torsion_free_part);
  j["counit"] = morphism_to_json(s.counit);
  j["unit"] = morphism_to_json(s.unit);
  j["zker_witness"] = zkernel_to_json(s.zker);
  j["zcoker_witness"] = zcokernel_to_json(s.zcoker);
  return j;
}

Json factorization_to_json(const FactorizationResult& r) {
  Json j;
  j["direction"] = r.dual ? "op" : "primal";
  j["middle"] = structure_to_json(*r.middle);
  j["e"] = morphism_to_json(r.e);
  j["m"] = morphism_to_json(r.m);
  j["e_in_E"] = r.e_in_class;
  j["m_in_M"] = r.m_in_class;
  return j;
}

Json condition_to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = r.condition;
  j["verdict"] = r.verdict;
  j["objects_scanned"] = r.objects_scanned;
  j["arrows_scanned"] = r.arrows_scanned;
  if (r.verdict) {
    j["counterexample"] = nullptr;
  } else {
    Json c;
    c["detail"] = r.detail;
    if (r.witness_object) c["object"] = r.witness_object->name;
    if (r.witness_arrow) c["arrow"] = morphism_to_json(*r.witness_arrow);
    j["counterexample"] = std::move(c);
  }
  return j;
}

Json extension_to_json(const ExtensionClass& e) {
  Json j;
  j["tag"] = extension_tag_name(e.tag);
  Json ev;
  ev["descent"] = e.descent;
  ev["trivial"] = e.trivial;
  ev["normal"] = e.normal;
  ev["central"] = e.central;
  ev["kernel"] = structure_to_json(*e.kernel);
  ev["note"] = e.evidence;
  j["evidence"] = std::move(ev);
  return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tordec
