#pragma once

#include <json.hpp>

#include "tordec/factorization.hpp"
#include "tordec/galois.hpp"

namespace tordec {

using Json = nlohmann::ordered_json;

// Structure files serialize with label-valued tables; indices stay internal.
Json structure_to_json(const FiniteStructure& s);
StructPtr structure_from_json(const Json& j);

Json morphism_to_json(const Morphism& f);
// Resolves source/target by name against the registry.
Morphism morphism_from_json(const Json& j, const std::vector<StructPtr>& registry);

Json validation_to_json(const ValidationReport& r);
Json sequence_to_json(const ZExactSequence& s);
Json zkernel_to_json(const ZKernelWitness& w);
Json zcokernel_to_json(const ZCokernelWitness& w);
Json factorization_to_json(const FactorizationResult& r);
Json condition_to_json(const ConditionReport& r);
Json extension_to_json(const ExtensionClass& e);

std::string dump_canonical(const Json& j);

}  // namespace tordec
