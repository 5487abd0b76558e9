#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "lfr/model.hpp"
#include "lfr/variant.hpp"

namespace lfr {

nlohmann::json config_to_json(const SystemConfig& config);
SystemConfig config_from_json(const nlohmann::json& j);

/// Matrices serialize as nested row arrays of plain integers; the field is
/// carried by the enclosing object, not per matrix.
nlohmann::json matrix_to_json(const FieldMatrix& m);
FieldMatrix matrix_from_json(const nlohmann::json& j, const PrimeField& field);

nlohmann::json demands_to_json(const DemandSet& demands);
DemandSet demands_from_json(const nlohmann::json& j, const PrimeField& field);

nlohmann::json transcript_to_json(const Transcript& transcript);
Transcript transcript_from_json(const nlohmann::json& j, const PrimeField& field);

/// Everything needed to replay one delivery bit-exactly.
struct InstanceDump {
    SystemConfig config;
    std::uint64_t seed;
    SchemeVariant variant;
    Library library;
    DemandSet demands;
    Transcript transcript;
};

nlohmann::json dump_to_json(const InstanceDump& dump);
InstanceDump dump_from_json(const nlohmann::json& j);

}  // namespace lfr
