#include "lfr/json_io.hpp"

#include "lfr/errors.hpp"

namespace lfr {

using nlohmann::json;

json config_to_json(const SystemConfig& config) {
    return json{{"users", config.users},
                {"symbols", config.symbols},
                {"demand_rows", config.demand_rows},
                {"field", config.field_order},
                {"cache_size", config.cache_size}};
}

SystemConfig config_from_json(const json& j) {
    return SystemConfig(j.at("users").get<int>(), j.at("symbols").get<std::int64_t>(),
                        j.at("demand_rows").get<std::int64_t>(),
                        j.at("field").get<Elem>(), j.at("cache_size").get<std::int64_t>());
}

json matrix_to_json(const FieldMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

FieldMatrix matrix_from_json(const json& j, const PrimeField& field) {
    auto rows = j.at("rows").get<std::size_t>();
    auto cols = j.at("cols").get<std::size_t>();
    const json& data = j.at("data");
    if (data.size() != rows) throw shape_error("matrix json has wrong row count");
    FieldMatrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = data.at(r);
        if (row.size() != cols) throw shape_error("matrix json has wrong column count");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, row.at(c).get<Elem>());
    }
    return m;
}

json demands_to_json(const DemandSet& demands) {
    json arr = json::array();
    for (const FieldMatrix& d : demands.matrices) arr.push_back(matrix_to_json(d));
    return arr;
}

DemandSet demands_from_json(const json& j, const PrimeField& field) {
    DemandSet demands;
    demands.matrices.reserve(j.size());
    for (const json& d : j) demands.matrices.push_back(matrix_from_json(d, field));
    return demands;
}

json transcript_to_json(const Transcript& transcript) {
    json segments = json::array();
    for (const Segment& s : transcript.segments)
        segments.push_back(json{{"label", s.label}, {"start", s.start}, {"length", s.length}});
    return json{{"coeff", matrix_to_json(transcript.coeff)},
                {"values", matrix_to_json(transcript.values)},
                {"segments", std::move(segments)}};
}

Transcript transcript_from_json(const json& j, const PrimeField& field) {
    Transcript t{matrix_from_json(j.at("coeff"), field),
                 matrix_from_json(j.at("values"), field),
                 {}};
    for (const json& s : j.at("segments"))
        t.segments.push_back({s.at("label").get<std::string>(),
                              s.at("start").get<std::int64_t>(),
                              s.at("length").get<std::int64_t>()});
    return t;
}

json dump_to_json(const InstanceDump& dump) {
    return json{{"config", config_to_json(dump.config)},
                {"seed", dump.seed},
                {"variant", std::string(variant_name(dump.variant))},
                {"library", matrix_to_json(dump.library.w)},
                {"demands", demands_to_json(dump.demands)},
                {"transcript", transcript_to_json(dump.transcript)}};
}

InstanceDump dump_from_json(const json& j) {
    SystemConfig config = config_from_json(j.at("config"));
    PrimeField field = config.field();
    auto variant = parse_variant(j.at("variant").get<std::string>());
    if (!variant) throw domain_error("unknown variant in dump");
    return InstanceDump{config,
                        j.at("seed").get<std::uint64_t>(),
                        *variant,
                        Library{matrix_from_json(j.at("library"), field)},
                        demands_from_json(j.at("demands"), field),
                        transcript_from_json(j.at("transcript"), field)};
}

}  // namespace lfr
