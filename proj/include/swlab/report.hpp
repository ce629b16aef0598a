#pragma once

#include "swlab/closed_forms.hpp"
#include "swlab/diagnostics.hpp"
#include "swlab/extremal.hpp"
#include "swlab/montecarlo.hpp"
#include "swlab/sobolev.hpp"

#include <json.hpp>

#include <string>

namespace swlab {

inline constexpr int kReportSchemaVersion = 1;

/// All serializers emit a "schema_version" field and no timestamps, so a
/// report is byte-identical across runs with the same inputs (nlohmann keys
/// are sorted). Run metadata (wall-clock time etc.) goes into a separate
/// sidecar file, never into the report itself.
nlohmann::json to_json(const ExponentConfig& cfg);
nlohmann::json to_json(const AdmissibilityReport& rep);
nlohmann::json to_json(const HardyConstants& h);
nlohmann::json to_json(const BoundsReport& rep);
nlohmann::json to_json(const McResult& rep);
nlohmann::json to_json(const PowerIterationResult& rep);
nlohmann::json to_json(const ELPairResult& rep);
nlohmann::json to_json(const BubbleFit& rep);
nlohmann::json to_json(const KelvinReport& rep);
nlohmann::json to_json(const ScalingReport& rep);
nlohmann::json to_json(const HyperbolicReport& rep);
nlohmann::json to_json(const RepresentationReport& rep);
nlohmann::json to_json(const WsReport& rep);

/// Wrap a payload with {"schema_version": ..., "kind": ..., "payload": ...}.
nlohmann::json make_report(const std::string& kind, nlohmann::json payload);

/// Write a report (2-space indent, trailing newline). Throws on I/O failure.
void write_report(const nlohmann::json& report, const std::string& path);

/// Write the run-metadata sidecar (<path> + ".meta.json") with a timestamp.
void write_metadata_sidecar(const std::string& path);

}  // namespace swlab
