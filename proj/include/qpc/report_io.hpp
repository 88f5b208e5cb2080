#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qpc/session.hpp"

namespace qpc {

inline constexpr int kSchemaVersion = 1;

nlohmann::json config_to_json(const SessionConfig& config);

// Inverse of config_to_json; round-trips every field exactly.
SessionConfig config_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComparisonMatrix& matrix);
nlohmann::json mode_to_json(const ModeDescriptor& mode);
nlohmann::json transcript_to_json(const Transcript& transcript);

// Top-level run document: {schema_version, config, mode, matrix, metrics,
// transcript_digest}, plus the full transcript when asked for.
nlohmann::json run_to_json(const SessionConfig& config, const TrialsResult& result,
                           bool dump_transcript);

// Serialized with a stable 2-space indent; identical inputs give identical
// bytes.
std::string render_run_json(const SessionConfig& config, const TrialsResult& result,
                            bool dump_transcript);

void write_run_csv(std::ostream& out, const SessionConfig& config,
                   const TrialsResult& result);

void write_run_table(std::ostream& out, const SessionConfig& config,
                     const TrialsResult& result);

// "scattered preparation, one-way convergent" style display text.
std::string mode_display(const ModeDescriptor& mode);

}  // namespace qpc
