#pragma once

#include <filesystem>
#include <string>

#include "tmoga/benchgen.hpp"
#include "tmoga/pipeline.hpp"

namespace tmoga {

/// Report JSON (schema_version 1) as a string.
std::string run_report_to_json(const RunReport& report);

/// Writes report.json, one "tNN.labels" partition file per snapshot, one
/// "pareto_tNN.csv" per snapshot (objective columns plus partition file
/// references) and the front partitions under "front_tNN/".
void write_run_report(const RunReport& report, const NodeRegistry& registry,
                      const std::filesystem::path& directory);

/// Writes "tNN.edges", "tNN.truth", "event_log.json" and "manifest.json"
/// for a generated sequence.
void write_ground_truth_sequence(const GroundTruthSequence& sequence, const std::string& model_name,
                                 const std::string& params_json, std::uint64_t seed,
                                 const std::filesystem::path& directory);

/// Zero-padded snapshot file stem, e.g. time 3 -> "t03".
std::string snapshot_stem(int time);

}  // namespace tmoga
