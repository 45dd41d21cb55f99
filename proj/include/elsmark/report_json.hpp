#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "elsmark/attacks.hpp"
#include "elsmark/detector.hpp"
#include "elsmark/hashbit.hpp"
#include "elsmark/markov.hpp"
#include "elsmark/rewrite.hpp"

namespace elsmark {

// Every report embeds its manifest: the command, the fully resolved
// configuration, the master seed, the tool version, and digests of every
// input file. Two runs with equal manifests produce byte-identical reports.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string version;
  std::map<std::string, std::string> input_digests;

  nlohmann::json to_json() const;
};

RunManifest make_manifest(std::string command, std::uint64_t seed);

nlohmann::json finding_to_json(const Finding& f);
nlohmann::json report_to_json(const DetectionReport& report,
                              const RunManifest& manifest);

nlohmann::json model_to_json(const MarkovModel& model);
MarkovModel model_from_json(const nlohmann::json& j);

RewriteLexicon lexicon_from_json(const nlohmann::json& j);

nlohmann::json bit_report_to_json(const BitDetectReport& report,
                                  const RunManifest& manifest);

nlohmann::json robustness_rows_to_json(const std::vector<RobustnessRow>& rows,
                                       const RunManifest& manifest);
std::string robustness_rows_to_csv(const std::vector<RobustnessRow>& rows);

// dump(2) plus trailing newline; the one serialization used for all files so
// byte-identity claims are simple.
std::string to_report_bytes(const nlohmann::json& j);

// Shortest round-trip decimal form of a double (deterministic).
std::string format_double(double v);

}  // namespace elsmark
