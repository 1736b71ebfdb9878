// Copyright 2025 The Plagkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The batch commands behind the plagkit executable. Each reads its inputs,
// writes its outputs into `out` and records run.json there.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plagkit/evaluator.hpp"
#include "plagkit/lexical_detector.hpp"
#include "plagkit/paraphrase.hpp"
#include "plagkit/vector_detector.hpp"

namespace plagkit::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadInput = 2;

// 2 for configuration, parse and missing-file errors; 1 otherwise.
int exit_code_for(const std::exception& e);

struct GenerateCommand {
  fs::path out;
  std::size_t pairs = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool blind = false;
  std::optional<fs::path> pool;          // directory of .txt; synthetic if unset
  std::optional<fs::path> pool_sidecar;  // JSON metadata for the pool
  std::optional<fs::path> pool_vectors;  // JSONL paragraph vectors
  std::size_t pool_size = 0;             // synthetic pool size; 0 = pairs
  std::string provider = "offline";      // offline | verbatim
  std::optional<fs::path> provider_config;  // JSON, overrides `provider`
};

enum class DetectorKind { kLexical, kVector };

struct DetectCommand {
  fs::path corpus;
  fs::path out;
  DetectorKind detector = DetectorKind::kVector;
  LexicalParams lexical;
  VectorDetectorConfig vector;
  std::optional<fs::path> calibrate_on;  // train corpus; overrides threshold
  std::string vectors = "tfidf";         // "tfidf" or a JSONL file
  unsigned jobs = 1;
};

struct CalibrateCommand {
  fs::path corpus;
  fs::path out;  // receives params.json
  VectorDetectorConfig vector;
  std::string vectors = "tfidf";
  unsigned jobs = 1;
};

struct EvaluateCommand {
  fs::path corpus;
  fs::path detections;
  std::optional<fs::path> truth;  // default <corpus>/truth
  fs::path out;
  std::string name = "plagkit";   // first column of the table row
};

struct ReportCommand {
  fs::path corpus;
  fs::path detections;
  std::optional<fs::path> truth;
  fs::path out;
};

// Applies a params.json written by calibrate (or by hand) to a detector
// configuration. Unknown keys throw ConfigError.
void apply_params(const nlohmann::json& params, DetectorKind& detector,
                  LexicalParams& lexical, VectorDetectorConfig& vector);
nlohmann::json params_to_json(DetectorKind detector, const LexicalParams& lexical,
                              const VectorDetectorConfig& vector);
DetectorKind parse_detector(std::string_view s);
std::string_view to_string(DetectorKind d);

int cmd_generate(const GenerateCommand& c);
int cmd_detect(const DetectCommand& c);
int cmd_calibrate(const CalibrateCommand& c);
int cmd_evaluate(const EvaluateCommand& c);
int cmd_report(const ReportCommand& c);

// Detections for every pair of the corpus, in pair order.
std::vector<ReuseCase> run_detector(const Corpus& corpus, DetectorKind detector,
                                    const LexicalParams& lexical,
                                    const VectorDetectorConfig& vector,
                                    const VectorStore* store, unsigned jobs);

nlohmann::json report_to_json(const MetricReport& report);
// Header plus one row in the layout of the published results table.
std::string render_table(const std::string& name, const MetricReport& report);

}  // namespace plagkit::cli
