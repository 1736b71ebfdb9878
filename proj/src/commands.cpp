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

#include "plagkit/commands.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "plagkit/corpus_generator.hpp"
#include "plagkit/error.hpp"
#include "plagkit/log.hpp"
#include "plagkit/parallel.hpp"

namespace plagkit::cli {
namespace {

constexpr std::string_view kVersion = "0.1.0";

void write_run(const fs::path& out, std::string_view command,
               const nlohmann::json& inputs, const nlohmann::json& config,
               std::optional<std::uint64_t> seed, const nlohmann::json& result) {
  nlohmann::json run = {{"command", command},
                        {"version", kVersion},
                        {"inputs", inputs},
                        {"config", config},
                        {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
                        {"result", result}};
  write_file_atomic(out / "run.json", run.dump(2) + "\n");
}

std::optional<VectorStore> load_store(const std::string& vectors) {
  if (vectors == "tfidf") return std::nullopt;
  if (!fs::exists(vectors)) throw IoError("vector file not found: " + vectors);
  return VectorStore::load(vectors);
}

Corpus load_corpus(const fs::path& root, const std::optional<fs::path>& truth = {}) {
  if (!fs::is_directory(root)) throw IoError("corpus not found: " + root.string());
  if (truth && !fs::is_directory(*truth)) {
    throw IoError("truth directory not found: " + truth->string());
  }
  return Corpus::load(root, truth);
}

std::vector<ReuseCase> load_detections(const fs::path& dir, const Corpus& corpus) {
  if (!fs::is_directory(dir)) throw IoError("detections not found: " + dir.string());
  const LengthMap lengths = corpus.lengths();
  return load_cases_dir(dir, &lengths);
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round_for_display(v));
  return buf;
}

nlohmann::json slices_json(const std::vector<ReuseCase>& truth,
                           const std::vector<ReuseCase>& det) {
  nlohmann::json out = nlohmann::json::object();
  for (SliceKey key : {SliceKey::kModel, SliceKey::kPrompt, SliceKey::kSeverity,
                       SliceKey::kKind}) {
    out[std::string(to_string(key))] = slice_report(truth, det, key);
  }
  return out;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
      dynamic_cast<const IoError*>(&e) != nullptr ||
      dynamic_cast<const ParseError*>(&e) != nullptr) {
    return kExitBadInput;
  }
  return kExitFailure;
}

DetectorKind parse_detector(std::string_view s) {
  if (s == "lexical") return DetectorKind::kLexical;
  if (s == "vector") return DetectorKind::kVector;
  throw ConfigError("unknown detector '" + std::string(s) + "'");
}

std::string_view to_string(DetectorKind d) {
  return d == DetectorKind::kLexical ? "lexical" : "vector";
}

nlohmann::json params_to_json(DetectorKind detector, const LexicalParams& lexical,
                              const VectorDetectorConfig& vector) {
  if (detector == DetectorKind::kLexical) {
    return {{"detector", "lexical"},
            {"ngram", lexical.ngram},
            {"max_token_gap", lexical.max_token_gap},
            {"min_case_tokens", lexical.min_case_tokens}};
  }
  return {{"detector", "vector"},
          {"chunk_mode", to_string(vector.chunk_mode)},
          {"min_chunk_chars", vector.min_chunk_chars},
          {"threshold", vector.threshold},
          {"jaccard", vector.min_jaccard ? nlohmann::json(*vector.min_jaccard)
                                         : nlohmann::json(nullptr)},
          {"merge", vector.merge},
          {"merge_gap", vector.merge_gap},
          {"min_len", vector.min_len_chars}};
}

void apply_params(const nlohmann::json& params, DetectorKind& detector,
                  LexicalParams& lexical, VectorDetectorConfig& vector) {
  if (!params.is_object()) throw ConfigError("params must be a JSON object");
  try {
    for (auto it = params.begin(); it != params.end(); ++it) {
      const std::string& k = it.key();
      const auto& v = it.value();
      if (k == "detector") {
        detector = parse_detector(v.get<std::string>());
      } else if (k == "ngram") {
        lexical.ngram = v.get<std::size_t>();
      } else if (k == "max_token_gap") {
        lexical.max_token_gap = v.get<std::size_t>();
      } else if (k == "min_case_tokens") {
        lexical.min_case_tokens = v.get<std::size_t>();
      } else if (k == "chunk_mode") {
        vector.chunk_mode = parse_chunk_mode(v.get<std::string>());
      } else if (k == "min_chunk_chars") {
        vector.min_chunk_chars = v.get<std::size_t>();
      } else if (k == "threshold") {
        vector.threshold = v.get<double>();
      } else if (k == "jaccard") {
        vector.min_jaccard =
            v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      } else if (k == "merge") {
        vector.merge = v.get<bool>();
      } else if (k == "merge_gap") {
        vector.merge_gap = v.get<std::size_t>();
      } else if (k == "min_len") {
        vector.min_len_chars = v.get<std::size_t>();
      } else if (k == "objective" || k == "curve") {
        // written by calibrate for the record
      } else {
        throw ConfigError("unknown parameter '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
}

std::vector<ReuseCase> run_detector(const Corpus& corpus, DetectorKind detector,
                                    const LexicalParams& lexical,
                                    const VectorDetectorConfig& vector,
                                    const VectorStore* store, unsigned jobs) {
  const auto& pairs = corpus.pairs();
  std::vector<std::vector<ReuseCase>> per_pair(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const Document& src = corpus.document(pairs[i].source);
    const Document& susp = corpus.document(pairs[i].suspicious);
    per_pair[i] = detector == DetectorKind::kLexical
                      ? detect_lexical(src, susp, lexical)
                      : detect_vector(src, susp, vector, store);
  });
  std::vector<ReuseCase> out;
  for (auto& v : per_pair) {
    for (auto& c : v) out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json report_to_json(const MetricReport& r) {
  return {{"micro",
           {{"plagdet", r.micro_plagdet},
            {"recall", r.micro_recall},
            {"precision", r.micro_precision}}},
          {"macro",
           {{"plagdet", r.macro_plagdet},
            {"recall", r.macro_recall},
            {"precision", r.macro_precision}}},
          {"granularity", r.granularity},
          {"score", r.score},
          {"counts",
           {{"truth_cases", r.counts.truth_cases},
            {"detections", r.counts.detections},
            {"matched_cases", r.counts.matched_cases}}}};
}

std::string render_table(const std::string& name, const MetricReport& r) {
  std::size_t width = std::max<std::size_t>(name.size(), 10);
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::ostringstream out;
  out << pad("", width) << " | Micro                | Macro                |       |\n";
  out << pad("submission", width)
      << " | plagdet  r     p     | plagdet  r     p     | gran. | score\n";
  out << pad(name, width) << " | " << pad(fmt2(r.micro_plagdet), 8) << ' '
      << pad(fmt2(r.micro_recall), 5) << ' ' << pad(fmt2(r.micro_precision), 5)
      << " | " << pad(fmt2(r.macro_plagdet), 8) << ' ' << pad(fmt2(r.macro_recall), 5)
      << ' ' << pad(fmt2(r.macro_precision), 5) << " | " << pad(fmt2(r.granularity), 5)
      << " | " << fmt2(r.score) << "\n";
  return out.str();
}

int cmd_generate(const GenerateCommand& c) {
  ProviderConfig provider;
  if (c.provider_config) {
    if (!fs::exists(*c.provider_config)) {
      throw IoError("provider config not found: " + c.provider_config->string());
    }
    provider = load_provider_config(*c.provider_config);
  } else if (c.provider == "offline") {
    provider.kind = ProviderKind::kOffline;
  } else if (c.provider == "verbatim") {
    provider.kind = ProviderKind::kVerbatim;
  } else {
    throw ConfigError("--provider must be offline or verbatim; use --config for "
                      "http and replay providers");
  }
  if (provider.kind == ProviderKind::kOffline && !c.provider_config) {
    provider.seed = c.seed;
  }
  auto paraphraser = make_paraphraser(provider);

  std::optional<VectorStore> store;
  if (c.pool_vectors) store = load_store(c.pool_vectors->string());
  SourcePool pool;
  if (c.pool) {
    pool = SourcePool::from_directory(*c.pool, c.pool_sidecar,
                                      store ? &*store : nullptr, nullptr);
  } else {
    pool = SourcePool::synthetic(c.pool_size == 0 ? std::max<std::size_t>(c.pairs, 2)
                                                  : c.pool_size,
                                 c.seed);
  }

  GenerateOptions options;
  options.pairs = c.pairs;
  options.seed = c.seed;
  options.jobs = c.jobs;
  options.blind = c.blind;
  options.provider = {{"kind", to_string(provider.kind)}, {"model", provider.model}};
  const GenerationSummary summary = generate_corpus(pool, *paraphraser, options, c.out);

  const nlohmann::json inputs = {
      {"pool", c.pool ? c.pool->string() : "synthetic"},
      {"pool_sidecar", c.pool_sidecar ? nlohmann::json(c.pool_sidecar->string())
                                      : nlohmann::json(nullptr)},
      {"pool_vectors", c.pool_vectors ? nlohmann::json(c.pool_vectors->string())
                                      : nlohmann::json(nullptr)},
      {"provider_config", c.provider_config
                              ? nlohmann::json(c.provider_config->string())
                              : nlohmann::json(nullptr)}};
  const nlohmann::json config = {{"pairs", c.pairs},
                                 {"pool_size", pool.size()},
                                 {"blind", c.blind},
                                 {"provider", to_string(provider.kind)}};
  write_run(c.out, "generate", inputs, config, c.seed,
            {{"emitted", summary.emitted},
             {"discarded", summary.discarded.size()},
             {"failed", summary.failed.size()}});
  log::info("generated " + std::to_string(summary.emitted) + " pairs");
  if (!summary.failed.empty()) {
    log::warning(std::to_string(summary.failed.size()) +
                 " pairs failed; see generation.log");
  }
  return kExitOk;
}

int cmd_detect(const DetectCommand& c) {
  const Corpus corpus = load_corpus(c.corpus);
  const auto store = load_store(c.vectors);
  VectorDetectorConfig vector = c.vector;
  nlohmann::json calibration = nullptr;
  if (c.calibrate_on) {
    if (c.detector != DetectorKind::kVector) {
      throw ConfigError("--calibrate applies to the vector detector only");
    }
    const Corpus train = load_corpus(*c.calibrate_on);
    const auto result = calibrate_threshold(train, vector, default_threshold_grid(),
                                            store ? &*store : nullptr, c.jobs);
    vector.threshold = result.threshold;
    calibration = {{"corpus", c.calibrate_on->string()},
                   {"threshold", result.threshold},
                   {"objective", result.objective}};
  }
  const auto cases = run_detector(corpus, c.detector, c.lexical, vector,
                                  store ? &*store : nullptr, c.jobs);
  write_cases_dir(c.out, cases, corpus.suspicious_documents());
  write_run(c.out, "detect",
            {{"corpus", c.corpus.string()}, {"vectors", c.vectors}},
            params_to_json(c.detector, c.lexical, vector), std::nullopt,
            {{"detections", cases.size()}, {"calibration", calibration}});
  log::info("wrote " + std::to_string(cases.size()) + " detections");
  return kExitOk;
}

int cmd_calibrate(const CalibrateCommand& c) {
  const Corpus train = load_corpus(c.corpus);
  if (!train.has_truth()) {
    throw ConfigError("calibration corpus has no truth: " + c.corpus.string());
  }
  const auto store = load_store(c.vectors);
  const auto result = calibrate_threshold(train, c.vector, default_threshold_grid(),
                                          store ? &*store : nullptr, c.jobs);
  VectorDetectorConfig tuned = c.vector;
  tuned.threshold = result.threshold;
  nlohmann::json params = params_to_json(DetectorKind::kVector, {}, tuned);
  params["objective"] = result.objective;
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [t, v] : result.curve) curve.push_back({t, v});
  params["curve"] = std::move(curve);
  write_file_atomic(c.out / "params.json", params.dump(2) + "\n");
  write_run(c.out, "calibrate", {{"corpus", c.corpus.string()}, {"vectors", c.vectors}},
            params_to_json(DetectorKind::kVector, {}, c.vector), std::nullopt,
            {{"threshold", result.threshold}, {"objective", result.objective}});
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", result.threshold);
  std::cout << buf << "\n";
  return kExitOk;
}

int cmd_evaluate(const EvaluateCommand& c) {
  const Corpus corpus = load_corpus(c.corpus, c.truth);
  if (!corpus.has_truth()) throw IoError("no truth found for " + c.corpus.string());
  const auto det = load_detections(c.detections, corpus);
  const MetricReport report = evaluate(corpus.truth(), det);
  nlohmann::json j = report_to_json(report);
  j["slices"] = slices_json(corpus.truth(), det);
  const std::string table = render_table(c.name, report);
  write_file_atomic(c.out / "report.json", j.dump(2) + "\n");
  write_file_atomic(c.out / "table.txt", table);
  write_run(c.out, "evaluate",
            {{"corpus", c.corpus.string()},
             {"detections", c.detections.string()},
             {"truth", c.truth ? nlohmann::json(c.truth->string()) : nlohmann::json(nullptr)}},
            {{"name", c.name}}, std::nullopt, {{"score", report.score}});
  std::cout << table;
  return kExitOk;
}

int cmd_report(const ReportCommand& c) {
  const Corpus corpus = load_corpus(c.corpus, c.truth);
  if (!corpus.has_truth()) throw IoError("no truth found for " + c.corpus.string());
  const auto det = load_detections(c.detections, corpus);
  const nlohmann::json slices = slices_json(corpus.truth(), det);
  write_file_atomic(c.out / "slices.json", slices.dump(2) + "\n");
  write_run(c.out, "report",
            {{"corpus", c.corpus.string()},
             {"detections", c.detections.string()},
             {"truth", c.truth ? nlohmann::json(c.truth->string()) : nlohmann::json(nullptr)}},
            nlohmann::json::object(), std::nullopt, nlohmann::json::object());
  std::cout << slices.dump(2) << "\n";
  return kExitOk;
}

}  // namespace plagkit::cli
