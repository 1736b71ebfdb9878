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

// plagkit: generate, detect, calibrate, evaluate, report.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plagkit/commands.hpp"
#include "plagkit/error.hpp"
#include "plagkit/log.hpp"
#include "plagkit/pan_format.hpp"

namespace {

using namespace plagkit;
using namespace plagkit::cli;

struct VectorFlags {
  std::string chunk_mode;
  std::size_t min_chunk_chars = 1;
  double threshold = 0.5;
  double jaccard = 0.0;
  std::size_t merge_gap = 30;
  std::size_t min_len = 100;
  bool no_merge = false;
  std::string vectors = "tfidf";
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* jaccard_opt = nullptr;
  CLI::Option* chunk_opt = nullptr;
  CLI::Option* min_chunk_opt = nullptr;
  CLI::Option* gap_opt = nullptr;
  CLI::Option* min_len_opt = nullptr;
  CLI::Option* no_merge_opt = nullptr;

  void add(CLI::App* app, bool with_threshold) {
    chunk_opt = app->add_option("--chunk-mode", chunk_mode, "paragraph or sentence");
    min_chunk_opt =
        app->add_option("--min-chunk-chars", min_chunk_chars, "fold shorter chunks");
    if (with_threshold) {
      threshold_opt = app->add_option("--threshold", threshold, "cosine cut-off");
    }
    jaccard_opt = app->add_option("--jaccard", jaccard, "second-stage Jaccard filter");
    gap_opt = app->add_option("--merge-gap", merge_gap, "merge distance in characters");
    min_len_opt = app->add_option("--min-len", min_len, "drop merged cases shorter than this");
    no_merge_opt = app->add_flag("--no-merge", no_merge, "skip block merging");
    app->add_option("--vectors", vectors, "tfidf or a JSONL file of chunk vectors");
  }

  // Explicit flags override values from a params file.
  void apply(VectorDetectorConfig& c) const {
    if (*chunk_opt) c.chunk_mode = parse_chunk_mode(chunk_mode);
    if (*min_chunk_opt) c.min_chunk_chars = min_chunk_chars;
    if (threshold_opt != nullptr && *threshold_opt) c.threshold = threshold;
    if (*jaccard_opt) c.min_jaccard = jaccard;
    if (*gap_opt) c.merge_gap = merge_gap;
    if (*min_len_opt) c.min_len_chars = min_len;
    if (*no_merge_opt) c.merge = false;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text-reuse corpus generation, detection and evaluation"};
  app.require_subcommand(1);
  int verbosity = 0;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbosity, "more logging (repeatable)");
  app.add_flag("-q,--quiet", quiet, "errors only");

  // generate
  GenerateCommand gen;
  std::string pool;
  std::string sidecar;
  std::string pool_vectors;
  std::string provider_config;
  auto* g = app.add_subcommand("generate", "build an annotated corpus");
  g->add_option("--out", gen.out, "output directory")->required();
  g->add_option("--pairs", gen.pairs, "number of document pairs");
  g->add_option("--seed", gen.seed, "global seed");
  g->add_option("--jobs", gen.jobs, "worker threads");
  g->add_flag("--blind", gen.blind, "withhold test truth");
  auto* pool_opt = g->add_option("--pool", pool, "directory of plain-text documents");
  auto* sidecar_opt = g->add_option("--pool-meta", sidecar, "JSON sidecar for --pool");
  auto* pool_vec_opt =
      g->add_option("--pool-vectors", pool_vectors, "JSONL paragraph vectors for --pool");
  g->add_option("--pool-size", gen.pool_size, "synthetic pool size (default: pairs)");
  g->add_option("--provider", gen.provider, "offline or verbatim");
  auto* config_opt =
      g->add_option("--config", provider_config, "provider config JSON (http, replay)");
  sidecar_opt->needs(pool_opt);
  pool_vec_opt->needs(pool_opt);

  // detect
  DetectCommand det;
  std::string detector = "vector";
  std::string params_file;
  std::string calibrate_on;
  VectorFlags det_flags;
  auto* d = app.add_subcommand("detect", "write detections for every pair");
  d->add_option("--corpus", det.corpus, "corpus root")->required();
  d->add_option("--out", det.out, "detections directory")->required();
  d->add_option("--detector", detector, "lexical or vector");
  auto* params_opt = d->add_option("--params", params_file, "params.json from calibrate");
  auto* ngram_opt = d->add_option("--ngram", det.lexical.ngram, "lexical seed length");
  auto* gap_opt =
      d->add_option("--max-token-gap", det.lexical.max_token_gap, "lexical merge gap");
  auto* min_tok_opt =
      d->add_option("--min-case-tokens", det.lexical.min_case_tokens, "lexical minimum");
  det_flags.add(d, true);
  auto* cal_opt =
      d->add_option("--calibrate", calibrate_on, "train corpus to calibrate the threshold on");
  cal_opt->excludes(det_flags.threshold_opt);
  d->add_option("--jobs", det.jobs, "worker threads");

  // calibrate
  CalibrateCommand cal;
  VectorFlags cal_flags;
  auto* c = app.add_subcommand("calibrate", "choose the vector threshold on a train corpus");
  c->add_option("--corpus", cal.corpus, "train corpus root")->required();
  c->add_option("--out", cal.out, "directory for params.json")->required();
  cal_flags.add(c, false);
  c->add_option("--jobs", cal.jobs, "worker threads");

  // evaluate
  EvaluateCommand ev;
  std::string ev_truth;
  auto* e = app.add_subcommand("evaluate", "score detections against truth");
  e->add_option("--corpus", ev.corpus, "corpus root")->required();
  e->add_option("--detections", ev.detections, "detections directory")->required();
  auto* ev_truth_opt = e->add_option("--truth", ev_truth, "truth directory");
  e->add_option("--out", ev.out, "report directory")->required();
  e->add_option("--name", ev.name, "row label");

  // report
  ReportCommand rep;
  std::string rep_truth;
  auto* r = app.add_subcommand("report", "per-slice recall");
  r->add_option("--corpus", rep.corpus, "corpus root")->required();
  r->add_option("--detections", rep.detections, "detections directory")->required();
  auto* rep_truth_opt = r->add_option("--truth", rep_truth, "truth directory");
  r->add_option("--out", rep.out, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  log::set_level(quiet            ? log::Level::kQuiet
                 : verbosity >= 2 ? log::Level::kDebug
                 : verbosity == 1 ? log::Level::kInfo
                                  : log::Level::kWarning);
  try {
    if (*g) {
      if (*pool_opt) gen.pool = pool;
      if (*sidecar_opt) gen.pool_sidecar = sidecar;
      if (*pool_vec_opt) gen.pool_vectors = pool_vectors;
      if (*config_opt) gen.provider_config = provider_config;
      return cmd_generate(gen);
    }
    if (*d) {
      det.detector = parse_detector(detector);
      if (*params_opt) {
        if (!std::filesystem::exists(params_file)) {
          throw IoError("params file not found: " + params_file);
        }
        apply_params(nlohmann::json::parse(read_file(params_file)), det.detector,
                     det.lexical, det.vector);
        // An explicit --detector still wins.
        if (d->count("--detector") > 0) det.detector = parse_detector(detector);
      }
      // Re-apply explicit lexical flags over the params file.
      LexicalParams lex = det.lexical;
      if (*ngram_opt) lex.ngram = ngram_opt->as<std::size_t>();
      if (*gap_opt) lex.max_token_gap = gap_opt->as<std::size_t>();
      if (*min_tok_opt) lex.min_case_tokens = min_tok_opt->as<std::size_t>();
      det.lexical = lex;
      det_flags.apply(det.vector);
      det.vectors = det_flags.vectors;
      if (*cal_opt) det.calibrate_on = calibrate_on;
      return cmd_detect(det);
    }
    if (*c) {
      cal_flags.apply(cal.vector);
      cal.vectors = cal_flags.vectors;
      return cmd_calibrate(cal);
    }
    if (*e) {
      if (*ev_truth_opt) ev.truth = ev_truth;
      return cmd_evaluate(ev);
    }
    if (*r) {
      if (*rep_truth_opt) rep.truth = rep_truth;
      return cmd_report(rep);
    }
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << "plagkit: " << ex.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& ex) {
    std::cerr << "plagkit: " << ex.what() << "\n";
    return exit_code_for(ex);
  }
  return kExitFailure;
}
