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

// Builds annotated reuse corpora: pairs each source document with its most
// similar document, replaces a severity-dependent share of the latter's
// paragraphs with paraphrases of aligned source paragraphs, and writes the
// result as train / validation / test splits.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "plagkit/hashing.hpp"
#include "plagkit/pan_format.hpp"
#include "plagkit/paraphrase.hpp"
#include "plagkit/span.hpp"
#include "plagkit/vector_detector.hpp"

namespace plagkit {

// Unit-normalized signed feature hashing of the non-function-word tokens.
std::vector<double> hashed_vector(std::string_view text, std::size_t dim = 256);

struct SectionTitle {
  std::string title;
  std::size_t first_paragraph = 0;  // inclusive
  std::size_t last_paragraph = 0;   // inclusive
};

struct PoolDocument {
  std::string id;
  std::string category;
  std::string text;
  std::u32string chars;
  std::vector<Span> paragraphs;
  std::vector<std::string> paragraph_titles;  // "" where no section covers it
  std::vector<double> vector;
  std::vector<std::vector<double>> paragraph_vectors;
  std::vector<std::vector<double>> title_vectors;

  std::string paragraph_text(std::size_t i) const;
};

inline constexpr std::size_t kMinPoolParagraphs = 3;

class SourcePool {
 public:
  // Adds a document. Paragraph vectors come from `store` (records keyed by
  // id and paragraph index) when given, else from hashed_vector; the document
  // vector is the normalized sum of its paragraph vectors. Returns false and
  // fills `reason` for documents with fewer than three paragraphs.
  bool add(std::string id, std::string text, std::string category = {},
           std::vector<SectionTitle> sections = {},
           const VectorStore* store = nullptr, std::string* reason = nullptr);

  // Every *.txt file of `dir`, in name order. The optional sidecar is JSON:
  //   {"doc.txt": {"category": "cs.CL",
  //                "sections": [{"title": "Intro", "first": 0, "last": 2}]}}
  // Rejected documents are reported through `warnings`.
  static SourcePool from_directory(const std::filesystem::path& dir,
                                   const std::optional<std::filesystem::path>& sidecar,
                                   const VectorStore* store,
                                   std::vector<std::string>* warnings);

  // Topic-clustered synthetic documents of 6 to 8 single-line paragraphs.
  static SourcePool synthetic(std::size_t count, std::uint64_t seed);

  std::size_t size() const { return docs_.size(); }
  const PoolDocument& operator[](std::size_t i) const { return docs_[i]; }
  const std::vector<PoolDocument>& documents() const { return docs_; }

 private:
  std::vector<PoolDocument> docs_;
};

// For each document S (by index) the most similar other document P; ties go
// to the lexicographically smaller id. Throws ConfigError below two documents.
std::vector<std::pair<std::size_t, std::size_t>> pair_documents(const SourcePool& pool);

enum class PairCategory { kOriginal, kAltered, kPlagiarized, kPlagiarizedPlusAltered };

std::string_view to_string(PairCategory c);
PairCategory parse_pair_category(std::string_view s);

inline constexpr PairCategory kAllCategories[] = {
    PairCategory::kOriginal, PairCategory::kAltered, PairCategory::kPlagiarized,
    PairCategory::kPlagiarizedPlusAltered};

struct CategoryDraw {
  PairCategory category = PairCategory::kOriginal;
  std::optional<Severity> severity;
  bool altered_addon = false;
};

// Original / altered / plagiarized with probabilities 0.05 / 0.20 / 0.75;
// plagiarized pairs get the altered add-on with probability 0.5 and a
// severity with probabilities 0.30 / 0.40 / 0.30.
CategoryDraw sample_category(Rng& rng);

PromptType sample_prompt(Rng& rng);  // 0.60 / 0.30 / 0.10

// 0.5 sem + 0.4 lex + 0.1 title, each clamped to [0, 1].
double alignment_score(double sem, double lex, double title);

// Replaced fraction bands: low [0.2, 0.4], medium [0.4, 0.6], high [0.7, 1].
std::pair<double, double> severity_band(Severity s);

// Integer range [ceil(lo n), floor(hi n)] of replaced paragraphs; nullopt
// when empty.
std::optional<std::pair<std::size_t, std::size_t>> severity_count_range(
    Severity s, std::size_t paragraphs);

struct Replacement {
  std::size_t target = 0;  // paragraph of P
  std::size_t source = 0;  // paragraph of S
  PromptType prompt = PromptType::kSimple;
  double score = 0.0;
  auto operator<=>(const Replacement&) const = default;
};

struct Alteration {
  std::size_t target = 0;
  PromptType prompt = PromptType::kSimple;
  auto operator<=>(const Alteration&) const = default;
};

struct PairPlan {
  std::size_t index = 0;
  std::size_t source = 0;  // pool index of S
  std::size_t base = 0;    // pool index of P
  PairCategory category = PairCategory::kOriginal;
  std::optional<Severity> severity;
  GeneratorModel model = GeneratorModel::kLlama;
  std::vector<Replacement> replacements;  // sorted by target
  std::vector<Alteration> altered;        // sorted by target

  // Throws ConfigError when the category and the lists disagree.
  void validate() const;
};

struct GeneratorConfig {
  std::string citation_marker = "[{id}]";  // {id} is the id of S
  double addon_fraction = 0.10;
  double altered_min_fraction = 0.10;
  double altered_max_fraction = 0.30;
};

struct PlanOutcome {
  std::optional<PairPlan> plan;
  std::string discard_reason;
};

// Paragraphs of P containing the citation marker of S.
std::vector<std::size_t> citing_paragraphs(const PoolDocument& p,
                                           const PoolDocument& s,
                                           const GeneratorConfig& config);

// Greedy one-to-one alignment of the selected targets to source paragraphs
// by descending alignment score (ties: lower target, then lower source).
std::vector<Replacement> align_paragraphs(const PoolDocument& p,
                                          const PoolDocument& s,
                                          const std::vector<std::size_t>& targets);

// Chooses how many and which paragraphs of P to replace (citing paragraphs
// first), aligns them and draws their prompt types. Fills replacements only.
PlanOutcome plan_replacements(const PoolDocument& s, const PoolDocument& p,
                              Severity severity, Rng& rng,
                              const GeneratorConfig& config = {});

// The complete plan for pair `index`, a pure function of its arguments.
PlanOutcome plan_pair(const SourcePool& pool, std::size_t s, std::size_t p,
                      std::uint64_t seed, std::size_t index,
                      const GeneratorConfig& config = {});

struct RealizedPair {
  std::string suspicious_text;
  AnnotationDocument truth;
};

// Rewrites P according to the plan. Complex prompts get the preceding
// paragraph of P as context (empty for the first paragraph).
RealizedPair realize_pair(const SourcePool& pool, const PairPlan& plan,
                          Paraphraser& paraphraser, const DocumentRef& suspicious,
                          const DocumentRef& source);

enum class Split { kTrain, kValidation, kTest };
std::string_view to_string(Split s);

// Stratified by (category, model): within each stratum, in a seeded order,
// round(0.1 m) pairs go to validation, round(0.1 m) to test, the rest to
// train. Result is parallel to `plans`.
std::vector<Split> assign_splits(const std::vector<PairPlan>& plans,
                                 std::uint64_t seed);

std::string suspicious_name(std::size_t pair_index);
std::string source_name(std::size_t pool_index);

struct GenerateOptions {
  std::size_t pairs = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool blind = false;
  GeneratorConfig generator;
  nlohmann::json provider;  // recorded in the manifest
};

struct GenerationSummary {
  std::size_t requested = 0;
  std::size_t emitted = 0;
  std::vector<std::pair<std::size_t, std::string>> discarded;
  std::vector<std::pair<std::size_t, std::string>> failed;
  std::vector<PairPlan> plans;  // emitted pairs only
  std::vector<Split> splits;    // parallel to plans
};

// Plans, realizes and writes the corpus:
//   out/<split>/{pairs, susp/, src/, truth/}, out/manifest.json,
//   out/generation.log
// With blind set, test/truth is not written.
GenerationSummary generate_corpus(const SourcePool& pool, Paraphraser& paraphraser,
                                  const GenerateOptions& options,
                                  const std::filesystem::path& out);

}  // namespace plagkit
