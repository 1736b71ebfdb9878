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

// Similarity-based detector: chunk both documents, vectorize the chunks,
// align every suspicious chunk with its most similar source chunk, keep the
// alignments above a threshold, then filter and merge.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plagkit/pan_format.hpp"
#include "plagkit/span.hpp"

namespace plagkit {

enum class ChunkMode { kParagraph, kSentence };

std::string_view to_string(ChunkMode m);
ChunkMode parse_chunk_mode(std::string_view s);  // throws ConfigError

struct Chunk {
  Span span;
  std::string text;
  std::vector<double> vector;  // empty until assigned
};

// Paragraphs are separated by one or more blank (whitespace-only) lines.
// Sentences end at . ! or ? (plus closing quotes/brackets) followed by
// whitespace and an uppercase letter or digit; paragraph breaks also end a
// sentence. Chunk spans are trimmed of surrounding whitespace. A chunk
// shorter than min_chunk_chars is folded into the chunk before it.
std::vector<Chunk> chunk_document(const Document& doc, ChunkMode mode,
                                  std::size_t min_chunk_chars = 1);
std::vector<Span> chunk_spans(std::u32string_view text, ChunkMode mode,
                              std::size_t min_chunk_chars = 1);

// L2 normalization in place; zero vectors are left unchanged.
void normalize(std::vector<double>& v);
double dot(std::span<const double> a, std::span<const double> b);
// Cosine of arbitrary vectors; 0 if either is zero.
double cosine(std::span<const double> a, std::span<const double> b);

// TF-IDF over the chunks of both documents: raw term counts, idf =
// ln((1 + N) / (1 + df)) + 1 with N the total chunk count, L2-normalized.
void tfidf_vectors(std::vector<Chunk>& source, std::vector<Chunk>& suspicious);

// Externally computed chunk vectors, one JSON record per line:
//
//   {"doc": "source-document00001.txt", "chunk": 0, "vector": [0.1, ...]}
//
// Records are keyed by (doc, chunk), where chunk is the index in the chunk
// list produced for that document. Vectors are L2-normalized on load.
// Bare NaN / Infinity tokens (as emitted by some JSON writers) are
// recognized and rejected like any other non-finite component.
class VectorStore {
 public:
  static VectorStore load(const std::filesystem::path& path);
  static VectorStore parse(std::string_view jsonl,
                           std::string_view origin = "<string>");

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(const std::string& doc,
                                  std::size_t chunk) const;

  // Assigns vectors to chunks of `doc`; throws ParseError naming the first
  // (doc, chunk) without a record.
  void assign(const std::string& doc, std::vector<Chunk>& chunks) const;

  void insert(std::string doc, std::size_t chunk, std::vector<double> v);

 private:
  std::size_t dimension_ = 0;
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> vectors_;
};

void load_external_vectors(const std::filesystem::path& path,
                           const std::string& doc, std::vector<Chunk>& chunks);

struct AlignmentCandidate {
  std::size_t suspicious_index;
  std::size_t source_index;
  double similarity;
};

// For every suspicious chunk, the most similar source chunk (lowest index on
// ties). Requires vectors on both sides.
std::vector<AlignmentCandidate> best_sources(const std::vector<Chunk>& source,
                                             const std::vector<Chunk>& suspicious);

// Similarities within this distance below a threshold still pass it, so a
// pair built to sit exactly on a grid value is not lost to rounding.
inline constexpr double kThresholdSlack = 1e-9;

// Detected cases for candidates with similarity >= threshold.
std::vector<ReuseCase> align(const std::vector<Chunk>& source,
                             const std::vector<Chunk>& suspicious,
                             const DocumentRef& source_ref,
                             const DocumentRef& suspicious_ref,
                             double threshold);

// Keeps cases whose word-set Jaccard similarity between the two span texts
// is >= min_jaccard.
std::vector<ReuseCase> jaccard_filter(const std::vector<ReuseCase>& cases,
                                      const Document& source,
                                      const Document& suspicious,
                                      double min_jaccard);

// Transitively merges cases of the same document pair whose suspicious spans
// AND source spans are each within char_gap characters, replacing them with
// the span hulls. Merged cases shorter than min_len_chars on the suspicious
// side are dropped.
std::vector<ReuseCase> merge_detections(const std::vector<ReuseCase>& cases,
                                        std::size_t char_gap,
                                        std::size_t min_len_chars);

struct VectorDetectorConfig {
  ChunkMode chunk_mode = ChunkMode::kParagraph;
  std::size_t min_chunk_chars = 1;
  double threshold = 0.5;
  std::optional<double> min_jaccard;
  bool merge = true;
  std::size_t merge_gap = 30;
  std::size_t min_len_chars = 100;
};

// Threshold-independent part of the pipeline for one document pair.
struct PairAlignment {
  DocumentPair pair;
  std::vector<Chunk> source;
  std::vector<Chunk> suspicious;
  std::vector<AlignmentCandidate> candidates;
};

// Chunks and vectorizes both documents (TF-IDF when store is null) and
// computes the best source per suspicious chunk.
PairAlignment prepare_pair(const Document& source, const Document& suspicious,
                           const VectorDetectorConfig& config,
                           const VectorStore* store = nullptr);

// Thresholding, optional Jaccard filter and merging.
std::vector<ReuseCase> finish_pair(const PairAlignment& prepared,
                                   const Document& source,
                                   const Document& suspicious,
                                   const VectorDetectorConfig& config,
                                   double threshold);

std::vector<ReuseCase> detect_vector(const Document& source,
                                     const Document& suspicious,
                                     const VectorDetectorConfig& config,
                                     const VectorStore* store = nullptr);

// 0.50, 0.51, ..., 0.99.
std::vector<double> default_threshold_grid();

struct CalibrationResult {
  double threshold = 0.0;
  double objective = 0.0;  // macro plagdet at the chosen threshold
  std::vector<std::pair<double, double>> curve;  // (threshold, macro plagdet)
};

// Runs the pipeline for every grid value on a corpus with truth and returns
// the macro-plagdet maximizer, ties broken toward the higher threshold.
// Throws ConfigError on an empty corpus or grid.
CalibrationResult calibrate_threshold(const Corpus& train,
                                      const VectorDetectorConfig& config,
                                      const std::vector<double>& grid,
                                      const VectorStore* store = nullptr,
                                      unsigned jobs = 1);

}  // namespace plagkit
