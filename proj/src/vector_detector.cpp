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

#include "plagkit/vector_detector.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <unordered_map>

#include "plagkit/error.hpp"
#include "plagkit/evaluator.hpp"
#include "plagkit/parallel.hpp"
#include "plagkit/tokenize.hpp"
#include "plagkit/utf8.hpp"

namespace plagkit {

std::string_view to_string(ChunkMode m) {
  return m == ChunkMode::kParagraph ? "paragraph" : "sentence";
}

ChunkMode parse_chunk_mode(std::string_view s) {
  if (s == "paragraph") return ChunkMode::kParagraph;
  if (s == "sentence") return ChunkMode::kSentence;
  throw ConfigError("unknown chunk mode '" + std::string(s) +
                    "' (expected paragraph or sentence)");
}

namespace {

// Non-whitespace extents of the paragraphs in text.
std::vector<Span> paragraph_spans(std::u32string_view text) {
  std::vector<Span> out;
  std::optional<std::size_t> begin;
  std::size_t end = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find(U'\n', pos);
    if (eol == std::u32string_view::npos) eol = text.size();
    std::size_t first = pos;
    while (first < eol && utf8::is_space(text[first])) ++first;
    if (first == eol) {
      if (begin) out.push_back(Span::from_bounds(*begin, end));
      begin.reset();
    } else {
      std::size_t last = eol;
      while (last > first && utf8::is_space(text[last - 1])) --last;
      if (!begin) begin = first;
      end = last;
    }
    pos = eol + 1;
  }
  if (begin) out.push_back(Span::from_bounds(*begin, end));
  return out;
}

bool is_sentence_end(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool is_closer(char32_t c) {
  return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == 0x2019 ||
         c == 0x201D || c == 0xBB;
}

void split_sentences(std::u32string_view text, const Span& para,
                     std::vector<Span>& out) {
  std::size_t start = para.start();
  std::size_t i = para.start();
  const std::size_t end = para.end();
  while (i < end) {
    if (!is_sentence_end(text[i])) {
      ++i;
      continue;
    }
    std::size_t stop = i + 1;
    while (stop < end && (is_sentence_end(text[stop]) || is_closer(text[stop]))) {
      ++stop;
    }
    std::size_t next = stop;
    while (next < end && utf8::is_space(text[next])) ++next;
    if (next > stop && next < end &&
        (utf8::is_upper(text[next]) || utf8::is_digit(text[next]))) {
      out.push_back(Span::from_bounds(start, stop));
      start = next;
    }
    i = next > stop ? next : stop;
  }
  if (start < end) out.push_back(Span::from_bounds(start, end));
}

}  // namespace

std::vector<Span> chunk_spans(std::u32string_view text, ChunkMode mode,
                              std::size_t min_chunk_chars) {
  std::vector<Span> raw = paragraph_spans(text);
  if (mode == ChunkMode::kSentence) {
    std::vector<Span> sentences;
    for (const Span& p : raw) split_sentences(text, p, sentences);
    raw = std::move(sentences);
  }
  std::vector<Span> out;
  for (const Span& s : raw) {
    if (s.length() < min_chunk_chars && !out.empty()) {
      out.back() = Span::from_bounds(out.back().start(), s.end());
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<Chunk> chunk_document(const Document& doc, ChunkMode mode,
                                  std::size_t min_chunk_chars) {
  std::vector<Chunk> out;
  for (const Span& s : chunk_spans(doc.chars(), mode, min_chunk_chars)) {
    out.push_back(Chunk{s, doc.slice(s), {}});
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vector dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm == 0.0) return;
  for (double& x : v) x /= norm;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

void tfidf_vectors(std::vector<Chunk>& source, std::vector<Chunk>& suspicious) {
  std::unordered_map<std::string, std::size_t> vocab;
  std::vector<std::vector<std::size_t>> terms;
  auto collect = [&](const std::vector<Chunk>& chunks) {
    for (const auto& c : chunks) {
      std::vector<std::size_t> ids;
      for (const auto& t : tokenize_normalize(c.text)) {
        auto [it, _] = vocab.emplace(t.text, vocab.size());
        ids.push_back(it->second);
      }
      terms.push_back(std::move(ids));
    }
  };
  collect(source);
  collect(suspicious);

  const std::size_t n_chunks = terms.size();
  std::vector<std::size_t> df(vocab.size(), 0);
  for (const auto& ids : terms) {
    std::vector<std::size_t> uniq = ids;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t id : uniq) ++df[id];
  }
  std::vector<double> idf(vocab.size());
  for (std::size_t k = 0; k < idf.size(); ++k) {
    idf[k] = std::log((1.0 + static_cast<double>(n_chunks)) /
                      (1.0 + static_cast<double>(df[k]))) +
             1.0;
  }
  std::size_t row = 0;
  auto assign = [&](std::vector<Chunk>& chunks) {
    for (auto& c : chunks) {
      std::vector<double> v(vocab.size(), 0.0);
      for (std::size_t id : terms[row]) v[id] += 1.0;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] *= idf[k];
      normalize(v);
      c.vector = std::move(v);
      ++row;
    }
  };
  assign(source);
  assign(suspicious);
}

namespace {

// Quotes bare NaN/Infinity tokens outside strings so the record parses and
// the value can be reported as non-finite.
std::string quote_non_finite(std::string_view line) {
  std::string out;
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < line.size()) {
        out += line[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
      continue;
    }
    bool replaced = false;
    for (std::string_view tok : {"-Infinity", "Infinity", "NaN"}) {
      if (line.substr(i, tok.size()) == tok) {
        out += '"';
        out += tok;
        out += '"';
        i += tok.size() - 1;
        replaced = true;
        break;
      }
    }
    if (!replaced) out += c;
  }
  return out;
}

}  // namespace

VectorStore VectorStore::parse(std::string_view jsonl, std::string_view origin) {
  VectorStore store;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    std::string_view line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where =
        std::string(origin) + ":" + std::to_string(line_no);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(quote_non_finite(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": malformed record: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("doc") || !rec["doc"].is_string() ||
        !rec.contains("chunk") || !rec["chunk"].is_number_unsigned() ||
        !rec.contains("vector") || !rec["vector"].is_array()) {
      throw ParseError(where +
                       ": record needs string \"doc\", non-negative integer "
                       "\"chunk\" and array \"vector\"");
    }
    const std::string doc = rec["doc"].get<std::string>();
    const auto chunk = rec["chunk"].get<std::size_t>();
    std::vector<double> v;
    for (std::size_t k = 0; k < rec["vector"].size(); ++k) {
      const auto& x = rec["vector"][k];
      const bool finite = x.is_number() && std::isfinite(x.get<double>());
      if (!finite) {
        throw ParseError(where + ": (" + doc + ", " + std::to_string(chunk) +
                         ") component " + std::to_string(k) +
                         " is not a finite number");
      }
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw ParseError(where + ": empty vector");
    if (store.dimension_ != 0 && v.size() != store.dimension_) {
      throw ParseError(where + ": dimension " + std::to_string(v.size()) +
                       " differs from " + std::to_string(store.dimension_));
    }
    store.insert(doc, chunk, std::move(v));
  }
  return store;
}

VectorStore VectorStore::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

void VectorStore::insert(std::string doc, std::size_t chunk,
                         std::vector<double> v) {
  if (dimension_ == 0) dimension_ = v.size();
  if (v.size() != dimension_) {
    throw ParseError("(" + doc + ", " + std::to_string(chunk) +
                     "): dimension mismatch");
  }
  normalize(v);
  vectors_[{std::move(doc), chunk}] = std::move(v);
}

const std::vector<double>* VectorStore::find(const std::string& doc,
                                             std::size_t chunk) const {
  auto it = vectors_.find({doc, chunk});
  return it == vectors_.end() ? nullptr : &it->second;
}

void VectorStore::assign(const std::string& doc,
                         std::vector<Chunk>& chunks) const {
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const auto* v = find(doc, i);
    if (v == nullptr) {
      throw ParseError("missing vector record for (" + doc + ", " +
                       std::to_string(i) + ")");
    }
    chunks[i].vector = *v;
  }
}

void load_external_vectors(const std::filesystem::path& path,
                           const std::string& doc, std::vector<Chunk>& chunks) {
  VectorStore::load(path).assign(doc, chunks);
}

std::vector<AlignmentCandidate> best_sources(
    const std::vector<Chunk>& source, const std::vector<Chunk>& suspicious) {
  std::vector<AlignmentCandidate> out;
  if (source.empty()) return out;
  for (std::size_t i = 0; i < suspicious.size(); ++i) {
    AlignmentCandidate best{i, 0, dot(suspicious[i].vector, source[0].vector)};
    for (std::size_t j = 1; j < source.size(); ++j) {
      const double sim = dot(suspicious[i].vector, source[j].vector);
      if (sim > best.similarity) best = {i, j, sim};
    }
    out.push_back(best);
  }
  return out;
}

namespace {

std::vector<ReuseCase> threshold_candidates(
    const std::vector<AlignmentCandidate>& candidates,
    const std::vector<Chunk>& source, const std::vector<Chunk>& suspicious,
    const DocumentRef& source_ref, const DocumentRef& suspicious_ref,
    double threshold) {
  std::vector<ReuseCase> out;
  for (const auto& c : candidates) {
    if (c.similarity + kThresholdSlack < threshold) continue;
    out.push_back(ReuseCase::detected(
        CaseEnd{suspicious_ref, suspicious[c.suspicious_index].span},
        CaseEnd{source_ref, source[c.source_index].span}));
  }
  return out;
}

}  // namespace

std::vector<ReuseCase> align(const std::vector<Chunk>& source,
                             const std::vector<Chunk>& suspicious,
                             const DocumentRef& source_ref,
                             const DocumentRef& suspicious_ref,
                             double threshold) {
  return threshold_candidates(best_sources(source, suspicious), source,
                              suspicious, source_ref, suspicious_ref,
                              threshold);
}

std::vector<ReuseCase> jaccard_filter(const std::vector<ReuseCase>& cases,
                                      const Document& source,
                                      const Document& suspicious,
                                      double min_jaccard) {
  std::vector<ReuseCase> out;
  for (const auto& c : cases) {
    const auto a = tokenize_normalize(suspicious.view(c.suspicious.span));
    const auto b = tokenize_normalize(source.view(c.source->span));
    if (jaccard(a, b) + kThresholdSlack >= min_jaccard) out.push_back(c);
  }
  return out;
}

std::vector<ReuseCase> merge_detections(const std::vector<ReuseCase>& cases,
                                        std::size_t char_gap,
                                        std::size_t min_len_chars) {
  std::map<std::pair<std::string, std::string>, std::vector<ReuseCase>> groups;
  for (const auto& c : cases) {
    if (!c.source) continue;
    groups[{c.suspicious.document.id(), c.source->document.id()}].push_back(c);
  }
  std::vector<ReuseCase> out;
  for (auto& [key, group] : groups) {
    // Hulls grow while merging, so repeat until nothing changes.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < group.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          auto& a = group[i];
          const auto& b = group[j];
          if (gap_between(a.suspicious.span, b.suspicious.span) > char_gap ||
              gap_between(a.source->span, b.source->span) > char_gap) {
            continue;
          }
          a.suspicious.span = Span::from_bounds(
              std::min(a.suspicious.span.start(), b.suspicious.span.start()),
              std::max(a.suspicious.span.end(), b.suspicious.span.end()));
          a.source->span = Span::from_bounds(
              std::min(a.source->span.start(), b.source->span.start()),
              std::max(a.source->span.end(), b.source->span.end()));
          group.erase(group.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
    for (auto& c : group) {
      if (c.suspicious.span.length() >= min_len_chars) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const ReuseCase& a, const ReuseCase& b) {
    return std::tie(a.suspicious.document, a.suspicious.span,
                    a.source->document, a.source->span) <
           std::tie(b.suspicious.document, b.suspicious.span,
                    b.source->document, b.source->span);
  });
  return out;
}

PairAlignment prepare_pair(const Document& source, const Document& suspicious,
                           const VectorDetectorConfig& config,
                           const VectorStore* store) {
  PairAlignment p{DocumentPair{suspicious.ref(), source.ref()},
                  chunk_document(source, config.chunk_mode,
                                 config.min_chunk_chars),
                  chunk_document(suspicious, config.chunk_mode,
                                 config.min_chunk_chars),
                  {}};
  if (store != nullptr) {
    store->assign(source.ref().id(), p.source);
    store->assign(suspicious.ref().id(), p.suspicious);
  } else {
    tfidf_vectors(p.source, p.suspicious);
  }
  p.candidates = best_sources(p.source, p.suspicious);
  return p;
}

std::vector<ReuseCase> finish_pair(const PairAlignment& prepared,
                                   const Document& source,
                                   const Document& suspicious,
                                   const VectorDetectorConfig& config,
                                   double threshold) {
  auto cases = threshold_candidates(prepared.candidates, prepared.source,
                                    prepared.suspicious, source.ref(),
                                    suspicious.ref(), threshold);
  if (config.min_jaccard) {
    cases = jaccard_filter(cases, source, suspicious, *config.min_jaccard);
  }
  if (config.merge) {
    cases = merge_detections(cases, config.merge_gap, config.min_len_chars);
  }
  return cases;
}

std::vector<ReuseCase> detect_vector(const Document& source,
                                     const Document& suspicious,
                                     const VectorDetectorConfig& config,
                                     const VectorStore* store) {
  return finish_pair(prepare_pair(source, suspicious, config, store), source,
                     suspicious, config, config.threshold);
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  for (int k = 50; k <= 99; ++k) grid.push_back(k / 100.0);
  return grid;
}

CalibrationResult calibrate_threshold(const Corpus& train,
                                      const VectorDetectorConfig& config,
                                      const std::vector<double>& grid,
                                      const VectorStore* store, unsigned jobs) {
  if (train.pairs().empty()) throw ConfigError("empty training corpus");
  if (grid.empty()) throw ConfigError("empty threshold grid");

  std::vector<PairAlignment> prepared(train.pairs().size());
  parallel_for(prepared.size(), jobs, [&](std::size_t i) {
    const auto& pair = train.pairs()[i];
    prepared[i] = prepare_pair(train.document(pair.source),
                               train.document(pair.suspicious), config, store);
  });

  std::vector<double> objective(grid.size(), 0.0);
  parallel_for(grid.size(), jobs, [&](std::size_t g) {
    std::vector<ReuseCase> dets;
    for (const auto& p : prepared) {
      auto cases = finish_pair(p, train.document(p.pair.source),
                               train.document(p.pair.suspicious), config,
                               grid[g]);
      dets.insert(dets.end(), cases.begin(), cases.end());
    }
    objective[g] = evaluate(train.truth(), dets).macro_plagdet;
  });

  CalibrationResult result;
  result.threshold = grid[0];
  result.objective = objective[0];
  for (std::size_t g = 0; g < grid.size(); ++g) {
    result.curve.emplace_back(grid[g], objective[g]);
    const bool better = objective[g] > result.objective ||
                        (objective[g] == result.objective &&
                         grid[g] > result.threshold);
    if (better) {
      result.threshold = grid[g];
      result.objective = objective[g];
    }
  }
  return result;
}

}  // namespace plagkit
