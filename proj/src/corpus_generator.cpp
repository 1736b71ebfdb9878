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

#include "plagkit/corpus_generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "plagkit/error.hpp"
#include "plagkit/lexicon.hpp"
#include "plagkit/log.hpp"
#include "plagkit/parallel.hpp"
#include "plagkit/tokenize.hpp"
#include "plagkit/utf8.hpp"

namespace plagkit {
namespace {

bool is_function_word(std::string_view w) {
  const auto fw = lexicon::function_words();
  return std::find(fw.begin(), fw.end(), w) != fw.end();
}

std::vector<double> normalized_sum(const std::vector<std::vector<double>>& vs,
                                   std::size_t dim) {
  std::vector<double> out(dim, 0.0);
  for (const auto& v : vs) {
    for (std::size_t k = 0; k < dim && k < v.size(); ++k) out[k] += v[k];
  }
  normalize(out);
  return out;
}

std::string format_index(std::string_view prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05zu", i);
  return std::string(prefix) + buf;
}

}  // namespace

std::vector<double> hashed_vector(std::string_view text, std::size_t dim) {
  std::vector<double> v(dim, 0.0);
  for (const auto& t : tokenize_normalize(text)) {
    if (is_function_word(t.text)) continue;
    const std::uint64_t h = fnv1a(t.text);
    v[h % dim] += (h >> 63) != 0 ? -1.0 : 1.0;
  }
  normalize(v);
  return v;
}

std::string PoolDocument::paragraph_text(std::size_t i) const {
  return utf8::encode(std::u32string_view(chars).substr(paragraphs.at(i).start(),
                                                        paragraphs[i].length()));
}

bool SourcePool::add(std::string id, std::string text, std::string category,
                     std::vector<SectionTitle> sections, const VectorStore* store,
                     std::string* reason) {
  PoolDocument d;
  d.id = std::move(id);
  d.category = std::move(category);
  d.chars = utf8::decode(text);
  d.text = std::move(text);
  d.paragraphs = chunk_spans(d.chars, ChunkMode::kParagraph);
  if (d.paragraphs.size() < kMinPoolParagraphs) {
    if (reason != nullptr) {
      *reason = d.id + ": " + std::to_string(d.paragraphs.size()) +
                " paragraphs, at least 3 required";
    }
    return false;
  }
  d.paragraph_titles.assign(d.paragraphs.size(), "");
  for (const auto& s : sections) {
    for (std::size_t i = s.first_paragraph;
         i <= s.last_paragraph && i < d.paragraphs.size(); ++i) {
      d.paragraph_titles[i] = s.title;
    }
  }
  std::size_t dim = 256;
  for (std::size_t i = 0; i < d.paragraphs.size(); ++i) {
    if (store != nullptr) {
      const auto* v = store->find(d.id, i);
      if (v == nullptr) {
        throw ParseError("no vector record for (" + d.id + ", " +
                         std::to_string(i) + ")");
      }
      d.paragraph_vectors.push_back(*v);
      dim = store->dimension();
    } else {
      d.paragraph_vectors.push_back(hashed_vector(d.paragraph_text(i)));
    }
    d.title_vectors.push_back(hashed_vector(d.paragraph_titles[i]));
  }
  d.vector = normalized_sum(d.paragraph_vectors, dim);
  docs_.push_back(std::move(d));
  return true;
}

SourcePool SourcePool::from_directory(const std::filesystem::path& dir,
                                      const std::optional<std::filesystem::path>& sidecar,
                                      const VectorStore* store,
                                      std::vector<std::string>* warnings) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("pool directory not found: " + dir.string());
  }
  nlohmann::json meta = nlohmann::json::object();
  if (sidecar) {
    try {
      meta = nlohmann::json::parse(read_file(*sidecar));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(sidecar->string() + ": " + e.what());
    }
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  SourcePool pool;
  for (const auto& f : files) {
    const std::string name = f.filename().string();
    std::string category;
    std::vector<SectionTitle> sections;
    if (meta.contains(name)) {
      try {
        const auto& m = meta[name];
        category = m.value("category", "");
        if (m.contains("sections")) {
          for (const auto& s : m["sections"]) {
            sections.push_back({s.at("title").get<std::string>(),
                                s.at("first").get<std::size_t>(),
                                s.at("last").get<std::size_t>()});
          }
        }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(sidecar->string() + ": entry " + name + ": " + e.what());
      }
    }
    std::string reason;
    if (!pool.add(name, read_file(f), category, std::move(sections), store, &reason)) {
      log::warning("pool: rejected " + reason);
      if (warnings != nullptr) warnings->push_back(reason);
    }
  }
  return pool;
}

namespace {

// Pronounceable nonce terms that give every topic its own vocabulary. They
// are not in the synonym table, so paraphrasing keeps them.
std::string nonce_term(Rng& rng) {
  static constexpr std::string_view kOnsets[] = {"b", "c", "d", "f", "g", "k",
                                                 "l", "m", "n", "p", "r", "s",
                                                 "t", "v", "z", "th", "tr", "pl"};
  static constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u", "ia", "eo"};
  static constexpr std::string_view kCodas[] = {"n", "r", "s", "x", "l", "m", "nd", "st"};
  std::string w;
  const auto syllables = rng.uniform_int(2, 3);
  for (std::uint64_t k = 0; k < syllables; ++k) {
    w += kOnsets[rng.uniform_int(0, std::size(kOnsets) - 1)];
    w += kVowels[rng.uniform_int(0, std::size(kVowels) - 1)];
  }
  w += kCodas[rng.uniform_int(0, std::size(kCodas) - 1)];
  return w;
}

struct Topic {
  std::string tag;
  std::vector<std::string> words;  // synonym-table headwords
  std::vector<std::string> terms;  // nonce terms
};

std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 32);
  return w;
}

std::string synth_sentence(Rng& rng, const Topic& topic,
                           const std::vector<std::string>& global,
                           const std::string& citation) {
  const auto fw = lexicon::function_words();
  const std::size_t len = static_cast<std::size_t>(rng.uniform_int(10, 18));
  const std::size_t comma_at =
      rng.bernoulli(0.5) ? static_cast<std::size_t>(rng.uniform_int(3, len - 5)) : len;
  std::vector<std::string> words;
  for (std::size_t i = 0; i < len; ++i) {
    std::string w;
    if (rng.bernoulli(0.62)) {
      const double u = rng.uniform();
      if (u < 0.6) {
        w = topic.words[rng.uniform_int(0, topic.words.size() - 1)];
      } else if (u < 0.85) {
        w = topic.terms[rng.uniform_int(0, topic.terms.size() - 1)];
      } else {
        w = global[rng.uniform_int(0, global.size() - 1)];
      }
    } else {
      w = std::string(fw[rng.uniform_int(0, fw.size() - 1)]);
    }
    if (i == comma_at) w += ",";
    words.push_back(std::move(w));
  }
  words.front() = capitalize(words.front());
  if (!citation.empty()) words.push_back(citation);
  words.back() += ".";
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

SourcePool SourcePool::synthetic(std::size_t count, std::uint64_t seed) {
  Rng rng(hash_combine(seed, 0x706f6f6cULL));
  std::vector<std::string> global;
  for (const auto& e : lexicon::synonym_table()) global.emplace_back(e.word);

  const std::size_t topic_count = std::max<std::size_t>(2, count / 10);
  std::vector<Topic> topics(topic_count);
  for (std::size_t t = 0; t < topic_count; ++t) {
    topics[t].tag = format_index("synth.t", t);
    std::vector<std::string> shuffled = global;
    rng.shuffle(shuffled);
    topics[t].words.assign(shuffled.begin(), shuffled.begin() + 40);
    for (int k = 0; k < 12; ++k) topics[t].terms.push_back(nonce_term(rng));
  }

  static constexpr std::string_view kSections[] = {"Introduction", "Method",
                                                   "Results", "Discussion"};
  SourcePool pool;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t t = static_cast<std::size_t>(rng.uniform_int(0, topic_count - 1));
    const Topic& topic = topics[t];
    const std::size_t paras = static_cast<std::size_t>(rng.uniform_int(6, 8));
    std::vector<SectionTitle> sections;
    const std::size_t per = (paras + 3) / 4;
    for (std::size_t s = 0; s * per < paras; ++s) {
      const std::string term = topic.terms[rng.uniform_int(0, topic.terms.size() - 1)];
      sections.push_back({std::string(kSections[s]) + " of " + term, s * per,
                          std::min(paras, (s + 1) * per) - 1});
    }
    std::string text;
    for (std::size_t p = 0; p < paras; ++p) {
      if (p > 0) text += "\n\n";
      const std::size_t sentences = static_cast<std::size_t>(rng.uniform_int(4, 6));
      for (std::size_t k = 0; k < sentences; ++k) {
        std::string citation;
        if (i > 0 && k + 1 == sentences && rng.bernoulli(0.08)) {
          citation = "[" + format_index("doc", rng.uniform_int(0, i - 1)) + "]";
        }
        if (k > 0) text += ' ';
        text += synth_sentence(rng, topic, global, citation);
      }
    }
    text += "\n";
    pool.add(format_index("doc", i), std::move(text), topic.tag, std::move(sections));
  }
  return pool;
}

std::vector<std::pair<std::size_t, std::size_t>> pair_documents(const SourcePool& pool) {
  if (pool.size() < 2) throw ConfigError("pairing needs at least two documents");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(pool.size());
  for (std::size_t s = 0; s < pool.size(); ++s) {
    std::optional<std::size_t> best;
    double best_sim = 0.0;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (p == s) continue;
      const double sim = dot(pool[s].vector, pool[p].vector);
      if (!best || sim > best_sim ||
          (sim == best_sim && pool[p].id < pool[*best].id)) {
        best = p;
        best_sim = sim;
      }
    }
    out.emplace_back(s, *best);
  }
  return out;
}

std::string_view to_string(PairCategory c) {
  switch (c) {
    case PairCategory::kOriginal:
      return "original";
    case PairCategory::kAltered:
      return "altered";
    case PairCategory::kPlagiarized:
      return "plagiarized";
    case PairCategory::kPlagiarizedPlusAltered:
      return "plagiarized_plus_altered";
  }
  return "";
}

PairCategory parse_pair_category(std::string_view s) {
  for (PairCategory c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  throw ParseError("unknown pair category '" + std::string(s) + "'");
}

CategoryDraw sample_category(Rng& rng) {
  static constexpr double kCategory[] = {0.05, 0.20, 0.75};
  static constexpr double kSeverity[] = {0.30, 0.40, 0.30};
  CategoryDraw d;
  switch (rng.choose(kCategory)) {
    case 0:
      d.category = PairCategory::kOriginal;
      return d;
    case 1:
      d.category = PairCategory::kAltered;
      return d;
    default:
      break;
  }
  d.altered_addon = rng.bernoulli(0.5);
  d.category = d.altered_addon ? PairCategory::kPlagiarizedPlusAltered
                               : PairCategory::kPlagiarized;
  d.severity = kAllSeverities[rng.choose(kSeverity)];
  return d;
}

PromptType sample_prompt(Rng& rng) {
  static constexpr double kPrompt[] = {0.60, 0.30, 0.10};
  return kAllPrompts[rng.choose(kPrompt)];
}

double alignment_score(double sem, double lex, double title) {
  auto clamp = [](double x) { return std::clamp(x, 0.0, 1.0); };
  return 0.5 * clamp(sem) + 0.4 * clamp(lex) + 0.1 * clamp(title);
}

std::pair<double, double> severity_band(Severity s) {
  switch (s) {
    case Severity::kLow:
      return {0.20, 0.40};
    case Severity::kMedium:
      return {0.40, 0.60};
    case Severity::kHigh:
      return {0.70, 1.00};
  }
  return {0.0, 0.0};
}

std::optional<std::pair<std::size_t, std::size_t>> severity_count_range(
    Severity s, std::size_t paragraphs) {
  const auto [lo, hi] = severity_band(s);
  const double n = static_cast<double>(paragraphs);
  // The tolerance keeps exact products such as 0.7 * 10 on the boundary.
  const auto first = static_cast<std::size_t>(std::ceil(lo * n - 1e-9));
  const auto last = static_cast<std::size_t>(std::floor(hi * n + 1e-9));
  if (first > last || last == 0) return std::nullopt;
  return std::pair{std::max<std::size_t>(first, 1), last};
}

void PairPlan::validate() const {
  const bool has_repl = !replacements.empty();
  const bool has_alt = !altered.empty();
  switch (category) {
    case PairCategory::kOriginal:
      if (has_repl || has_alt) throw ConfigError("original pair with changes");
      if (severity) throw ConfigError("original pair with a severity");
      break;
    case PairCategory::kAltered:
      if (has_repl || !has_alt) throw ConfigError("altered pair needs alterations only");
      if (severity) throw ConfigError("altered pair with a severity");
      break;
    case PairCategory::kPlagiarized:
      if (!has_repl || has_alt) throw ConfigError("plagiarized pair needs replacements only");
      if (!severity) throw ConfigError("plagiarized pair without severity");
      break;
    case PairCategory::kPlagiarizedPlusAltered:
      if (!has_repl) throw ConfigError("plagiarized pair needs replacements");
      if (!severity) throw ConfigError("plagiarized pair without severity");
      break;
  }
  std::set<std::size_t> targets;
  std::set<std::size_t> sources;
  for (const auto& r : replacements) {
    if (!targets.insert(r.target).second) throw ConfigError("paragraph replaced twice");
    if (!sources.insert(r.source).second) throw ConfigError("source paragraph reused");
  }
  for (const auto& a : altered) {
    if (!targets.insert(a.target).second) throw ConfigError("paragraph changed twice");
  }
}

std::vector<std::size_t> citing_paragraphs(const PoolDocument& p,
                                           const PoolDocument& s,
                                           const GeneratorConfig& config) {
  std::string marker = config.citation_marker;
  if (const auto pos = marker.find("{id}"); pos != std::string::npos) {
    marker.replace(pos, 4, s.id);
  }
  std::vector<std::size_t> out;
  if (marker.empty()) return out;
  for (std::size_t i = 0; i < p.paragraphs.size(); ++i) {
    if (p.paragraph_text(i).find(marker) != std::string::npos) out.push_back(i);
  }
  return out;
}

std::vector<Replacement> align_paragraphs(const PoolDocument& p,
                                          const PoolDocument& s,
                                          const std::vector<std::size_t>& targets) {
  std::vector<Chunk> src_chunks;
  std::vector<Chunk> p_chunks;
  for (std::size_t i = 0; i < s.paragraphs.size(); ++i) {
    src_chunks.push_back({s.paragraphs[i], s.paragraph_text(i), {}});
  }
  for (std::size_t i = 0; i < p.paragraphs.size(); ++i) {
    p_chunks.push_back({p.paragraphs[i], p.paragraph_text(i), {}});
  }
  tfidf_vectors(src_chunks, p_chunks);

  std::vector<std::tuple<double, std::size_t, std::size_t>> scored;
  for (std::size_t t : targets) {
    for (std::size_t j = 0; j < s.paragraphs.size(); ++j) {
      const double sem = cosine(p.paragraph_vectors[t], s.paragraph_vectors[j]);
      const double lex = dot(p_chunks[t].vector, src_chunks[j].vector);
      const double title = cosine(p.title_vectors[t], s.title_vectors[j]);
      scored.emplace_back(alignment_score(sem, lex, title), t, j);
    }
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  std::set<std::size_t> used_t;
  std::set<std::size_t> used_s;
  std::vector<Replacement> out;
  for (const auto& [score, t, j] : scored) {
    if (used_t.count(t) || used_s.count(j)) continue;
    used_t.insert(t);
    used_s.insert(j);
    out.push_back({t, j, PromptType::kSimple, score});
  }
  std::sort(out.begin(), out.end(),
            [](const Replacement& a, const Replacement& b) { return a.target < b.target; });
  return out;
}

PlanOutcome plan_replacements(const PoolDocument& s, const PoolDocument& p,
                              Severity severity, Rng& rng,
                              const GeneratorConfig& config) {
  if (s.id == p.id) throw ConfigError("source and base document are identical");
  PlanOutcome outcome;
  const std::size_t n = p.paragraphs.size();
  const auto range = severity_count_range(severity, n);
  if (!range) {
    outcome.discard_reason = "no " + std::string(to_string(severity)) +
                             " replacement count for " + std::to_string(n) +
                             " paragraphs";
    return outcome;
  }
  const std::size_t lo = range->first;
  const std::size_t hi = std::min(range->second, s.paragraphs.size());
  if (lo > hi) {
    outcome.discard_reason = "source has " + std::to_string(s.paragraphs.size()) +
                             " paragraphs, " + std::to_string(lo) + " needed";
    return outcome;
  }
  std::size_t k = static_cast<std::size_t>(rng.uniform_int(lo, hi));

  const auto citing = citing_paragraphs(p, s, config);
  k = std::max(k, std::min(citing.size(), hi));
  std::vector<std::size_t> targets(citing.begin(),
                                   citing.begin() + static_cast<std::ptrdiff_t>(
                                                        std::min(k, citing.size())));
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(citing.begin(), citing.end(), i) == citing.end()) rest.push_back(i);
  }
  rng.shuffle(rest);
  for (std::size_t i = 0; targets.size() < k && i < rest.size(); ++i) {
    targets.push_back(rest[i]);
  }
  std::sort(targets.begin(), targets.end());

  PairPlan plan;
  plan.severity = severity;
  plan.replacements = align_paragraphs(p, s, targets);
  for (auto& r : plan.replacements) r.prompt = sample_prompt(rng);
  outcome.plan = std::move(plan);
  return outcome;
}

namespace {

std::vector<Alteration> draw_alterations(const std::vector<std::size_t>& free,
                                         std::size_t count, Rng& rng) {
  std::vector<std::size_t> pick = free;
  rng.shuffle(pick);
  pick.resize(std::min(count, pick.size()));
  std::sort(pick.begin(), pick.end());
  std::vector<Alteration> out;
  for (std::size_t t : pick) out.push_back({t, sample_prompt(rng)});
  return out;
}

std::size_t ceil_fraction(double f, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(f * static_cast<double>(n) - 1e-9));
}

}  // namespace

PlanOutcome plan_pair(const SourcePool& pool, std::size_t s, std::size_t p,
                      std::uint64_t seed, std::size_t index,
                      const GeneratorConfig& config) {
  Rng rng(hash_combine(seed, index));
  const CategoryDraw draw = sample_category(rng);
  const GeneratorModel model =
      kAllModels[rng.uniform_int(0, std::size(kAllModels) - 1)];
  const PoolDocument& src = pool[s];
  const PoolDocument& base = pool[p];
  const std::size_t n = base.paragraphs.size();

  PlanOutcome outcome;
  switch (draw.category) {
    case PairCategory::kOriginal:
      outcome.plan = PairPlan{};
      break;
    case PairCategory::kAltered: {
      const std::size_t lo = std::max<std::size_t>(1, ceil_fraction(config.altered_min_fraction, n));
      const auto hi_raw = static_cast<std::size_t>(
          std::floor(config.altered_max_fraction * static_cast<double>(n) + 1e-9));
      const std::size_t hi = std::min(n, std::max(lo, hi_raw));
      const auto count = static_cast<std::size_t>(rng.uniform_int(lo, hi));
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      PairPlan plan;
      plan.altered = draw_alterations(all, count, rng);
      outcome.plan = std::move(plan);
      break;
    }
    case PairCategory::kPlagiarized:
    case PairCategory::kPlagiarizedPlusAltered: {
      outcome = plan_replacements(src, base, *draw.severity, rng, config);
      if (!outcome.plan) return outcome;
      if (draw.altered_addon) {
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < n; ++i) {
          const bool taken = std::any_of(
              outcome.plan->replacements.begin(), outcome.plan->replacements.end(),
              [&](const Replacement& r) { return r.target == i; });
          if (!taken) free.push_back(i);
        }
        const std::size_t count =
            std::max<std::size_t>(1, ceil_fraction(config.addon_fraction, n));
        outcome.plan->altered = draw_alterations(free, count, rng);
      }
      break;
    }
  }
  PairPlan& plan = *outcome.plan;
  plan.index = index;
  plan.source = s;
  plan.base = p;
  plan.category = draw.category;
  plan.severity = draw.severity;
  plan.model = model;
  plan.validate();
  return outcome;
}

RealizedPair realize_pair(const SourcePool& pool, const PairPlan& plan,
                          Paraphraser& paraphraser, const DocumentRef& suspicious,
                          const DocumentRef& source) {
  const PoolDocument& src = pool[plan.source];
  const PoolDocument& base = pool[plan.base];
  std::map<std::size_t, const Replacement*> repl;
  std::map<std::size_t, const Alteration*> alt;
  for (const auto& r : plan.replacements) repl[r.target] = &r;
  for (const auto& a : plan.altered) alt[a.target] = &a;

  RealizedPair out;
  out.truth.suspicious = suspicious;
  std::size_t cursor = 0;       // in base characters
  std::size_t out_chars = 0;    // characters written so far
  const std::u32string_view chars(base.chars);
  auto emit = [&](std::string_view utf8_text) {
    out.suspicious_text += utf8_text;
    out_chars += utf8::count_chars(utf8_text);
  };
  for (std::size_t i = 0; i < base.paragraphs.size(); ++i) {
    const Span para = base.paragraphs[i];
    const auto r = repl.find(i);
    const auto a = alt.find(i);
    if (r == repl.end() && a == alt.end()) continue;
    emit(utf8::encode(chars.substr(cursor, para.start() - cursor)));
    const PromptType prompt = r != repl.end() ? r->second->prompt : a->second->prompt;
    std::optional<std::string> context;
    if (prompt == PromptType::kComplex) {
      context = i == 0 ? std::string() : base.paragraph_text(i - 1);
    }
    const std::string input =
        r != repl.end() ? src.paragraph_text(r->second->source) : base.paragraph_text(i);
    const std::string text =
        paraphraser.paraphrase(input, prompt,
                               context ? std::optional<std::string_view>(*context)
                                       : std::nullopt);
    const std::size_t start = out_chars;
    emit(text);
    const std::size_t length = out_chars - start;
    if (length == 0) throw ProviderError("paraphraser returned empty text");
    CaseMeta meta{plan.model, prompt, plan.severity};
    if (r != repl.end()) {
      out.truth.cases.push_back(ReuseCase::plagiarism(
          {suspicious, Span(start, length)},
          {source, src.paragraphs[r->second->source]}, meta));
    } else {
      out.truth.cases.push_back(ReuseCase::altered({suspicious, Span(start, length)}, meta));
    }
    cursor = para.end();
  }
  emit(utf8::encode(chars.substr(cursor)));
  return out;
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "";
}

std::vector<Split> assign_splits(const std::vector<PairPlan>& plans,
                                 std::uint64_t seed) {
  std::map<std::pair<PairCategory, GeneratorModel>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    strata[{plans[i].category, plans[i].model}].push_back(i);
  }
  std::vector<Split> out(plans.size(), Split::kTrain);
  for (auto& [key, members] : strata) {
    Rng rng(hash_combine(hash_combine(seed, 0x73706c6974ULL),
                         static_cast<std::uint64_t>(key.first) * 16 +
                             static_cast<std::uint64_t>(key.second)));
    rng.shuffle(members);
    const auto tenth =
        static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(members.size())));
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k < tenth) {
        out[members[k]] = Split::kValidation;
      } else if (k < 2 * tenth) {
        out[members[k]] = Split::kTest;
      }
    }
  }
  return out;
}

std::string suspicious_name(std::size_t pair_index) {
  return format_index("suspicious-document", pair_index) + ".txt";
}

std::string source_name(std::size_t pool_index) {
  return format_index("source-document", pool_index) + ".txt";
}

namespace {

nlohmann::json plan_to_json(const SourcePool& pool, const PairPlan& plan, Split split) {
  nlohmann::json repl = nlohmann::json::array();
  for (const auto& r : plan.replacements) {
    repl.push_back({{"target", r.target},
                    {"source", r.source},
                    {"prompt", to_string(r.prompt)},
                    {"score", r.score}});
  }
  nlohmann::json alt = nlohmann::json::array();
  for (const auto& a : plan.altered) {
    alt.push_back({{"target", a.target}, {"prompt", to_string(a.prompt)}});
  }
  return {{"index", plan.index},
          {"split", to_string(split)},
          {"suspicious", suspicious_name(plan.index)},
          {"source", source_name(plan.source)},
          {"source_id", pool[plan.source].id},
          {"base_id", pool[plan.base].id},
          {"category", to_string(plan.category)},
          {"severity", plan.severity ? nlohmann::json(to_string(*plan.severity))
                                     : nlohmann::json(nullptr)},
          {"model", to_string(plan.model)},
          {"replacements", std::move(repl)},
          {"altered", std::move(alt)}};
}

bool dir_has_entries(const std::filesystem::path& p) {
  return std::filesystem::is_directory(p) &&
         std::filesystem::directory_iterator(p) != std::filesystem::directory_iterator();
}

}  // namespace

GenerationSummary generate_corpus(const SourcePool& pool, Paraphraser& paraphraser,
                                  const GenerateOptions& options,
                                  const std::filesystem::path& out) {
  namespace fs = std::filesystem;
  if (options.pairs == 0) throw ConfigError("--pairs must be at least 1");
  if (dir_has_entries(out)) {
    throw ConfigError("output directory is not empty: " + out.string());
  }
  const auto pairing = pair_documents(pool);

  GenerationSummary summary;
  summary.requested = options.pairs;
  std::vector<std::string> log_lines;
  std::vector<PlanOutcome> outcomes(options.pairs);
  parallel_for(options.pairs, options.jobs, [&](std::size_t i) {
    const auto [s, p] = pairing[i % pairing.size()];
    outcomes[i] = plan_pair(pool, s, p, options.seed, i, options.generator);
  });

  std::vector<std::optional<RealizedPair>> realized(options.pairs);
  std::vector<std::string> errors(options.pairs);
  parallel_for(options.pairs, options.jobs, [&](std::size_t i) {
    if (!outcomes[i].plan) return;
    const PairPlan& plan = *outcomes[i].plan;
    try {
      realized[i] = realize_pair(pool, plan, paraphraser,
                                 DocumentRef(suspicious_name(i)),
                                 DocumentRef(source_name(plan.source)));
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < options.pairs; ++i) {
    if (!outcomes[i].plan) {
      summary.discarded.emplace_back(i, outcomes[i].discard_reason);
      log_lines.push_back(format_index("pair ", i) + " discarded: " +
                          outcomes[i].discard_reason);
    } else if (!realized[i]) {
      summary.failed.emplace_back(i, errors[i]);
      log_lines.push_back(format_index("pair ", i) + " failed: " + errors[i]);
    } else {
      summary.plans.push_back(*outcomes[i].plan);
    }
  }
  summary.emitted = summary.plans.size();
  summary.splits = assign_splits(summary.plans, options.seed);

  std::map<Split, std::vector<std::size_t>> by_split;
  for (std::size_t k = 0; k < summary.plans.size(); ++k) {
    by_split[summary.splits[k]].push_back(k);
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < summary.plans.size(); ++k) {
    rows.push_back(plan_to_json(pool, summary.plans[k], summary.splits[k]));
  }
  for (Split split : {Split::kTrain, Split::kValidation, Split::kTest}) {
    const fs::path root = out / std::string(to_string(split));
    std::vector<DocumentPair> pairs;
    std::set<std::size_t> sources;
    const bool write_truth = !(options.blind && split == Split::kTest);
    for (std::size_t k : by_split[split]) {
      const PairPlan& plan = summary.plans[k];
      const RealizedPair& r = *realized[plan.index];
      const DocumentRef susp(suspicious_name(plan.index));
      const DocumentRef src(source_name(plan.source));
      pairs.push_back({susp, src});
      write_file_atomic(root / "susp" / susp.id(), r.suspicious_text);
      if (sources.insert(plan.source).second) {
        write_file_atomic(root / "src" / src.id(), pool[plan.source].text);
      }
      if (write_truth) {
        write_annotations(r.truth, root / "truth" /
                                       (fs::path(susp.id()).stem().string() + ".xml"));
      }
    }
    fs::create_directories(root / "susp");
    fs::create_directories(root / "src");
    if (write_truth) fs::create_directories(root / "truth");
    write_file_atomic(root / "pairs", format_pairs(pairs));
    log_lines.push_back(std::string(to_string(split)) + ": " +
                        std::to_string(pairs.size()) + " pairs");
  }

  std::map<std::string, std::size_t> by_category;
  for (const auto& plan : summary.plans) ++by_category[std::string(to_string(plan.category))];
  for (const auto& [c, n] : by_category) {
    log_lines.push_back("category " + c + ": " + std::to_string(n));
  }

  nlohmann::json discarded = nlohmann::json::array();
  for (const auto& [i, why] : summary.discarded) {
    discarded.push_back({{"index", i}, {"reason", why}});
  }
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& [i, why] : summary.failed) {
    failed.push_back({{"index", i}, {"reason", why}});
  }
  const nlohmann::json manifest = {
      {"seed", options.seed},
      {"pairs_requested", options.pairs},
      {"pairs_emitted", summary.emitted},
      {"blind", options.blind},
      {"pool_documents", pool.size()},
      {"provider", options.provider},
      {"generator",
       {{"citation_marker", options.generator.citation_marker},
        {"addon_fraction", options.generator.addon_fraction},
        {"altered_min_fraction", options.generator.altered_min_fraction},
        {"altered_max_fraction", options.generator.altered_max_fraction}}},
      {"rows", std::move(rows)},
      {"discarded", std::move(discarded)},
      {"failed", std::move(failed)}};
  write_file_atomic(out / "manifest.json", manifest.dump(2) + "\n");

  std::ostringstream log;
  log << "requested " << summary.requested << ", emitted " << summary.emitted
      << ", discarded " << summary.discarded.size() << ", failed "
      << summary.failed.size() << "\n";
  for (const auto& line : log_lines) log << line << "\n";
  write_file_atomic(out / "generation.log", log.str());
  return summary;
}

}  // namespace plagkit
