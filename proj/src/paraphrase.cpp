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

#include "plagkit/paraphrase.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <semaphore>
#include <set>
#include <thread>

#include <httplib.h>

#include "plagkit/error.hpp"
#include "plagkit/hashing.hpp"
#include "plagkit/lexicon.hpp"
#include "plagkit/log.hpp"
#include "plagkit/pan_format.hpp"
#include "plagkit/tokenize.hpp"
#include "plagkit/utf8.hpp"
#include "plagkit/vector_detector.hpp"

namespace plagkit {
namespace {

constexpr PromptTemplate kTemplates[] = {
    {PromptType::kSimple,
     "Paraphrase the given paragraph for a professional audience.", false},
    {PromptType::kDefault,
     "Reformulate the given paragraph in a sophisticated manner while "
     "preserving its meaning. Modify sentence structure, reword phrases, and "
     "incorporate elements of general knowledge to ensure coherence. The "
     "less token overlap, the better.",
     false},
    {PromptType::kComplex,
     "Completely rephrase the given paragraph in your own words. Feel free to "
     "incorporate elements from general knowledge to ensure coherence, flow, "
     "and better understanding.\n\n{context_before}",
     true},
};

constexpr std::string_view kContextSlot = "{context_before}";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\v\f") == std::string_view::npos;
}

}  // namespace

const PromptTemplate& prompt_template(PromptType type) {
  for (const auto& t : kTemplates) {
    if (t.type == type) return t;
  }
  throw ConfigError("unknown prompt type");
}

std::string render_prompt(PromptType type, std::string_view paragraph,
                          std::optional<std::string_view> context) {
  const PromptTemplate& t = prompt_template(type);
  std::string head(t.text);
  if (t.has_context_slot) {
    const auto pos = head.find(kContextSlot);
    head.replace(pos, kContextSlot.size(), context.value_or(""));
  }
  std::string out = trim(head);
  out += "\n";
  out += kOutputOnlyInstruction;
  out += "\n\n";
  out += paragraph;
  return out;
}

std::vector<SuppressionTokens> default_suppression_tokens() {
  return {{"<thinking>", "</thinking>"}, {"<think>", "</think>"}};
}

namespace {

bool is_preamble_line(const std::string& line) {
  static const std::regex opener(
      R"(^\s*(sure|certainly|of course|okay|ok|absolutely|alright|here)\b.*)",
      std::regex::icase);
  static const std::regex mentions(
      R"((paraphras|rephras|reformulat|rewrit|version|here is|here's))",
      std::regex::icase);
  static const std::regex label(
      R"(^\s*(the\s+)?(paraphrased|rephrased|reformulated|rewritten)(\s+\w+){0,2}\s*:\s*$)",
      std::regex::icase);
  const std::string t = trim(line);
  if (t.empty()) return false;
  if (std::regex_match(t, label)) return true;
  if (!std::regex_match(t, opener)) return false;
  return t.back() == ':' || std::regex_search(t, mentions);
}

}  // namespace

Cleaned strip_reasoning(std::string_view raw,
                        const std::vector<SuppressionTokens>& tokens) {
  Cleaned out;
  std::string text(raw);
  for (const auto& tok : tokens) {
    if (tok.open.empty()) continue;
    std::size_t pos = 0;
    while ((pos = text.find(tok.open, pos)) != std::string::npos) {
      const std::size_t close = tok.close.empty()
                                    ? std::string::npos
                                    : text.find(tok.close, pos + tok.open.size());
      if (close == std::string::npos) {
        out.warnings.push_back("unbalanced " + tok.open +
                               " block; dropped the rest of the output");
        text.erase(pos);
        break;
      }
      text.erase(pos, close + tok.close.size() - pos);
    }
  }

  // Leading explanatory lines, as long as real content follows.
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  std::size_t first = 0;
  while (first < lines.size()) {
    if (is_blank(lines[first])) {
      ++first;
      continue;
    }
    if (!is_preamble_line(lines[first])) break;
    bool content_follows = false;
    for (std::size_t k = first + 1; k < lines.size(); ++k) {
      if (!is_blank(lines[k])) content_follows = true;
    }
    if (!content_follows) break;
    ++first;
  }
  std::string joined;
  for (std::size_t k = first; k < lines.size(); ++k) {
    if (k > first) joined += '\n';
    joined += lines[k];
  }
  out.text = trim(joined);
  return out;
}

Cleaned limit_output(std::string_view text, std::size_t loop_ngram,
                     std::size_t max_chars) {
  Cleaned out;
  std::u32string chars = utf8::decode(text);
  if (loop_ngram > 0) {
    const auto tokens = tokenize_normalize(chars);
    std::set<std::vector<std::string_view>> seen;
    for (std::size_t i = 0; i + loop_ngram <= tokens.size(); ++i) {
      std::vector<std::string_view> gram;
      for (std::size_t k = 0; k < loop_ngram; ++k) {
        gram.push_back(tokens[i + k].text);
      }
      if (!seen.insert(std::move(gram)).second) {
        chars.resize(tokens[i].span.start());
        out.warnings.push_back("repeated " + std::to_string(loop_ngram) +
                               "-gram; output truncated at character " +
                               std::to_string(chars.size()));
        break;
      }
    }
  }
  if (max_chars > 0 && chars.size() > max_chars) {
    chars.resize(max_chars);
    out.warnings.push_back("output capped at " + std::to_string(max_chars) +
                           " characters");
  }
  out.text = trim(utf8::encode(chars));
  return out;
}

std::string_view to_string(ProviderKind k) {
  switch (k) {
    case ProviderKind::kOffline:
      return "offline";
    case ProviderKind::kVerbatim:
      return "verbatim";
    case ProviderKind::kHttp:
      return "http";
    case ProviderKind::kReplay:
      return "replay";
  }
  return "";
}

void ProviderConfig::validate() const {
  if (kind == ProviderKind::kHttp || kind == ProviderKind::kReplay) {
    if (model.empty()) throw ConfigError("provider config requires a model");
  }
  if (kind == ProviderKind::kHttp) {
    if (endpoint.empty()) throw ConfigError("http provider requires an endpoint");
    if (endpoint.rfind("http://", 0) != 0) {
      throw ConfigError("http provider endpoint must start with http://");
    }
    if (max_in_flight == 0) throw ConfigError("max_in_flight must be >= 1");
  }
  if (kind == ProviderKind::kReplay && !replay_log) {
    throw ConfigError("replay provider requires replay_log");
  }
}

ProviderConfig provider_config_from_json(const nlohmann::json& j) {
  ProviderConfig c;
  try {
    const std::string kind = j.value("kind", "offline");
    if (kind == "offline") {
      c.kind = ProviderKind::kOffline;
    } else if (kind == "verbatim") {
      c.kind = ProviderKind::kVerbatim;
    } else if (kind == "http") {
      c.kind = ProviderKind::kHttp;
    } else if (kind == "replay") {
      c.kind = ProviderKind::kReplay;
    } else {
      throw ConfigError("unknown provider kind '" + kind + "'");
    }
    c.seed = j.value("seed", c.seed);
    c.endpoint = j.value("endpoint", c.endpoint);
    c.model = j.value("model", c.model);
    c.auth_env = j.value("auth_env", c.auth_env);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
    c.retries = j.value("retries", c.retries);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.max_output_chars = j.value("max_output_chars", c.max_output_chars);
    c.loop_ngram = j.value("loop_ngram", c.loop_ngram);
    c.response_pointer = j.value("response_pointer", c.response_pointer);
    if (j.contains("request_template")) c.request_template = j["request_template"];
    if (j.contains("suppression")) {
      c.suppression.clear();
      for (const auto& pair : j["suppression"]) {
        c.suppression.push_back(
            {pair.at(0).get<std::string>(), pair.at(1).get<std::string>()});
      }
    }
    if (j.contains("replay_log")) {
      c.replay_log = j["replay_log"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("provider config: ") + e.what());
  }
  c.validate();
  return c;
}

ProviderConfig load_provider_config(const std::filesystem::path& path) {
  try {
    return provider_config_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string replay_key(std::string_view model, std::string_view prompt) {
  const std::uint64_t h = fnv1a(prompt, fnv1a(model) ^ 0x5bd1e995ULL);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Paraphraser::paraphrase(std::string_view text, PromptType type,
                                    std::optional<std::string_view> context) {
  if (is_blank(text)) throw ConfigError("paraphrase: empty input text");
  if (type == PromptType::kComplex && !context) {
    throw ConfigError("paraphrase: complex prompts require a context");
  }
  if (type != PromptType::kComplex && context) {
    throw ConfigError("paraphrase: only complex prompts take a context");
  }
  return do_paraphrase(text, type, context);
}

// ---------------------------------------------------------------------------
// Offline provider

double OfflineParaphraser::substitution_rate(PromptType type) {
  switch (type) {
    case PromptType::kSimple:
      return 0.35;
    case PromptType::kDefault:
      return 0.65;
    case PromptType::kComplex:
      return 0.9;
  }
  return 0.0;
}

namespace {

struct Word {
  std::string lead;   // leading punctuation
  std::string core;
  std::string trail;  // trailing punctuation
};

Word split_word(std::string_view raw) {
  const std::u32string c = utf8::decode(raw);
  std::size_t b = 0;
  std::size_t e = c.size();
  while (b < e && utf8::is_punct(c[b])) ++b;
  while (e > b && utf8::is_punct(c[e - 1])) --e;
  return Word{utf8::encode(c.substr(0, b)), utf8::encode(c.substr(b, e - b)),
              utf8::encode(c.substr(e))};
}

std::string lower(std::string_view s) {
  std::string out;
  for (char32_t ch : utf8::decode(s)) utf8::append(out, utf8::to_lower(ch));
  return out;
}

bool starts_upper(std::string_view s) {
  if (s.empty()) return false;
  const std::u32string c = utf8::decode(s);
  return utf8::is_upper(c[0]);
}

std::string with_first(std::string_view s, bool upper) {
  std::u32string c = utf8::decode(s);
  if (c.empty()) return {};
  if (upper) {
    if (c[0] >= U'a' && c[0] <= U'z') c[0] -= 32;
  } else {
    // Leave acronyms such as "SOTA" alone.
    const bool acronym = c.size() > 1 && utf8::is_upper(c[1]);
    if (!acronym) c[0] = utf8::to_lower(c[0]);
  }
  return utf8::encode(c);
}

bool ends_sentence(const Word& w) {
  return w.trail.find_first_of(".!?") != std::string::npos;
}

std::string strip_trailing(std::string s, std::string_view chars) {
  while (!s.empty() && chars.find(s.back()) != std::string_view::npos) {
    s.pop_back();
  }
  return s;
}

using Sentence = std::vector<Word>;

// "A b, c d e." -> "C d e, a b."  /  "A b and c d." -> "C d and a b."
Sentence swap_clauses(const Sentence& s) {
  if (s.size() < 6) return s;
  const std::size_t last = s.size() - 1;
  std::optional<std::size_t> comma;
  std::optional<std::size_t> conj;
  for (std::size_t k = 2; k + 3 <= last; ++k) {
    if (!comma && s[k].trail == "," && s[k].lead.empty()) comma = k;
    if (!conj && k >= 3 && lower(s[k].core) == "and" && s[k].trail.empty() &&
        s[k].lead.empty()) {
      conj = k;
    }
  }
  const std::string final_punct = s[last].trail;
  Sentence first_part;
  Sentence second_part;
  std::optional<Word> joiner;
  if (comma) {
    first_part.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(*comma + 1));
    second_part.assign(s.begin() + static_cast<std::ptrdiff_t>(*comma + 1), s.end());
    first_part.back().trail.clear();
  } else if (conj) {
    first_part.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(*conj));
    second_part.assign(s.begin() + static_cast<std::ptrdiff_t>(*conj + 1), s.end());
    joiner = s[*conj];
  } else {
    return s;
  }
  second_part.back().trail = strip_trailing(second_part.back().trail, ".!?");
  first_part.front().core = with_first(first_part.front().core, false);
  second_part.front().core = with_first(second_part.front().core, true);

  Sentence out = std::move(second_part);
  if (joiner) {
    out.push_back(*joiner);
  } else {
    out.back().trail += ",";
  }
  for (auto& w : first_part) out.push_back(std::move(w));
  out.back().trail += final_punct.empty() ? "." : final_punct;
  return out;
}

std::vector<std::string> context_keywords(std::string_view context,
                                          std::uint64_t salt) {
  std::vector<std::string> candidates;
  std::set<std::string> seen;
  const auto fw = lexicon::function_words();
  for (const auto& t : tokenize_normalize(context)) {
    if (utf8::count_chars(t.text) < 5) continue;
    if (std::find(fw.begin(), fw.end(), t.text) != fw.end()) continue;
    if (seen.insert(t.text).second) candidates.push_back(t.text);
  }
  std::vector<std::string> out;
  if (candidates.empty()) return out;
  const std::size_t a = static_cast<std::size_t>(salt % candidates.size());
  out.push_back(candidates[a]);
  if (candidates.size() > 1) {
    const std::size_t b =
        (a + 1 + static_cast<std::size_t>(mix64(salt) % (candidates.size() - 1))) %
        candidates.size();
    out.push_back(candidates[b]);
  }
  return out;
}

}  // namespace

std::string OfflineParaphraser::paraphrase_paragraph(std::string_view paragraph,
                                                     PromptType type,
                                                     std::string_view context) const {
  const std::uint64_t base = hash_combine(seed_, fnv1a(paragraph));
  const double rate = substitution_rate(type);

  // Words and synonym substitution. The per-word draw does not depend on the
  // prompt type, so every word substituted at a lower level is substituted
  // (with the same synonym) at the higher levels too.
  std::vector<Word> words;
  {
    std::size_t i = 0;
    std::size_t index = 0;
    while (i < paragraph.size()) {
      const std::size_t b = paragraph.find_first_not_of(" \t\r\n\v\f", i);
      if (b == std::string_view::npos) break;
      std::size_t e = paragraph.find_first_of(" \t\r\n\v\f", b);
      if (e == std::string_view::npos) e = paragraph.size();
      Word w = split_word(paragraph.substr(b, e - b));
      const std::uint64_t h = hash_combine(base, index);
      if (const auto* entry = lexicon::find_synonyms(lower(w.core));
          entry != nullptr && unit_from_hash(h) < rate) {
        const std::string_view syn = entry->synonyms[mix64(h) % entry->synonyms.size()];
        w.core = with_first(syn, starts_upper(w.core));
      }
      words.push_back(std::move(w));
      i = e;
      ++index;
    }
  }

  std::vector<Sentence> sentences;
  for (auto& w : words) {
    if (sentences.empty()) sentences.emplace_back();
    const bool end = ends_sentence(w);
    sentences.back().push_back(std::move(w));
    if (end) sentences.emplace_back();
  }
  if (!sentences.empty() && sentences.back().empty()) sentences.pop_back();

  if (type != PromptType::kSimple) {
    for (auto& s : sentences) s = swap_clauses(s);
  }

  if (type == PromptType::kComplex) {
    Rng rng(hash_combine(base, fnv1a(context)));
    if (sentences.size() > 1) {
      std::vector<std::size_t> order(sentences.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      rng.shuffle(order);
      bool identity = true;
      for (std::size_t k = 0; k < order.size(); ++k) identity &= order[k] == k;
      if (identity) std::rotate(order.begin(), order.begin() + 1, order.end());
      std::vector<Sentence> shuffled;
      for (std::size_t k : order) shuffled.push_back(std::move(sentences[k]));
      sentences = std::move(shuffled);
    }
    const auto keys = context_keywords(context, rng.next());
    std::string bridge;
    if (keys.size() == 2) {
      bridge = "Building on the earlier discussion of " + keys[0] + " and " +
               keys[1] + ",";
    } else if (keys.size() == 1) {
      bridge = "Building on the earlier discussion of " + keys[0] + ",";
    } else {
      bridge = "Broadly speaking,";
    }
    if (!sentences.empty() && !sentences.front().empty()) {
      auto& first = sentences.front().front();
      if (first.lead.empty()) first.core = with_first(first.core, false);
    }
    Sentence prefix;
    std::size_t pos = 0;
    while (pos < bridge.size()) {
      std::size_t sp = bridge.find(' ', pos);
      if (sp == std::string::npos) sp = bridge.size();
      prefix.push_back(split_word(bridge.substr(pos, sp - pos)));
      pos = sp + 1;
    }
    if (sentences.empty()) sentences.emplace_back();
    sentences.front().insert(sentences.front().begin(), prefix.begin(), prefix.end());
  }

  std::string out;
  for (const auto& s : sentences) {
    for (const auto& w : s) {
      if (!out.empty()) out += ' ';
      out += w.lead;
      out += w.core;
      out += w.trail;
    }
  }
  if (out == trim(paragraph)) {
    out = "In other words, " + with_first(out, false);
  }
  return out;
}

std::string OfflineParaphraser::do_paraphrase(
    std::string_view text, PromptType type,
    std::optional<std::string_view> context) {
  const std::u32string chars = utf8::decode(text);
  const auto paras = chunk_spans(chars, ChunkMode::kParagraph);
  std::string out;
  std::size_t cursor = 0;
  for (const Span& p : paras) {
    out += utf8::encode(std::u32string_view(chars).substr(cursor, p.start() - cursor));
    out += paraphrase_paragraph(
        utf8::encode(std::u32string_view(chars).substr(p.start(), p.length())),
        type, context.value_or(""));
    cursor = p.end();
  }
  out += utf8::encode(std::u32string_view(chars).substr(cursor));
  return out;
}

// ---------------------------------------------------------------------------
// HTTP and replay providers

namespace {

nlohmann::json substitute(const nlohmann::json& tmpl, const std::string& prompt,
                          const std::string& model) {
  if (tmpl.is_string()) {
    const auto& s = tmpl.get_ref<const std::string&>();
    if (s == "{prompt}") return prompt;
    if (s == "{model}") return model;
    return tmpl;
  }
  if (tmpl.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : tmpl) out.push_back(substitute(v, prompt, model));
    return out;
  }
  if (tmpl.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = tmpl.begin(); it != tmpl.end(); ++it) {
      out[it.key()] = substitute(it.value(), prompt, model);
    }
    return out;
  }
  return tmpl;
}

class ReplayLog {
 public:
  explicit ReplayLog(std::filesystem::path path) : path_(std::move(path)) {}

  void append(const std::string& key, const std::string& model,
              const std::string& prompt, const std::string& response) {
    nlohmann::json rec = {{"key", key},
                          {"model", model},
                          {"prompt", prompt},
                          {"response", response}};
    std::lock_guard lock(mu_);
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot append to replay log " + path_.string());
    out << rec.dump() << '\n';
  }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

Cleaned clean_output(const ProviderConfig& config, const std::string& raw) {
  Cleaned stripped = strip_reasoning(raw, config.suppression);
  Cleaned limited =
      limit_output(stripped.text, config.loop_ngram, config.max_output_chars);
  limited.warnings.insert(limited.warnings.begin(), stripped.warnings.begin(),
                          stripped.warnings.end());
  for (const auto& w : limited.warnings) log::warning(w);
  if (limited.text.empty()) throw ProviderError("empty model output");
  return limited;
}

class HttpParaphraser final : public Paraphraser {
 public:
  explicit HttpParaphraser(ProviderConfig config)
      : config_(std::move(config)), slots_(config_.max_in_flight) {
    const std::string rest = config_.endpoint.substr(std::string("http://").size());
    const auto slash = rest.find('/');
    host_port_ = "http://" + rest.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : rest.substr(slash);
    if (config_.replay_log) log_ = std::make_unique<ReplayLog>(*config_.replay_log);
    if (!config_.auth_env.empty()) {
      if (const char* tok = std::getenv(config_.auth_env.c_str())) token_ = tok;
    }
  }

  std::string_view name() const override { return "http"; }

 protected:
  std::string do_paraphrase(std::string_view text, PromptType type,
                            std::optional<std::string_view> context) override {
    const std::string prompt = render_prompt(type, text, context);
    const std::string body =
        substitute(config_.request_template, prompt, config_.model).dump();
    const std::string raw = post(body);
    if (log_) log_->append(replay_key(config_.model, prompt), config_.model, prompt, raw);
    return clean_output(config_, raw).text;
  }

 private:
  std::string post(const std::string& body) {
    struct Slot {
      std::counting_semaphore<1024>& s;
      explicit Slot(std::counting_semaphore<1024>& sem) : s(sem) { s.acquire(); }
      ~Slot() { s.release(); }
    } slot(slots_);

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
      }
      httplib::Client client(host_port_);
      const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
      const auto usecs =
          std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_write_timeout(secs.count(), usecs.count());
      httplib::Headers headers;
      if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
      auto res = client.Post(path_, headers, body, "application/json");
      if (!res) {
        last_error = "transport error: " + httplib::to_string(res.error());
        log::warning("paraphrase request failed (" + last_error + "), attempt " +
                     std::to_string(attempt + 1));
        continue;
      }
      if (res->status >= 500 || res->status == 429) {
        last_error = "HTTP " + std::to_string(res->status);
        log::warning("paraphrase request returned " + last_error);
        continue;
      }
      if (res->status != 200) {
        throw ProviderError("paraphrase endpoint returned HTTP " +
                            std::to_string(res->status));
      }
      try {
        const auto j = nlohmann::json::parse(res->body);
        const auto& v = j.at(nlohmann::json::json_pointer(config_.response_pointer));
        return v.get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("unexpected response body: ") + e.what());
      }
    }
    throw ProviderError("paraphrase endpoint unreachable after " +
                        std::to_string(config_.retries + 1) +
                        " attempts: " + last_error);
  }

  ProviderConfig config_;
  std::counting_semaphore<1024> slots_;
  std::string host_port_;
  std::string path_;
  std::string token_;
  std::unique_ptr<ReplayLog> log_;
};

class ReplayParaphraser final : public Paraphraser {
 public:
  explicit ReplayParaphraser(ProviderConfig config) : config_(std::move(config)) {
    const std::string content = read_file(*config_.replay_log);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
      std::size_t eol = content.find('\n', pos);
      if (eol == std::string::npos) eol = content.size();
      const std::string line = content.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (is_blank(line)) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        responses_[j.at("key").get<std::string>()] =
            j.at("response").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(config_.replay_log->string() + ":" +
                         std::to_string(line_no) + ": " + e.what());
      }
    }
  }

  std::string_view name() const override { return "replay"; }

 protected:
  std::string do_paraphrase(std::string_view text, PromptType type,
                            std::optional<std::string_view> context) override {
    const std::string prompt = render_prompt(type, text, context);
    const std::string key = replay_key(config_.model, prompt);
    auto it = responses_.find(key);
    if (it == responses_.end()) {
      throw ProviderError("no recorded response for prompt key " + key);
    }
    return clean_output(config_, it->second).text;
  }

 private:
  ProviderConfig config_;
  std::map<std::string, std::string> responses_;
};

}  // namespace

std::unique_ptr<Paraphraser> make_paraphraser(const ProviderConfig& config) {
  config.validate();
  switch (config.kind) {
    case ProviderKind::kOffline:
      return std::make_unique<OfflineParaphraser>(config.seed);
    case ProviderKind::kVerbatim:
      return std::make_unique<VerbatimParaphraser>();
    case ProviderKind::kHttp:
      return std::make_unique<HttpParaphraser>(config);
    case ProviderKind::kReplay:
      return std::make_unique<ReplayParaphraser>(config);
  }
  throw ConfigError("unknown provider kind");
}

}  // namespace plagkit
