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

// Paraphrase providers for the three prompt regimes.
//
//   offline   deterministic surface rewriting, used for hermetic corpora
//   verbatim  returns the input unchanged (copy-only corpora)
//   http      renders the prompt and calls a chat-completion style endpoint
//   replay    answers from a log previously recorded by the http provider

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "plagkit/span.hpp"

namespace plagkit {

struct PromptTemplate {
  PromptType type;
  std::string_view text;
  bool has_context_slot;
};

const PromptTemplate& prompt_template(PromptType type);

// Appended to every rendered prompt. Our own wording.
inline constexpr std::string_view kOutputOnlyInstruction =
    "Output only the paraphrased paragraph, without any explanation, "
    "preamble or notes.";

// Template (with {context_before} filled for complex prompts), the
// output-only instruction, then the paragraph.
std::string render_prompt(PromptType type, std::string_view paragraph,
                          std::optional<std::string_view> context);

struct SuppressionTokens {
  std::string open;
  std::string close;
};

std::vector<SuppressionTokens> default_suppression_tokens();

struct Cleaned {
  std::string text;
  std::vector<std::string> warnings;
};

// Removes every open..close region (an unmatched open drops the rest of the
// text, with a warning), then leading explanatory lines such as
// "Sure, here is the paraphrase:", then trims.
Cleaned strip_reasoning(std::string_view raw,
                        const std::vector<SuppressionTokens>& tokens);

// Cuts the text before the second occurrence of any repeated word n-gram
// and caps its length at max_chars characters.
Cleaned limit_output(std::string_view text, std::size_t loop_ngram,
                     std::size_t max_chars);

enum class ProviderKind { kOffline, kVerbatim, kHttp, kReplay };

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kOffline;
  std::uint64_t seed = 0;  // offline only

  // http / replay
  std::string endpoint;  // e.g. http://127.0.0.1:8080/v1/chat/completions
  std::string model;
  std::string auth_env;  // environment variable holding a bearer token
  double timeout_seconds = 120.0;
  int retries = 3;
  unsigned max_in_flight = 4;
  std::vector<SuppressionTokens> suppression = default_suppression_tokens();
  std::size_t max_output_chars = 8000;
  std::size_t loop_ngram = 20;
  // Request body; the strings "{prompt}" and "{model}" are substituted.
  nlohmann::json request_template = {
      {"model", "{model}"},
      {"messages", {{{"role", "user"}, {"content", "{prompt}"}}}}};
  std::string response_pointer = "/choices/0/message/content";
  std::optional<std::filesystem::path> replay_log;

  // Throws ConfigError when an http/replay config lacks endpoint or model
  // or a replay config lacks its log.
  void validate() const;
};

// Reads a JSON provider config ({"kind": "http", "endpoint": ..., ...}).
ProviderConfig load_provider_config(const std::filesystem::path& path);
ProviderConfig provider_config_from_json(const nlohmann::json& j);
std::string_view to_string(ProviderKind k);

class Paraphraser {
 public:
  virtual ~Paraphraser() = default;

  // Preconditions: non-empty text; context present iff type is complex
  // (an empty context is allowed). Violations throw ConfigError.
  std::string paraphrase(std::string_view text, PromptType type,
                         std::optional<std::string_view> context = {});

  virtual std::string_view name() const = 0;

 protected:
  virtual std::string do_paraphrase(std::string_view text, PromptType type,
                                    std::optional<std::string_view> context) = 0;
};

// Aggressiveness grows with the prompt type: simple substitutes synonyms,
// default also swaps clauses, complex also shuffles sentences and adds a
// bridging phrase drawn from the context. Substitution sets are nested
// across levels, so word overlap with the input decreases from simple to
// complex. Paragraph breaks in the input are kept.
class OfflineParaphraser final : public Paraphraser {
 public:
  explicit OfflineParaphraser(std::uint64_t seed = 0) : seed_(seed) {}
  std::string_view name() const override { return "offline"; }

  static double substitution_rate(PromptType type);

 protected:
  std::string do_paraphrase(std::string_view text, PromptType type,
                            std::optional<std::string_view> context) override;

 private:
  std::string paraphrase_paragraph(std::string_view paragraph, PromptType type,
                                   std::string_view context) const;
  std::uint64_t seed_;
};

class VerbatimParaphraser final : public Paraphraser {
 public:
  std::string_view name() const override { return "verbatim"; }

 protected:
  std::string do_paraphrase(std::string_view text, PromptType,
                            std::optional<std::string_view>) override {
    return std::string(text);
  }
};

std::unique_ptr<Paraphraser> make_paraphraser(const ProviderConfig& config);

// Key under which a (model, rendered prompt) exchange is logged.
std::string replay_key(std::string_view model, std::string_view prompt);

}  // namespace plagkit
