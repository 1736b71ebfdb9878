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

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "plagkit/error.hpp"
#include "plagkit/pan_format.hpp"
#include "plagkit/paraphrase.hpp"
#include "plagkit/tokenize.hpp"
#include "../support/temp_dir.hpp"

using namespace plagkit;
using plagkit::testing::TempDir;

namespace {

std::string fixture() {
  std::string t = read_file(std::filesystem::path(PLAGKIT_TEST_DATA) / "paraphrase_fixture.txt");
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t;
}

double overlap(const std::string& a, const std::string& b) {
  return jaccard(std::string_view(a), std::string_view(b));
}

// Local chat-completion style endpoint. The handler is swapped per test.
class FakeEndpoint {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit FakeEndpoint(Handler h) : handler_(std::move(h)) {
    server_.Post("/v1/chat", [this](const httplib::Request& req, httplib::Response& res) {
      ++calls_;
      handler_(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat"; }
  int calls() const { return calls_; }

 private:
  httplib::Server server_;
  Handler handler_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> calls_{0};
};

std::string reply(const std::string& content) {
  return nlohmann::json{{"choices", {{{"message", {{"content", content}}}}}}}.dump();
}

ProviderConfig http_config(const std::string& url) {
  ProviderConfig c;
  c.kind = ProviderKind::kHttp;
  c.endpoint = url;
  c.model = "test-model";
  c.retries = 2;
  c.timeout_seconds = 5;
  return c;
}

}  // namespace

TEST_CASE("prompt templates are the published texts") {
  CHECK(prompt_template(PromptType::kSimple).text ==
        "Paraphrase the given paragraph for a professional audience.");
  CHECK(prompt_template(PromptType::kDefault).text ==
        "Reformulate the given paragraph in a sophisticated manner while preserving its "
        "meaning. Modify sentence structure, reword phrases, and incorporate elements of "
        "general knowledge to ensure coherence. The less token overlap, the better.");
  CHECK(prompt_template(PromptType::kComplex).text ==
        "Completely rephrase the given paragraph in your own words. Feel free to "
        "incorporate elements from general knowledge to ensure coherence, flow, and better "
        "understanding.\n\n{context_before}");
  CHECK_FALSE(prompt_template(PromptType::kSimple).has_context_slot);
  CHECK_FALSE(prompt_template(PromptType::kDefault).has_context_slot);
  CHECK(prompt_template(PromptType::kComplex).has_context_slot);

  const std::string r = render_prompt(PromptType::kComplex, "BODY", "PREVIOUS");
  CHECK(r.find("better understanding.\n\nPREVIOUS") != std::string::npos);
  CHECK(r.find(kOutputOnlyInstruction) != std::string::npos);
  CHECK(r.substr(r.size() - 4) == "BODY");
}

TEST_CASE("strip_reasoning") {
  const auto tokens = default_suppression_tokens();
  CHECK(strip_reasoning("<thinking>steps</thinking>Answer.", tokens).text == "Answer.");
  CHECK(strip_reasoning("Plain output.", tokens).text == "Plain output.");
  CHECK(strip_reasoning("Sure, here is the paraphrase:\nBody.", tokens).text == "Body.");
  CHECK(strip_reasoning("Certainly! Here's a rewritten version of the paragraph.\n\nBody.",
                        tokens).text == "Body.");
  CHECK(strip_reasoning("Paraphrased paragraph:\nBody text.", tokens).text == "Body text.");
  // A line that merely starts with "Here" but is content stays.
  CHECK(strip_reasoning("Here the authors compare methods.", tokens).text ==
        "Here the authors compare methods.");
  const auto open = strip_reasoning("Kept. <think>never closed", tokens);
  CHECK(open.text == "Kept.");
  CHECK(open.warnings.size() == 1);
  CHECK(strip_reasoning("<think>a</think>One <think>b</think>two", tokens).text == "One two");
}

TEST_CASE("limit_output") {
  std::string looped = "intro words here";
  for (int i = 0; i < 4; ++i) looped += " a b c d e f g h i j k l m n o p q r s t";
  const auto cut = limit_output(looped, 20, 0);
  CHECK(cut.text == "intro words here a b c d e f g h i j k l m n o p q r s t");
  CHECK(cut.warnings.size() == 1);
  CHECK(limit_output("short text", 20, 0).warnings.empty());
  const auto capped = limit_output("\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9", 0, 3);
  CHECK(capped.text == "\xC3\xA9\xC3\xA9\xC3\xA9");
}

TEST_CASE("offline paraphraser preconditions") {
  OfflineParaphraser p;
  CHECK_THROWS_AS(p.paraphrase("", PromptType::kSimple), ConfigError);
  CHECK_THROWS_AS(p.paraphrase("  \n", PromptType::kSimple), ConfigError);
  CHECK_THROWS_AS(p.paraphrase("Text.", PromptType::kComplex), ConfigError);
  CHECK_THROWS_AS(p.paraphrase("Text.", PromptType::kSimple, "ctx"), ConfigError);
  CHECK_NOTHROW(p.paraphrase("Text.", PromptType::kComplex, ""));
}

TEST_CASE("offline paraphraser golden output and overlap gradient") {
  const std::string text = fixture();
  OfflineParaphraser p(0);
  const std::string simple = p.paraphrase(text, PromptType::kSimple);
  const std::string golden =
      read_file(std::filesystem::path(PLAGKIT_TEST_DATA) / "paraphrase_simple_golden.txt");
  CHECK(simple == golden);
  const std::string def = p.paraphrase(text, PromptType::kDefault);
  const std::string complex =
      p.paraphrase(text, PromptType::kComplex, std::string_view("Earlier paragraph text."));
  CHECK(overlap(text, simple) >= 0.6);
  CHECK(overlap(text, simple) > overlap(text, def));
  CHECK(overlap(text, def) > overlap(text, complex));
  for (const auto& out : {simple, def, complex}) {
    CHECK_FALSE(out.empty());
    CHECK(out != text);
  }
  // Pure function of its inputs.
  CHECK(p.paraphrase(text, PromptType::kDefault) == def);
  CHECK(OfflineParaphraser(1).paraphrase(text, PromptType::kDefault) != def);
}

TEST_CASE("offline paraphraser keeps paragraph breaks") {
  const std::string text = fixture() + "\n\n" + fixture() + "\n\n\n" + fixture();
  OfflineParaphraser p(3);
  for (auto type : kAllPrompts) {
    const std::optional<std::string_view> ctx =
        type == PromptType::kComplex ? std::optional<std::string_view>("") : std::nullopt;
    const std::string out = p.paraphrase(text, type, ctx);
    CHECK(std::count(out.begin(), out.end(), '\n') == 5);
    CHECK(out.find("\n\n\n") != std::string::npos);
  }
}

TEST_CASE("offline overlap ordering over many paragraphs") {
  const std::string text = fixture();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    OfflineParaphraser q(seed);
    const std::string s = q.paraphrase(text, PromptType::kSimple);
    const std::string d = q.paraphrase(text, PromptType::kDefault);
    const std::string c = q.paraphrase(text, PromptType::kComplex, std::string_view("context"));
    CHECK(overlap(text, s) > overlap(text, d));
    CHECK(overlap(text, d) > overlap(text, c));
  }
}

TEST_CASE("verbatim paraphraser") {
  VerbatimParaphraser v;
  CHECK(v.paraphrase("Same text.", PromptType::kDefault) == "Same text.");
}

TEST_CASE("provider config validation") {
  ProviderConfig c;
  c.kind = ProviderKind::kHttp;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.model = "m";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.endpoint = "https://example.org/v1";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.endpoint = "http://127.0.0.1:1/v1";
  CHECK_NOTHROW(c.validate());

  const auto j = nlohmann::json::parse(
      R"({"kind": "http", "endpoint": "http://localhost:9/x", "model": "m",
          "retries": 1, "suppression": [["<r>", "</r>"]]})");
  const ProviderConfig parsed = provider_config_from_json(j);
  CHECK(parsed.retries == 1);
  REQUIRE(parsed.suppression.size() == 1);
  CHECK(parsed.suppression[0].open == "<r>");
  CHECK_THROWS_AS(provider_config_from_json(nlohmann::json{{"kind", "ftp"}}), ConfigError);
  CHECK_THROWS_AS(provider_config_from_json(nlohmann::json{{"kind", "replay"}, {"model", "m"}}),
                  ConfigError);
}

TEST_CASE("http provider against a local endpoint") {
  std::string seen_body;
  std::string seen_auth;
  FakeEndpoint server([&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    seen_auth = req.get_header_value("Authorization");
    res.set_content(reply("<thinking>internal</thinking>Sure, here is the paraphrase:\n"
                          "A reworded paragraph."),
                    "application/json");
  });
  TempDir dir("http");
  ::setenv("PLAGKIT_TEST_TOKEN", "secret", 1);
  ProviderConfig c = http_config(server.url());
  c.auth_env = "PLAGKIT_TEST_TOKEN";
  c.replay_log = dir / "replay.jsonl";
  auto p = make_paraphraser(c);
  CHECK(p->name() == "http");
  CHECK(p->paraphrase("Original paragraph.", PromptType::kSimple) == "A reworded paragraph.");
  CHECK(seen_auth == "Bearer secret");
  const auto body = nlohmann::json::parse(seen_body);
  CHECK(body["model"] == "test-model");
  CHECK(body["messages"][0]["content"] ==
        render_prompt(PromptType::kSimple, "Original paragraph.", std::nullopt));

  // The recorded exchange answers the same request offline.
  ProviderConfig r = c;
  r.kind = ProviderKind::kReplay;
  auto replay = make_paraphraser(r);
  CHECK(replay->paraphrase("Original paragraph.", PromptType::kSimple) ==
        "A reworded paragraph.");
  CHECK_THROWS_AS(replay->paraphrase("Different.", PromptType::kSimple), ProviderError);
}

TEST_CASE("http provider retries server errors") {
  std::atomic<int> n{0};
  FakeEndpoint server([&](const httplib::Request&, httplib::Response& res) {
    if (n++ < 2) {
      res.status = 503;
      return;
    }
    res.set_content(reply("Recovered."), "application/json");
  });
  auto p = make_paraphraser(http_config(server.url()));
  CHECK(p->paraphrase("Text.", PromptType::kDefault) == "Recovered.");
  CHECK(server.calls() == 3);
}

TEST_CASE("http provider failures") {
  {
    FakeEndpoint server([](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    auto p = make_paraphraser(http_config(server.url()));
    CHECK_THROWS_AS(p->paraphrase("Text.", PromptType::kSimple), ProviderError);
    CHECK(server.calls() == 3);
  }
  {
    FakeEndpoint server([](const httplib::Request&, httplib::Response& res) {
      res.set_content(reply("<thinking>only reasoning</thinking>"), "application/json");
    });
    auto p = make_paraphraser(http_config(server.url()));
    CHECK_THROWS_AS(p->paraphrase("Text.", PromptType::kSimple), ProviderError);
  }
  {
    FakeEndpoint server([](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"unexpected\": true}", "application/json");
    });
    auto p = make_paraphraser(http_config(server.url()));
    CHECK_THROWS_AS(p->paraphrase("Text.", PromptType::kSimple), ProviderError);
  }
  // Nothing listening on the port.
  int closed_port = 0;
  {
    httplib::Server s;
    closed_port = s.bind_to_any_port("127.0.0.1");
  }
  ProviderConfig c = http_config("http://127.0.0.1:" + std::to_string(closed_port) + "/v1/chat");
  c.retries = 1;
  c.timeout_seconds = 1;
  CHECK_THROWS_AS(make_paraphraser(c)->paraphrase("Text.", PromptType::kSimple), ProviderError);
}
