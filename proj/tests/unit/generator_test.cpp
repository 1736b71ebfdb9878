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

#include <map>
#include <set>

#include "plagkit/corpus_generator.hpp"
#include "plagkit/error.hpp"
#include "../support/temp_dir.hpp"

using namespace plagkit;
using plagkit::testing::TempDir;

namespace {

std::string paragraphs(std::size_t n, const std::string& tag) {
  static constexpr const char* kWords[] = {"river", "granite", "lantern", "orchard",
                                           "harbor", "meadow", "copper",  "signal"};
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += "\n\n";
    out += tag + " paragraph " + std::to_string(i) + " mentions " + kWords[i % 8] +
           " and " + kWords[(i * 3 + 1) % 8] + ".";
  }
  return out;
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[std::filesystem::relative(e.path(), root).string()] = read_file(e.path());
    }
  }
  return out;
}

std::vector<PairPlan> plans_for(const SourcePool& pool, std::size_t count, std::uint64_t seed) {
  const auto pairing = pair_documents(pool);
  std::vector<PairPlan> plans;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [s, p] = pairing[i % pairing.size()];
    auto o = plan_pair(pool, s, p, seed, i);
    if (o.plan) plans.push_back(*o.plan);
  }
  return plans;
}

}  // namespace

TEST_CASE("pool rejects short documents") {
  SourcePool pool;
  std::string reason;
  CHECK_FALSE(pool.add("a", paragraphs(2, "a"), {}, {}, nullptr, &reason));
  CHECK_FALSE(reason.empty());
  CHECK(pool.add("b", paragraphs(3, "b")));
  CHECK(pool.size() == 1);
  CHECK(pool[0].paragraphs.size() == 3);
  CHECK(pool[0].paragraph_text(1) == "b paragraph 1 mentions granite and harbor.");
}

TEST_CASE("pairing") {
  SourcePool two;
  two.add("a", paragraphs(3, "a"));
  two.add("b", paragraphs(4, "b"));
  CHECK(pair_documents(two) ==
        std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});

  SourcePool one;
  one.add("a", paragraphs(3, "a"));
  CHECK_THROWS_AS(pair_documents(one), ConfigError);

  // A verbatim duplicate is the nearest neighbour.
  SourcePool dup;
  dup.add("x", "Quantum annealing schedules.\n\nSpin glass ground states.\n\nTunnelling rates.");
  dup.add("y", "Medieval trade routes.\n\nSilk and spice caravans.\n\nCoastal ports.");
  dup.add("z", "Quantum annealing schedules.\n\nSpin glass ground states.\n\nTunnelling rates.");
  CHECK(pair_documents(dup)[0].second == 2);
  CHECK(pair_documents(dup)[2].second == 0);
}

TEST_CASE("pairing uses store vectors") {
  // Every paragraph of a document carries the same vector, so the document
  // vector is that vector. Nearest neighbours by hand:
  //   d0 -> d1 (0.8), d1 -> d0 (0.8), d2 -> d1 (0.6), d3 -> d4 (0.6), d4 -> d3.
  const std::vector<std::vector<double>> vs{
      {1, 0, 0, 0}, {0.8, 0.6, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0.6, 0.8}};
  VectorStore store;
  SourcePool pool;
  for (std::size_t d = 0; d < vs.size(); ++d) {
    const std::string id = "d" + std::to_string(d);
    for (std::size_t k = 0; k < 3; ++k) store.insert(id, k, vs[d]);
    REQUIRE(pool.add(id, paragraphs(3, id), {}, {}, &store));
  }
  CHECK(pool[1].vector[0] == doctest::Approx(0.8));
  CHECK(pair_documents(pool) == std::vector<std::pair<std::size_t, std::size_t>>{
                                    {0, 1}, {1, 0}, {2, 1}, {3, 4}, {4, 3}});

  // Equal similarity goes to the smaller id, not the smaller index.
  VectorStore tie_store;
  SourcePool tie;
  for (const char* id : {"m", "zeta", "alpha"}) {
    for (std::size_t k = 0; k < 3; ++k) tie_store.insert(id, k, {1, 0});
    tie.add(id, paragraphs(3, id), {}, {}, &tie_store);
  }
  CHECK(pair_documents(tie)[0].second == 2);
}

TEST_CASE("category and prompt distributions") {
  Rng rng(2024);
  constexpr int kDraws = 100000;
  std::map<PairCategory, int> cat;
  std::map<Severity, int> sev;
  int plag = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto d = sample_category(rng);
    ++cat[d.category];
    const bool is_plag = d.category == PairCategory::kPlagiarized ||
                         d.category == PairCategory::kPlagiarizedPlusAltered;
    CHECK(is_plag == d.severity.has_value());
    CHECK(d.altered_addon == (d.category == PairCategory::kPlagiarizedPlusAltered));
    if (is_plag) {
      ++plag;
      ++sev[*d.severity];
    }
  }
  auto frac = [&](int n) { return static_cast<double>(n) / kDraws; };
  CHECK(std::abs(frac(cat[PairCategory::kOriginal]) - 0.05) < 0.01);
  CHECK(std::abs(frac(cat[PairCategory::kAltered]) - 0.20) < 0.01);
  CHECK(std::abs(frac(plag) - 0.75) < 0.01);
  CHECK(std::abs(frac(cat[PairCategory::kPlagiarizedPlusAltered]) - 0.375) < 0.01);
  const double p = plag;
  CHECK(std::abs(sev[Severity::kLow] / p - 0.30) < 0.02);
  CHECK(std::abs(sev[Severity::kMedium] / p - 0.40) < 0.02);
  CHECK(std::abs(sev[Severity::kHigh] / p - 0.30) < 0.02);

  std::map<PromptType, int> prompts;
  for (int i = 0; i < kDraws; ++i) ++prompts[sample_prompt(rng)];
  CHECK(std::abs(frac(prompts[PromptType::kSimple]) - 0.60) < 0.01);
  CHECK(std::abs(frac(prompts[PromptType::kDefault]) - 0.30) < 0.01);
  CHECK(std::abs(frac(prompts[PromptType::kComplex]) - 0.10) < 0.01);
}

TEST_CASE("alignment score") {
  CHECK(alignment_score(1.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(alignment_score(1.0, 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(alignment_score(0.8, 0.5, 1.0) == doctest::Approx(0.70));
  CHECK(alignment_score(-0.3, 0.0, 2.0) == doctest::Approx(0.1));
}

TEST_CASE("severity count ranges") {
  using R = std::pair<std::size_t, std::size_t>;
  CHECK(severity_count_range(Severity::kHigh, 10) == R{7, 10});
  CHECK(severity_count_range(Severity::kMedium, 10) == R{4, 6});
  CHECK(severity_count_range(Severity::kLow, 10) == R{2, 4});
  CHECK(severity_count_range(Severity::kLow, 5) == R{1, 2});
  CHECK(severity_count_range(Severity::kHigh, 3) == R{3, 3});
  CHECK_FALSE(severity_count_range(Severity::kLow, 2));
  CHECK_FALSE(severity_count_range(Severity::kMedium, 1));
}

TEST_CASE("plan_replacements") {
  SourcePool pool;
  pool.add("src", paragraphs(10, "source"));
  std::string base = paragraphs(10, "base");
  // Paragraph 4 cites the source.
  const std::string p4 = "base paragraph 4 mentions harbor and meadow.";
  base.replace(base.find(p4), p4.size(), "As shown in [src], signals propagate.");
  pool.add("base", base);
  const auto citing = citing_paragraphs(pool[1], pool[0], {});
  CHECK(citing == std::vector<std::size_t>{4});

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto o = plan_replacements(pool[0], pool[1], Severity::kLow, rng);
    REQUIRE(o.plan);
    const auto& r = o.plan->replacements;
    CHECK(r.size() >= 2);
    CHECK(r.size() <= 4);
    CHECK(std::any_of(r.begin(), r.end(), [](const Replacement& x) { return x.target == 4; }));
    std::set<std::size_t> sources;
    for (const auto& x : r) sources.insert(x.source);
    CHECK(sources.size() == r.size());
    CHECK(std::is_sorted(r.begin(), r.end(), [](const auto& a, const auto& b) {
      return a.target < b.target;
    }));
  }
  Rng rng(1);
  CHECK_THROWS_AS(plan_replacements(pool[0], pool[0], Severity::kLow, rng), ConfigError);

  // A three-paragraph source cannot feed seven replacements.
  SourcePool small;
  small.add("s", paragraphs(3, "s"));
  small.add("p", paragraphs(10, "p"));
  const auto o = plan_replacements(small[0], small[1], Severity::kHigh, rng);
  CHECK_FALSE(o.plan);
  CHECK_FALSE(o.discard_reason.empty());
}

TEST_CASE("alignment is one-to-one and recovers copies") {
  SourcePool pool;
  pool.add("s",
           "Glaciers carve valleys over millennia.\n\n"
           "Compilers translate source code into machine instructions.\n\n"
           "Bees pollinate flowering plants.\n\n"
           "Tides follow the phases of the moon.");
  pool.add("p",
           "Tides follow the phases of the moon.\n\n"
           "Bees pollinate flowering plants.\n\n"
           "Glaciers carve valleys over millennia.\n\n"
           "Compilers translate source code into machine instructions.\n\n"
           "An unrelated closing remark.");
  const auto all = align_paragraphs(pool[1], pool[0], {0, 1, 2, 3, 4});
  REQUIRE(all.size() == 4);
  std::map<std::size_t, std::size_t> m;
  for (const auto& r : all) m[r.target] = r.source;
  CHECK(m == std::map<std::size_t, std::size_t>{{0, 3}, {1, 2}, {2, 0}, {3, 1}});
  // Identical text without section titles.
  CHECK(all[0].score == doctest::Approx(0.9));
}

TEST_CASE("realize_pair") {
  const SourcePool pool = SourcePool::synthetic(40, 5);
  OfflineParaphraser para(0);
  const auto pairing = pair_documents(pool);
  PairPlan original;
  original.source = pairing[0].first;
  original.base = pairing[0].second;
  const auto same = realize_pair(pool, original, para, DocumentRef("s.txt"), DocumentRef("r.txt"));
  CHECK(same.suspicious_text == pool[original.base].text);
  CHECK(same.truth.cases.empty());

  int checked = 0;
  for (std::size_t i = 0; i < 60; ++i) {
    const auto [s, p] = pairing[i % pairing.size()];
    const auto o = plan_pair(pool, s, p, 9, i);
    REQUIRE(o.plan);
    const PairPlan& plan = *o.plan;
    const auto r = realize_pair(pool, plan, para, DocumentRef("s.txt"), DocumentRef("r.txt"));
    const Document susp(DocumentRef("s.txt"), r.suspicious_text);
    CHECK(r.truth.cases.size() == plan.replacements.size() + plan.altered.size());
    std::size_t ri = 0;
    for (const auto& c : r.truth.cases) {
      CHECK(c.meta.model == plan.model);
      if (c.kind != CaseKind::kPlagiarism) continue;
      const Replacement& rep = plan.replacements[ri++];
      const std::string input = pool[s].paragraph_text(rep.source);
      std::optional<std::string> ctx;
      if (rep.prompt == PromptType::kComplex) {
        ctx = rep.target == 0 ? std::string() : pool[p].paragraph_text(rep.target - 1);
      }
      const std::string expected =
          para.paraphrase(input, rep.prompt,
                          ctx ? std::optional<std::string_view>(*ctx) : std::nullopt);
      CHECK(susp.slice(c.suspicious.span) == expected);
      CHECK(c.source->span == pool[s].paragraphs[rep.source]);
      CHECK(c.meta.prompt == rep.prompt);
      CHECK(c.meta.severity == plan.severity);
      ++checked;
    }
    // Untouched paragraphs keep their text.
    const auto out_paras = chunk_spans(susp.chars(), ChunkMode::kParagraph);
    CHECK(out_paras.size() == pool[p].paragraphs.size());
  }
  CHECK(checked > 20);
}

TEST_CASE("plan_pair is deterministic and consistent") {
  const SourcePool pool = SourcePool::synthetic(50, 3);
  const auto a = plans_for(pool, 300, 17);
  const auto b = plans_for(pool, 300, 17);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].replacements == b[i].replacements);
    CHECK(a[i].altered == b[i].altered);
    CHECK(a[i].category == b[i].category);
    CHECK_NOTHROW(a[i].validate());
    if (a[i].category == PairCategory::kAltered) {
      const std::size_t n = pool[a[i].base].paragraphs.size();
      CHECK(a[i].altered.size() >= 1);
      CHECK(static_cast<double>(a[i].altered.size()) <= 0.3 * static_cast<double>(n) + 1e-9);
    }
  }
  PairPlan bad;
  bad.category = PairCategory::kPlagiarized;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("splits are stratified and near 80/10/10") {
  const SourcePool pool = SourcePool::synthetic(200, 8);
  const auto plans = plans_for(pool, 1000, 4);
  const auto splits = assign_splits(plans, 4);
  REQUIRE(splits.size() == plans.size());
  std::map<Split, double> n;
  for (auto s : splits) n[s] += 1.0;
  const double total = static_cast<double>(plans.size());
  CHECK(std::abs(n[Split::kValidation] / total - 0.10) <= 0.03);
  CHECK(std::abs(n[Split::kTest] / total - 0.10) <= 0.03);
  CHECK(std::abs(n[Split::kTrain] / total - 0.80) <= 0.03);
  CHECK(assign_splits(plans, 4) == splits);
}

TEST_CASE("generate_corpus writes a deterministic tree") {
  const SourcePool pool = SourcePool::synthetic(30, 2);
  OfflineParaphraser para(2);
  GenerateOptions opt;
  opt.pairs = 40;
  opt.seed = 2;
  opt.jobs = 4;
  TempDir a("gen-a");
  TempDir b("gen-b");
  const auto sa = generate_corpus(pool, para, opt, a.path());
  opt.jobs = 1;
  generate_corpus(pool, para, opt, b.path());
  CHECK(read_tree(a.path()) == read_tree(b.path()));
  CHECK(sa.emitted + sa.discarded.size() + sa.failed.size() == 40);
  CHECK(std::filesystem::exists(a / "manifest.json"));
  CHECK(std::filesystem::exists(a / "test" / "truth"));
  const Corpus train = Corpus::load(a / "train");
  CHECK(train.has_truth());
  CHECK_THROWS_AS(generate_corpus(pool, para, opt, a.path()), ConfigError);

  TempDir blind("gen-blind");
  opt.blind = true;
  generate_corpus(pool, para, opt, blind.path());
  CHECK_FALSE(std::filesystem::exists(blind / "test" / "truth"));
  CHECK(std::filesystem::exists(blind / "train" / "truth"));
  CHECK(read_file(blind / "test" / "pairs") == read_file(a / "test" / "pairs"));
}

TEST_CASE("names") {
  CHECK(suspicious_name(7) == "suspicious-document00007.txt");
  CHECK(source_name(12) == "source-document00012.txt");
  CHECK(parse_pair_category("plagiarized_plus_altered") ==
        PairCategory::kPlagiarizedPlusAltered);
}
