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

#include <fstream>
#include <set>

#include "plagkit/error.hpp"
#include "plagkit/hashing.hpp"
#include "plagkit/pan_format.hpp"
#include "plagkit/span.hpp"
#include "plagkit/utf8.hpp"
#include "../support/temp_dir.hpp"

using namespace plagkit;
using plagkit::testing::TempDir;

namespace {

std::set<std::size_t> chars_of(const Span& s) {
  std::set<std::size_t> out;
  for (std::size_t i = s.start(); i < s.end(); ++i) out.insert(i);
  return out;
}

ReuseCase pcase(std::size_t so, std::size_t sl, std::size_t ro, std::size_t rl,
                const char* susp = "s.txt", const char* src = "r.txt") {
  return ReuseCase::plagiarism({DocumentRef(susp), Span(so, sl)},
                               {DocumentRef(src), Span(ro, rl)});
}

void write(const std::filesystem::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

}  // namespace

TEST_CASE("overlap_length") {
  CHECK(overlap_length(Span(0, 10), Span(0, 10)) == 10);
  CHECK(overlap_length(Span(0, 10), Span(10, 5)) == 0);
  CHECK(overlap_length(Span(0, 10), Span(7, 8)) == 3);
  CHECK(overlap_length(Span(7, 8), Span(0, 10)) == 3);
}

TEST_CASE("overlap_length agrees with character enumeration") {
  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    Span a(rng.uniform_int(0, 60), rng.uniform_int(1, 30));
    Span b(rng.uniform_int(0, 60), rng.uniform_int(1, 30));
    std::size_t n = 0;
    for (auto x : chars_of(a)) n += chars_of(b).count(x);
    CHECK(overlap_length(a, b) == n);
    CHECK(overlap_length(a, b) == overlap_length(b, a));
  }
}

TEST_CASE("zero-length spans and empty ids are rejected") {
  CHECK_THROWS_AS(Span(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Span::from_bounds(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(DocumentRef(""), std::invalid_argument);
}

TEST_CASE("gap_between") {
  CHECK(gap_between(Span(0, 10), Span(12, 5)) == 2);
  CHECK(gap_between(Span(12, 5), Span(0, 10)) == 2);
  CHECK(gap_between(Span(0, 10), Span(10, 5)) == 0);
  CHECK(gap_between(Span(0, 10), Span(5, 10)) == 0);
}

TEST_CASE("merge_spans") {
  std::vector<Span> a{Span(0, 10), Span(12, 5)};
  CHECK(merge_spans(a, 2) == std::vector<Span>{Span(0, 17)});
  std::vector<Span> b{Span(0, 10), Span(50, 5)};
  CHECK(merge_spans(b, 2) == b);
  CHECK(merge_spans(std::vector<Span>{}, 2).empty());
  std::vector<Span> c{Span(30, 5), Span(0, 10), Span(5, 10)};
  CHECK(merge_spans(c, 0) == std::vector<Span>{Span(0, 15), Span(30, 5)});
}

TEST_CASE("covered_length counts the union") {
  std::vector<Span> s{Span(0, 10), Span(5, 10), Span(40, 2)};
  CHECK(covered_length(s) == 17);
  CHECK(covered_length(std::vector<Span>{}) == 0);
}

TEST_CASE("cases_match") {
  const ReuseCase t = pcase(100, 50, 200, 50);
  CHECK(cases_match(t, t));
  CHECK_FALSE(cases_match(t, pcase(100, 50, 400, 50)));
  CHECK(cases_match(t, pcase(149, 10, 249, 10)));
  CHECK_FALSE(cases_match(t, pcase(150, 10, 249, 10)));
  CHECK_FALSE(cases_match(t, pcase(100, 50, 200, 50, "other.txt")));
  CHECK_FALSE(cases_match(t, pcase(100, 50, 200, 50, "s.txt", "other.txt")));
  const auto alt = ReuseCase::altered({DocumentRef("s.txt"), Span(100, 50)});
  CHECK_FALSE(cases_match(t, alt));
}

TEST_CASE("enum names round-trip") {
  for (auto m : kAllModels) CHECK(parse_model(to_string(m)) == m);
  for (auto p : kAllPrompts) CHECK(parse_prompt(to_string(p)) == p);
  for (auto s : kAllSeverities) CHECK(parse_severity(to_string(s)) == s);
  CHECK(parse_case_kind("detected-plagiarism") == CaseKind::kDetected);
  CHECK_THROWS_AS(parse_model("gpt"), ParseError);
}

TEST_CASE("utf8 decoding counts scalar values") {
  CHECK(utf8::count_chars("abc\n") == 4);
  CHECK(utf8::count_chars("\xC3\xA9") == 1);
  CHECK(utf8::count_chars("\xF0\x9F\x98\x80x") == 2);
  CHECK_THROWS_AS(utf8::decode("\xC3"), ParseError);
  CHECK_THROWS_AS(utf8::decode("\xC0\xAF"), ParseError);
  const std::u32string s = U"Zoë \U0001F600";
  CHECK(utf8::decode(utf8::encode(s)) == s);
}

TEST_CASE("load_document") {
  TempDir dir("doc");
  write(dir / "a.txt", "abc\n");
  write(dir / "empty.txt", "");
  write(dir / "e.txt", "\xC3\xA9");
  CHECK(load_document(dir / "a.txt").length() == 4);
  CHECK(load_document(dir / "empty.txt").length() == 0);
  const Document e = load_document(dir / "e.txt");
  CHECK(e.length() == 1);
  CHECK(e.slice(Span(0, 1)) == "\xC3\xA9");
  CHECK_THROWS_AS(e.slice(Span(0, 2)), std::out_of_range);
  CHECK_THROWS_AS(load_document(dir / "missing.txt"), IoError);
}

TEST_CASE("parse_pairs") {
  auto one = parse_pairs_text("suspicious-document001.txt source-document009.txt\n");
  REQUIRE(one.pairs.size() == 1);
  CHECK(one.pairs[0].suspicious.id() == "suspicious-document001.txt");
  CHECK(one.pairs[0].source.id() == "source-document009.txt");
  CHECK(parse_pairs_text("").pairs.empty());
  try {
    parse_pairs_text("a b\nx y z\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  auto dup = parse_pairs_text("a b\na b\n");
  CHECK(dup.pairs.size() == 2);
  CHECK(dup.warnings.size() == 1);
  CHECK(parse_pairs_text(format_pairs(one.pairs)).pairs == one.pairs);
}

TEST_CASE("parse_annotations field mapping") {
  const auto doc = parse_annotations_text(
      "<document reference=\"s.txt\"><feature name=\"plagiarism\" this_offset=\"100\" "
      "this_length=\"250\" source_reference=\"r.txt\" source_offset=\"40\" "
      "source_length=\"260\"/><feature name=\"altered\" this_offset=\"5\" "
      "this_length=\"7\"/></document>");
  REQUIRE(doc.cases.size() == 2);
  CHECK(doc.cases[0] == pcase(100, 250, 40, 260));
  CHECK(doc.cases[1].kind == CaseKind::kAltered);
  CHECK_FALSE(doc.cases[1].source);
  CHECK(doc.cases[1].suspicious.span == Span(5, 7));
}

TEST_CASE("parse_annotations errors") {
  CHECK_THROWS_AS(parse_annotations_text("<document reference=\"s\"><feature"), ParseError);
  CHECK_THROWS_AS(parse_annotations_text("<document reference=\"s\"><feature "
                                         "name=\"plagiarism\" this_offset=\"1\" "
                                         "this_length=\"2\"/></document>"),
                  ParseError);
  CHECK_THROWS_AS(parse_annotations_text("<document reference=\"s\"><feature "
                                         "name=\"altered\" this_offset=\"1\" "
                                         "this_length=\"0\"/></document>"),
                  ParseError);
  LengthMap lengths{{"s", 10}};
  CHECK_THROWS_AS(parse_annotations_text("<document reference=\"s\"><feature "
                                         "name=\"altered\" this_offset=\"5\" "
                                         "this_length=\"6\"/></document>",
                                         &lengths),
                  ParseError);
}

TEST_CASE("three-case annotation file round-trips to the canonical form") {
  const std::filesystem::path data = PLAGKIT_TEST_DATA;
  const std::string canonical = read_file(data / "three_cases_canonical.xml");
  const auto messy = parse_annotations(data / "three_cases_input.xml");
  CHECK(messy.cases.size() == 3);
  CHECK(format_annotations(messy) == canonical);
  CHECK(format_annotations(parse_annotations_text(canonical)) == canonical);
}

TEST_CASE("cases directory and corpus loading") {
  TempDir dir("corpus");
  write_file_atomic(dir / "susp" / "s1.txt", "0123456789abcdefghij");
  write_file_atomic(dir / "susp" / "s2.txt", "short");
  write_file_atomic(dir / "src" / "r1.txt", "abcdefghij0123456789");
  write_file_atomic(dir / "pairs", "s1.txt r1.txt\ns2.txt r1.txt\n");
  const std::vector<ReuseCase> truth{pcase(0, 10, 10, 10, "s1.txt", "r1.txt")};
  write_cases_dir(dir / "truth", truth,
                  {DocumentRef("s1.txt"), DocumentRef("s2.txt")});
  CHECK(std::filesystem::exists(dir / "truth" / "s2.xml"));

  const Corpus c = Corpus::load(dir.path());
  CHECK(c.pairs().size() == 2);
  CHECK(c.has_truth());
  CHECK(c.truth() == truth);
  CHECK(c.document(DocumentRef("s1.txt")).length() == 20);
  CHECK(c.lengths().at("s2.txt") == 5);
  CHECK(c.suspicious_documents().size() == 2);

  write_file_atomic(dir / "bad" / "s1.xml",
                    "<document reference=\"s1.txt\"><feature name=\"plagiarism\" "
                    "this_offset=\"15\" this_length=\"10\" source_reference=\"r1.txt\" "
                    "source_offset=\"0\" source_length=\"5\"/></document>");
  const LengthMap lengths = c.lengths();
  CHECK_THROWS_AS(load_cases_dir(dir / "bad", &lengths), ParseError);
}
