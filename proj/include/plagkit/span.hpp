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

// Character spans and reuse cases.
//
// Offsets and lengths count Unicode scalar values from the start of a
// document. Spans are half-open: [start, start + length).

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plagkit {

class Span {
 public:
  // Throws std::invalid_argument when length == 0.
  Span(std::size_t start, std::size_t length);

  // Span covering [begin, end); requires end > begin.
  static Span from_bounds(std::size_t begin, std::size_t end);

  std::size_t start() const { return start_; }
  std::size_t length() const { return length_; }
  std::size_t end() const { return start_ + length_; }

  bool contains(std::size_t offset) const {
    return offset >= start_ && offset < end();
  }

  auto operator<=>(const Span&) const = default;

 private:
  std::size_t start_;
  std::size_t length_;
};

// Number of characters shared by the two half-open intervals.
std::size_t overlap_length(const Span& a, const Span& b);

// Characters strictly between the two spans; 0 when they touch or overlap.
std::size_t gap_between(const Span& a, const Span& b);

// Sorted union of spans, fusing any two whose gap is <= max_gap.
std::vector<Span> merge_spans(std::span<const Span> spans,
                              std::size_t max_gap);

// Size of the union of the spans.
std::size_t covered_length(std::span<const Span> spans);

// Opaque document name (the file name inside a corpus directory).
class DocumentRef {
 public:
  DocumentRef() = default;
  // Throws std::invalid_argument on an empty id.
  explicit DocumentRef(std::string id);

  const std::string& id() const { return id_; }
  bool empty() const { return id_.empty(); }

  auto operator<=>(const DocumentRef&) const = default;

 private:
  std::string id_;
};

enum class CaseKind { kPlagiarism, kAltered, kDetected };
enum class GeneratorModel { kLlama, kDeepseek, kMistral };
enum class PromptType { kSimple, kDefault, kComplex };
enum class Severity { kLow, kMedium, kHigh };

std::string_view to_string(CaseKind v);
std::string_view to_string(GeneratorModel v);
std::string_view to_string(PromptType v);
std::string_view to_string(Severity v);

// Parsers throw ParseError on unknown names.
CaseKind parse_case_kind(std::string_view s);
GeneratorModel parse_model(std::string_view s);
PromptType parse_prompt(std::string_view s);
Severity parse_severity(std::string_view s);

inline constexpr GeneratorModel kAllModels[] = {
    GeneratorModel::kLlama, GeneratorModel::kDeepseek,
    GeneratorModel::kMistral};
inline constexpr PromptType kAllPrompts[] = {
    PromptType::kSimple, PromptType::kDefault, PromptType::kComplex};
inline constexpr Severity kAllSeverities[] = {
    Severity::kLow, Severity::kMedium, Severity::kHigh};

struct CaseMeta {
  std::optional<GeneratorModel> model;
  std::optional<PromptType> prompt;
  std::optional<Severity> severity;

  bool empty() const { return !model && !prompt && !severity; }
  auto operator<=>(const CaseMeta&) const = default;
};

struct CaseEnd {
  DocumentRef document;
  Span span;

  auto operator<=>(const CaseEnd&) const = default;
};

// One truth or detected alignment. Altered cases have no source end.
struct ReuseCase {
  CaseKind kind = CaseKind::kDetected;
  CaseEnd suspicious;
  std::optional<CaseEnd> source;
  CaseMeta meta;

  static ReuseCase plagiarism(CaseEnd susp, CaseEnd src, CaseMeta meta = {});
  static ReuseCase detected(CaseEnd susp, CaseEnd src);
  static ReuseCase altered(CaseEnd susp, CaseMeta meta = {});

  // Throws std::invalid_argument when the kind/source invariants are broken.
  void validate() const;

  auto operator<=>(const ReuseCase&) const = default;
};

// True iff both ends refer to the same documents and overlap by at least
// one character on each side. Cases without a source never match.
bool cases_match(const ReuseCase& truth, const ReuseCase& det);

}  // namespace plagkit
