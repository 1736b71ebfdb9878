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

#include "plagkit/span.hpp"

#include <algorithm>
#include <stdexcept>

#include "plagkit/error.hpp"

namespace plagkit {

Span::Span(std::size_t start, std::size_t length)
    : start_(start), length_(length) {
  if (length == 0) throw std::invalid_argument("span length must be >= 1");
}

Span Span::from_bounds(std::size_t begin, std::size_t end) {
  if (end <= begin) throw std::invalid_argument("span end must exceed begin");
  return Span(begin, end - begin);
}

std::size_t overlap_length(const Span& a, const Span& b) {
  const std::size_t lo = std::max(a.start(), b.start());
  const std::size_t hi = std::min(a.end(), b.end());
  return hi > lo ? hi - lo : 0;
}

std::size_t gap_between(const Span& a, const Span& b) {
  if (a.end() <= b.start()) return b.start() - a.end();
  if (b.end() <= a.start()) return a.start() - b.end();
  return 0;
}

std::vector<Span> merge_spans(std::span<const Span> spans,
                              std::size_t max_gap) {
  std::vector<Span> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Span> out;
  for (const Span& s : sorted) {
    if (!out.empty() && s.start() <= out.back().end() + max_gap) {
      const std::size_t end = std::max(out.back().end(), s.end());
      out.back() = Span::from_bounds(out.back().start(), end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::size_t covered_length(std::span<const Span> spans) {
  std::size_t total = 0;
  for (const Span& s : merge_spans(spans, 0)) total += s.length();
  return total;
}

DocumentRef::DocumentRef(std::string id) : id_(std::move(id)) {
  if (id_.empty()) throw std::invalid_argument("empty document id");
}

std::string_view to_string(CaseKind v) {
  switch (v) {
    case CaseKind::kPlagiarism:
      return "plagiarism";
    case CaseKind::kAltered:
      return "altered";
    case CaseKind::kDetected:
      return "detected-plagiarism";
  }
  return "";
}

std::string_view to_string(GeneratorModel v) {
  switch (v) {
    case GeneratorModel::kLlama:
      return "llama";
    case GeneratorModel::kDeepseek:
      return "deepseek";
    case GeneratorModel::kMistral:
      return "mistral";
  }
  return "";
}

std::string_view to_string(PromptType v) {
  switch (v) {
    case PromptType::kSimple:
      return "simple";
    case PromptType::kDefault:
      return "default";
    case PromptType::kComplex:
      return "complex";
  }
  return "";
}

std::string_view to_string(Severity v) {
  switch (v) {
    case Severity::kLow:
      return "low";
    case Severity::kMedium:
      return "medium";
    case Severity::kHigh:
      return "high";
  }
  return "";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const Enum (&values)[N],
                std::string_view what) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw ParseError("unknown " + std::string(what) + " '" + std::string(s) +
                   "'");
}

}  // namespace

CaseKind parse_case_kind(std::string_view s) {
  static constexpr CaseKind kinds[] = {CaseKind::kPlagiarism,
                                       CaseKind::kAltered, CaseKind::kDetected};
  return parse_enum(s, kinds, "feature name");
}

GeneratorModel parse_model(std::string_view s) {
  return parse_enum(s, kAllModels, "model");
}

PromptType parse_prompt(std::string_view s) {
  return parse_enum(s, kAllPrompts, "prompt type");
}

Severity parse_severity(std::string_view s) {
  return parse_enum(s, kAllSeverities, "severity");
}

ReuseCase ReuseCase::plagiarism(CaseEnd susp, CaseEnd src, CaseMeta meta) {
  return ReuseCase{CaseKind::kPlagiarism, std::move(susp), std::move(src),
                   meta};
}

ReuseCase ReuseCase::detected(CaseEnd susp, CaseEnd src) {
  return ReuseCase{CaseKind::kDetected, std::move(susp), std::move(src), {}};
}

ReuseCase ReuseCase::altered(CaseEnd susp, CaseMeta meta) {
  return ReuseCase{CaseKind::kAltered, std::move(susp), std::nullopt, meta};
}

void ReuseCase::validate() const {
  if (suspicious.document.empty()) {
    throw std::invalid_argument("case without suspicious document");
  }
  if (kind == CaseKind::kAltered) {
    if (source) throw std::invalid_argument("altered case with a source end");
    return;
  }
  if (!source) throw std::invalid_argument("case without source end");
  if (source->document.empty()) {
    throw std::invalid_argument("case without source document");
  }
  if (source->document == suspicious.document) {
    throw std::invalid_argument("suspicious and source document are equal: " +
                                suspicious.document.id());
  }
}

bool cases_match(const ReuseCase& truth, const ReuseCase& det) {
  if (!truth.source || !det.source) return false;
  return truth.suspicious.document == det.suspicious.document &&
         truth.source->document == det.source->document &&
         overlap_length(truth.suspicious.span, det.suspicious.span) > 0 &&
         overlap_length(truth.source->span, det.source->span) > 0;
}

}  // namespace plagkit
