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

#include "plagkit/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "plagkit/error.hpp"

namespace plagkit {
namespace {

enum Side : int { kSusp = 0, kSrc = 1 };
using SideKey = std::pair<std::string, int>;
using SpanBuckets = std::map<SideKey, std::vector<Span>>;

std::vector<const ReuseCase*> truth_cases(std::span<const ReuseCase> truth) {
  std::vector<const ReuseCase*> out;
  for (const auto& c : truth) {
    if (c.kind == CaseKind::kPlagiarism && c.source) out.push_back(&c);
  }
  return out;
}

std::vector<const ReuseCase*> detection_cases(std::span<const ReuseCase> det) {
  std::vector<const ReuseCase*> out;
  for (const auto& c : det) {
    if (c.kind != CaseKind::kAltered && c.source) out.push_back(&c);
  }
  return out;
}

// Matching (truth index, detection index) pairs, in truth-major order.
struct Matches {
  std::vector<std::vector<std::size_t>> by_truth;
  std::vector<std::vector<std::size_t>> by_det;
};

Matches find_matches(const std::vector<const ReuseCase*>& truth,
                     const std::vector<const ReuseCase*>& det) {
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>
      groups;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    groups[{truth[i]->suspicious.document.id(),
            truth[i]->source->document.id()}]
        .push_back(i);
  }
  Matches m;
  m.by_truth.resize(truth.size());
  m.by_det.resize(det.size());
  for (std::size_t j = 0; j < det.size(); ++j) {
    auto it = groups.find(
        {det[j]->suspicious.document.id(), det[j]->source->document.id()});
    if (it == groups.end()) continue;
    for (std::size_t i : it->second) {
      if (cases_match(*truth[i], *det[j])) {
        m.by_truth[i].push_back(j);
        m.by_det[j].push_back(i);
      }
    }
  }
  return m;
}

std::optional<Span> intersect(const Span& a, const Span& b) {
  const std::size_t lo = std::max(a.start(), b.start());
  const std::size_t hi = std::min(a.end(), b.end());
  if (hi <= lo) return std::nullopt;
  return Span::from_bounds(lo, hi);
}

void add_case(SpanBuckets& buckets, const ReuseCase& c) {
  buckets[{c.suspicious.document.id(), kSusp}].push_back(c.suspicious.span);
  buckets[{c.source->document.id(), kSrc}].push_back(c.source->span);
}

std::size_t bucket_total(const SpanBuckets& buckets) {
  std::size_t total = 0;
  for (const auto& [key, spans] : buckets) total += covered_length(spans);
  return total;
}

std::size_t case_size(const ReuseCase& c) {
  return c.suspicious.span.length() + c.source->span.length();
}

// |⋃_{o ∈ others} (self ⊓ o)| for a case matched against `others`.
std::size_t covered_by(const ReuseCase& self,
                       const std::vector<const ReuseCase*>& others,
                       const std::vector<std::size_t>& idx) {
  std::vector<Span> susp;
  std::vector<Span> src;
  for (std::size_t k : idx) {
    if (auto s = intersect(self.suspicious.span, others[k]->suspicious.span)) {
      susp.push_back(*s);
    }
    if (auto s = intersect(self.source->span, others[k]->source->span)) {
      src.push_back(*s);
    }
  }
  return covered_length(susp) + covered_length(src);
}

double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0
                  : static_cast<double>(num) / static_cast<double>(den);
}

PrecisionRecall micro_from(const std::vector<const ReuseCase*>& truth,
                           const std::vector<const ReuseCase*>& det,
                           const Matches& m) {
  SpanBuckets det_cover;
  SpanBuckets truth_cover;
  SpanBuckets inter;
  for (const auto* d : det) add_case(det_cover, *d);
  for (const auto* c : truth) add_case(truth_cover, *c);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j : m.by_truth[i]) {
      const ReuseCase& c = *truth[i];
      const ReuseCase& d = *det[j];
      if (auto s = intersect(c.suspicious.span, d.suspicious.span)) {
        inter[{c.suspicious.document.id(), kSusp}].push_back(*s);
      }
      if (auto s = intersect(c.source->span, d.source->span)) {
        inter[{c.source->document.id(), kSrc}].push_back(*s);
      }
    }
  }
  // Both numerators are the same set: ⊓ is symmetric.
  const std::size_t hit = bucket_total(inter);
  return {safe_ratio(hit, bucket_total(det_cover)),
          safe_ratio(hit, bucket_total(truth_cover))};
}

PrecisionRecall macro_from(const std::vector<const ReuseCase*>& truth,
                           const std::vector<const ReuseCase*>& det,
                           const Matches& m) {
  PrecisionRecall pr;
  if (!truth.empty()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      sum += safe_ratio(covered_by(*truth[i], det, m.by_truth[i]),
                        case_size(*truth[i]));
    }
    pr.recall = sum / static_cast<double>(truth.size());
  }
  if (!det.empty()) {
    double sum = 0.0;
    for (std::size_t j = 0; j < det.size(); ++j) {
      sum += safe_ratio(covered_by(*det[j], truth, m.by_det[j]),
                        case_size(*det[j]));
    }
    pr.precision = sum / static_cast<double>(det.size());
  }
  return pr;
}

double granularity_from(const Matches& m) {
  std::size_t detected = 0;
  std::size_t hits = 0;
  for (const auto& dets : m.by_truth) {
    if (dets.empty()) continue;
    ++detected;
    hits += dets.size();
  }
  return detected == 0 ? 1.0 : safe_ratio(hits, detected);
}

}  // namespace

PrecisionRecall micro_scores(std::span<const ReuseCase> truth,
                             std::span<const ReuseCase> det) {
  auto t = truth_cases(truth);
  auto d = detection_cases(det);
  return micro_from(t, d, find_matches(t, d));
}

PrecisionRecall macro_scores(std::span<const ReuseCase> truth,
                             std::span<const ReuseCase> det) {
  auto t = truth_cases(truth);
  auto d = detection_cases(det);
  return macro_from(t, d, find_matches(t, d));
}

double granularity(std::span<const ReuseCase> truth,
                   std::span<const ReuseCase> det) {
  auto t = truth_cases(truth);
  auto d = detection_cases(det);
  return granularity_from(find_matches(t, d));
}

double f1(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double plagdet(double precision, double recall, double gran) {
  return f1(precision, recall) / std::log2(1.0 + gran);
}

double aggregate_score(const MetricReport& r) {
  return (r.micro_plagdet + r.micro_recall + r.micro_precision +
          r.macro_plagdet + r.macro_recall + r.macro_precision) /
         6.0;
}

MetricReport evaluate(std::span<const ReuseCase> truth,
                      std::span<const ReuseCase> det) {
  auto t = truth_cases(truth);
  auto d = detection_cases(det);
  const Matches m = find_matches(t, d);

  MetricReport r;
  const PrecisionRecall micro = micro_from(t, d, m);
  const PrecisionRecall macro = macro_from(t, d, m);
  r.granularity = granularity_from(m);
  r.micro_precision = micro.precision;
  r.micro_recall = micro.recall;
  r.micro_plagdet = plagdet(micro.precision, micro.recall, r.granularity);
  r.macro_precision = macro.precision;
  r.macro_recall = macro.recall;
  r.macro_plagdet = plagdet(macro.precision, macro.recall, r.granularity);
  r.score = aggregate_score(r);
  r.counts.truth_cases = t.size();
  r.counts.detections = d.size();
  r.counts.matched_cases = static_cast<std::size_t>(
      std::count_if(m.by_truth.begin(), m.by_truth.end(),
                    [](const auto& v) { return !v.empty(); }));
  return r;
}

void validate_spans(
    std::span<const ReuseCase> cases,
    const std::map<std::string, std::size_t, std::less<>>& lengths) {
  auto check = [&](const CaseEnd& end, std::size_t index) {
    auto it = lengths.find(end.document.id());
    if (it == lengths.end()) {
      throw ParseError("case " + std::to_string(index) +
                       ": unknown document " + end.document.id());
    }
    if (end.span.end() > it->second) {
      throw ParseError("case " + std::to_string(index) + ": span [" +
                       std::to_string(end.span.start()) + ", " +
                       std::to_string(end.span.end()) + ") exceeds " +
                       end.document.id());
    }
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    check(cases[i].suspicious, i);
    if (cases[i].source) check(*cases[i].source, i);
  }
}

SliceKey parse_slice_key(std::string_view s) {
  if (s == "model") return SliceKey::kModel;
  if (s == "prompt") return SliceKey::kPrompt;
  if (s == "severity") return SliceKey::kSeverity;
  if (s == "kind") return SliceKey::kKind;
  throw ConfigError("unknown slice key '" + std::string(s) +
                    "' (expected model, prompt, severity or kind)");
}

std::string_view to_string(SliceKey k) {
  switch (k) {
    case SliceKey::kModel:
      return "model";
    case SliceKey::kPrompt:
      return "prompt";
    case SliceKey::kSeverity:
      return "severity";
    case SliceKey::kKind:
      return "kind";
  }
  return "";
}

namespace {

// Macro recall of altered cases: suspicious-side coverage by any detection
// on the same suspicious document.
double altered_recall(const std::vector<const ReuseCase*>& altered,
                      const std::vector<const ReuseCase*>& det) {
  std::map<std::string, std::vector<const ReuseCase*>, std::less<>> by_doc;
  for (const auto* d : det) by_doc[d->suspicious.document.id()].push_back(d);
  double sum = 0.0;
  for (const auto* a : altered) {
    std::vector<Span> hit;
    auto it = by_doc.find(a->suspicious.document.id());
    if (it != by_doc.end()) {
      for (const auto* d : it->second) {
        if (auto s = intersect(a->suspicious.span, d->suspicious.span)) {
          hit.push_back(*s);
        }
      }
    }
    sum += safe_ratio(covered_length(hit), a->suspicious.span.length());
  }
  return sum / static_cast<double>(altered.size());
}

std::optional<std::string> group_of(const ReuseCase& c, SliceKey key) {
  switch (key) {
    case SliceKey::kModel:
      if (c.meta.model) return std::string(to_string(*c.meta.model));
      break;
    case SliceKey::kPrompt:
      if (c.meta.prompt) return std::string(to_string(*c.meta.prompt));
      break;
    case SliceKey::kSeverity:
      if (c.meta.severity) return std::string(to_string(*c.meta.severity));
      break;
    case SliceKey::kKind:
      return std::string(to_string(c.kind));
  }
  return std::nullopt;
}

}  // namespace

std::map<std::string, double> slice_report(std::span<const ReuseCase> truth,
                                           std::span<const ReuseCase> det,
                                           SliceKey key) {
  const auto dets = detection_cases(det);
  std::map<std::string, double> out;

  if (key == SliceKey::kKind) {
    std::vector<const ReuseCase*> altered;
    for (const auto& c : truth) {
      if (c.kind == CaseKind::kAltered) altered.push_back(&c);
    }
    const auto plag = truth_cases(truth);
    if (!plag.empty()) {
      out["plagiarism"] = macro_from(plag, dets, find_matches(plag, dets)).recall;
    }
    if (!altered.empty()) out["altered"] = altered_recall(altered, dets);
    return out;
  }

  std::map<std::string, std::vector<const ReuseCase*>> groups;
  for (const auto* c : truth_cases(truth)) {
    if (auto g = group_of(*c, key)) groups[*g].push_back(c);
  }
  for (const auto& [name, cases] : groups) {
    out[name] = macro_from(cases, dets, find_matches(cases, dets)).recall;
  }
  return out;
}

double round_for_display(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  const double floor = std::floor(scaled);
  const double frac = scaled - floor;
  double units;
  if (std::fabs(frac - 0.5) < 1e-9) {
    units = std::fmod(floor, 2.0) == 0.0 ? floor : floor + 1.0;
  } else {
    units = std::round(scaled);
  }
  return units / scale;
}

}  // namespace plagkit
