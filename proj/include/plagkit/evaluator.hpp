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

// Text-alignment metrics: micro/macro precision and recall, granularity,
// plagdet and the aggregate score.
//
// A case is treated as the set of characters it covers on both sides,
// tagged by (document, side). For a truth case c and a detection d,
// c ⊓ d is the intersection of their character sets when cases_match(c, d)
// and empty otherwise.
//
// Truth lists contribute only plagiarism cases. Detection lists contribute
// every case with a source end (detected or plagiarism), so a truth
// directory can be scored against itself. Altered cases are only used by
// the "kind" slice.

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plagkit/span.hpp"

namespace plagkit {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

struct MetricCounts {
  std::size_t truth_cases = 0;
  std::size_t detections = 0;
  std::size_t matched_cases = 0;  // truth cases hit by at least one detection
};

struct MetricReport {
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_plagdet = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_plagdet = 0.0;
  double granularity = 1.0;
  double score = 0.0;
  MetricCounts counts;
};

// Character-weighted precision/recall. A zero denominator yields 0.
PrecisionRecall micro_scores(std::span<const ReuseCase> truth,
                             std::span<const ReuseCase> det);

// Per-case averaged precision/recall. Empty lists yield 0.
PrecisionRecall macro_scores(std::span<const ReuseCase> truth,
                             std::span<const ReuseCase> det);

// Mean number of matching detections over the truth cases that have at
// least one; 1 when no truth case is matched.
double granularity(std::span<const ReuseCase> truth,
                   std::span<const ReuseCase> det);

// Harmonic mean; 0 when both inputs are 0.
double f1(double precision, double recall);

// F1 / log2(1 + gran).
double plagdet(double precision, double recall, double gran);

// Mean of the six micro/macro values (granularity excluded).
double aggregate_score(const MetricReport& report);

// Full report. Computes every metric above in one pass over the matches.
MetricReport evaluate(std::span<const ReuseCase> truth,
                      std::span<const ReuseCase> det);

// Throws ParseError naming the first case whose span leaves its document.
void validate_spans(std::span<const ReuseCase> cases,
                    const std::map<std::string, std::size_t, std::less<>>& lengths);

enum class SliceKey { kModel, kPrompt, kSeverity, kKind };

// "model", "prompt", "severity" or "kind"; throws ConfigError otherwise.
SliceKey parse_slice_key(std::string_view s);
std::string_view to_string(SliceKey k);

// Macro recall per group. For model/prompt/severity the groups are the
// metadata values of the plagiarism truth cases (cases without the key are
// skipped). For kind the groups are "plagiarism" and "altered"; altered
// cases act as pseudo-truth matched by any detection overlapping them on
// the suspicious side, so their recall measures false-positive tendency.
// Groups without cases are omitted.
std::map<std::string, double> slice_report(std::span<const ReuseCase> truth,
                                           std::span<const ReuseCase> det,
                                           SliceKey key);

// Rounds to `decimals` places, ties to even. Values within 1e-9 (relative
// to the decimal grid) of a tie count as ties, so means of already-rounded
// inputs round the same way as their exact decimal value.
double round_for_display(double value, int decimals = 2);

}  // namespace plagkit
