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

// Seed-and-extend lexical detector: exact word n-gram matches between the
// two documents are clustered into reuse cases.

#pragma once

#include <cstddef>
#include <vector>

#include "plagkit/pan_format.hpp"
#include "plagkit/span.hpp"
#include "plagkit/tokenize.hpp"

namespace plagkit {

struct SeedMatch {
  std::size_t source_pos;      // index of the first token of the n-gram
  std::size_t suspicious_pos;  // same, in the suspicious token list
  std::size_t n;

  auto operator<=>(const SeedMatch&) const = default;
};

struct LexicalParams {
  std::size_t ngram = 5;
  std::size_t max_token_gap = 24;
  std::size_t min_case_tokens = 15;
};

// All position pairs whose n-token windows are equal. Candidates come from
// a hash index over the source windows and are verified token by token.
// Sorted by (suspicious_pos, source_pos). Throws ConfigError for n == 0.
std::vector<SeedMatch> find_seeds(const std::vector<Token>& source,
                                  const std::vector<Token>& suspicious,
                                  std::size_t n);

// Single-linkage clustering of seeds: two seeds are linked when the token
// gap between their windows is <= max_token_gap on both axes. Clusters
// covering fewer than min_case_tokens suspicious tokens are dropped. Each
// cluster becomes one detected case spanning its first to last token on
// each side.
std::vector<ReuseCase> extend_and_merge(const std::vector<SeedMatch>& seeds,
                                        const std::vector<Token>& source,
                                        const std::vector<Token>& suspicious,
                                        const DocumentRef& source_ref,
                                        const DocumentRef& suspicious_ref,
                                        const LexicalParams& params);

std::vector<ReuseCase> detect_lexical(const Document& source,
                                      const Document& suspicious,
                                      const LexicalParams& params = {});

}  // namespace plagkit
