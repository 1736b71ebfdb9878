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

#include "plagkit/lexical_detector.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "plagkit/error.hpp"
#include "plagkit/hashing.hpp"

namespace plagkit {
namespace {

// Interns token texts so windows compare as integer sequences.
class Vocabulary {
 public:
  std::vector<std::uint32_t> ids(const std::vector<Token>& tokens) {
    std::vector<std::uint32_t> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      auto [it, _] = map_.emplace(t.text, static_cast<std::uint32_t>(map_.size()));
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, std::uint32_t> map_;
};

std::uint64_t window_hash(const std::vector<std::uint32_t>& ids,
                          std::size_t pos, std::size_t n) {
  std::uint64_t h = kFnvOffset;
  for (std::size_t k = 0; k < n; ++k) h = hash_combine(h, ids[pos + k]);
  return h;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Tokens strictly between two n-token windows starting at a and b.
std::size_t window_gap(std::size_t a, std::size_t b, std::size_t n) {
  if (a > b) std::swap(a, b);
  return b > a + n ? b - (a + n) : 0;
}

}  // namespace

std::vector<SeedMatch> find_seeds(const std::vector<Token>& source,
                                  const std::vector<Token>& suspicious,
                                  std::size_t n) {
  if (n == 0) throw ConfigError("n-gram order must be >= 1");
  std::vector<SeedMatch> seeds;
  if (source.size() < n || suspicious.size() < n) return seeds;

  Vocabulary vocab;
  const auto src = vocab.ids(source);
  const auto susp = vocab.ids(suspicious);

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i + n <= src.size(); ++i) {
    index[window_hash(src, i, n)].push_back(i);
  }
  for (std::size_t j = 0; j + n <= susp.size(); ++j) {
    auto it = index.find(window_hash(susp, j, n));
    if (it == index.end()) continue;
    for (std::size_t i : it->second) {
      if (std::equal(src.begin() + static_cast<std::ptrdiff_t>(i),
                     src.begin() + static_cast<std::ptrdiff_t>(i + n),
                     susp.begin() + static_cast<std::ptrdiff_t>(j))) {
        seeds.push_back(SeedMatch{i, j, n});
      }
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const SeedMatch& a, const SeedMatch& b) {
    return std::tie(a.suspicious_pos, a.source_pos) <
           std::tie(b.suspicious_pos, b.source_pos);
  });
  return seeds;
}

std::vector<ReuseCase> extend_and_merge(const std::vector<SeedMatch>& seeds_in,
                                        const std::vector<Token>& source,
                                        const std::vector<Token>& suspicious,
                                        const DocumentRef& source_ref,
                                        const DocumentRef& suspicious_ref,
                                        const LexicalParams& params) {
  std::vector<SeedMatch> seeds = seeds_in;
  std::sort(seeds.begin(), seeds.end(), [](const SeedMatch& a, const SeedMatch& b) {
    return std::tie(a.suspicious_pos, a.source_pos) <
           std::tie(b.suspicious_pos, b.source_pos);
  });
  const std::size_t gap = params.max_token_gap;

  DisjointSets sets(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i; j-- > 0;) {
      // Sorted by suspicious position: once the suspicious gap is too large
      // for j, it is too large for every earlier seed as well.
      if (seeds[j].suspicious_pos + seeds[j].n + gap < seeds[i].suspicious_pos) {
        break;
      }
      const std::size_t n = std::max(seeds[i].n, seeds[j].n);
      if (window_gap(seeds[j].suspicious_pos, seeds[i].suspicious_pos, n) <= gap &&
          window_gap(seeds[j].source_pos, seeds[i].source_pos, n) <= gap) {
        sets.unite(i, j);
      }
    }
  }

  struct Extent {
    std::size_t susp_lo = SIZE_MAX, susp_hi = 0, src_lo = SIZE_MAX, src_hi = 0;
  };
  std::map<std::size_t, Extent> clusters;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Extent& e = clusters[sets.find(i)];
    const SeedMatch& s = seeds[i];
    e.susp_lo = std::min(e.susp_lo, s.suspicious_pos);
    e.susp_hi = std::max(e.susp_hi, s.suspicious_pos + s.n);
    e.src_lo = std::min(e.src_lo, s.source_pos);
    e.src_hi = std::max(e.src_hi, s.source_pos + s.n);
  }

  std::vector<ReuseCase> cases;
  for (const auto& [root, e] : clusters) {
    if (e.susp_hi - e.susp_lo < params.min_case_tokens) continue;
    const Span susp = Span::from_bounds(suspicious[e.susp_lo].span.start(),
                                        suspicious[e.susp_hi - 1].span.end());
    const Span src = Span::from_bounds(source[e.src_lo].span.start(),
                                       source[e.src_hi - 1].span.end());
    cases.push_back(ReuseCase::detected(CaseEnd{suspicious_ref, susp},
                                        CaseEnd{source_ref, src}));
  }
  std::sort(cases.begin(), cases.end(), [](const ReuseCase& a, const ReuseCase& b) {
    return std::tie(a.suspicious.span, a.source->span) <
           std::tie(b.suspicious.span, b.source->span);
  });
  return cases;
}

std::vector<ReuseCase> detect_lexical(const Document& source,
                                      const Document& suspicious,
                                      const LexicalParams& params) {
  const auto src_tokens = tokenize_normalize(source.chars());
  const auto susp_tokens = tokenize_normalize(suspicious.chars());
  const auto seeds = find_seeds(src_tokens, susp_tokens, params.ngram);
  return extend_and_merge(seeds, src_tokens, susp_tokens, source.ref(),
                          suspicious.ref(), params);
}

}  // namespace plagkit
