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

// Brute-force reference for the evaluator: every case is expanded into the
// explicit set of characters it covers, and each metric is computed straight
// from its set definition with integer counts.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plagkit/hashing.hpp"
#include "plagkit/span.hpp"

namespace plagkit::oracle {

using CharSet = std::set<std::uint64_t>;

class Expander {
 public:
  // Character (document, side, position) as one integer.
  std::uint64_t key(const std::string& doc, int side, std::size_t pos) {
    auto [it, _] = ids_.emplace(doc, ids_.size());
    return (static_cast<std::uint64_t>(it->second) * 2 + side) << 32 | pos;
  }

  CharSet chars(const ReuseCase& c) {
    CharSet out;
    for (std::size_t i = c.suspicious.span.start(); i < c.suspicious.span.end(); ++i) {
      out.insert(key(c.suspicious.document.id(), 0, i));
    }
    for (std::size_t i = c.source->span.start(); i < c.source->span.end(); ++i) {
      out.insert(key(c.source->document.id(), 1, i));
    }
    return out;
  }

  CharSet side_chars(const ReuseCase& c, int side) {
    const CaseEnd& e = side == 0 ? c.suspicious : *c.source;
    CharSet out;
    for (std::size_t i = e.span.start(); i < e.span.end(); ++i) {
      out.insert(key(e.document.id(), side, i));
    }
    return out;
  }

 private:
  std::map<std::string, std::size_t> ids_;
};

inline CharSet intersect(const CharSet& a, const CharSet& b) {
  CharSet out;
  for (auto x : a) {
    if (b.count(x)) out.insert(x);
  }
  return out;
}

struct Counts {
  // Rationals kept as numerator / denominator.
  std::size_t micro_hit = 0;
  std::size_t micro_truth = 0;
  std::size_t micro_det = 0;
  std::vector<std::pair<std::size_t, std::size_t>> macro_recall_terms;
  std::vector<std::pair<std::size_t, std::size_t>> macro_precision_terms;
  std::size_t detected_cases = 0;
  std::size_t detections_on_detected = 0;
};

struct Result {
  double micro_precision = 0, micro_recall = 0;
  double macro_precision = 0, macro_recall = 0;
  double granularity = 1;
  double micro_plagdet = 0, macro_plagdet = 0;
  Counts counts;
};

inline double ratio(std::size_t n, std::size_t d) {
  return d == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(d);
}

inline double plagdet_of(double p, double r, double g) {
  const double f = p + r == 0 ? 0.0 : 2 * p * r / (p + r);
  return f / std::log2(1 + g);
}

// `truth` holds plagiarism cases, `det` detections; both with sources.
inline Result evaluate(const std::vector<ReuseCase>& truth,
                       const std::vector<ReuseCase>& det) {
  Expander ex;
  std::vector<CharSet> tc, dc;
  for (const auto& c : truth) tc.push_back(ex.chars(c));
  for (const auto& d : det) dc.push_back(ex.chars(d));

  // c and d match when they share a character on each side.
  auto matches = [&](std::size_t i, std::size_t j) {
    for (int side = 0; side < 2; ++side) {
      if (intersect(ex.side_chars(truth[i], side), ex.side_chars(det[j], side)).empty()) {
        return false;
      }
    }
    return true;
  };
  std::vector<std::vector<bool>> m(truth.size(), std::vector<bool>(det.size()));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = 0; j < det.size(); ++j) m[i][j] = matches(i, j);
  }

  Result r;
  Counts& k = r.counts;
  CharSet all_truth, all_det, hit;
  for (const auto& s : tc) all_truth.insert(s.begin(), s.end());
  for (const auto& s : dc) all_det.insert(s.begin(), s.end());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = 0; j < det.size(); ++j) {
      if (!m[i][j]) continue;
      const CharSet x = intersect(tc[i], dc[j]);
      hit.insert(x.begin(), x.end());
    }
  }
  k.micro_hit = hit.size();
  k.micro_truth = all_truth.size();
  k.micro_det = all_det.size();

  for (std::size_t i = 0; i < truth.size(); ++i) {
    CharSet cov;
    std::size_t n = 0;
    for (std::size_t j = 0; j < det.size(); ++j) {
      if (!m[i][j]) continue;
      ++n;
      const CharSet x = intersect(tc[i], dc[j]);
      cov.insert(x.begin(), x.end());
    }
    k.macro_recall_terms.emplace_back(cov.size(), tc[i].size());
    if (n > 0) {
      ++k.detected_cases;
      k.detections_on_detected += n;
    }
  }
  for (std::size_t j = 0; j < det.size(); ++j) {
    CharSet cov;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (!m[i][j]) continue;
      const CharSet x = intersect(tc[i], dc[j]);
      cov.insert(x.begin(), x.end());
    }
    k.macro_precision_terms.emplace_back(cov.size(), dc[j].size());
  }

  r.micro_precision = ratio(k.micro_hit, k.micro_det);
  r.micro_recall = ratio(k.micro_hit, k.micro_truth);
  double sum = 0;
  for (auto [n, d] : k.macro_recall_terms) sum += ratio(n, d);
  r.macro_recall = truth.empty() ? 0.0 : sum / static_cast<double>(truth.size());
  sum = 0;
  for (auto [n, d] : k.macro_precision_terms) sum += ratio(n, d);
  r.macro_precision = det.empty() ? 0.0 : sum / static_cast<double>(det.size());
  r.granularity = k.detected_cases == 0
                      ? 1.0
                      : ratio(k.detections_on_detected, k.detected_cases);
  r.micro_plagdet = plagdet_of(r.micro_precision, r.micro_recall, r.granularity);
  r.macro_plagdet = plagdet_of(r.macro_precision, r.macro_recall, r.granularity);
  return r;
}

// Random micro-corpus: up to 3 suspicious and 3 source documents of at most
// 2000 characters, up to 10 truth cases and 15 detections. Detections are a
// mix of perturbed truth cases, splits and unrelated spans.
struct MicroCorpus {
  std::vector<ReuseCase> truth;
  std::vector<ReuseCase> det;
  std::map<std::string, std::size_t> lengths;
};

inline Span random_span(Rng& rng, std::size_t doc_len) {
  const auto start = rng.uniform_int(0, doc_len - 1);
  const auto len = rng.uniform_int(1, std::min<std::uint64_t>(doc_len - start, 400));
  return Span(start, len);
}

inline Span jitter(Rng& rng, const Span& s, std::size_t doc_len) {
  const std::int64_t a = static_cast<std::int64_t>(s.start()) +
                         static_cast<std::int64_t>(rng.uniform_int(0, 40)) - 20;
  const std::int64_t b = static_cast<std::int64_t>(s.end()) +
                         static_cast<std::int64_t>(rng.uniform_int(0, 40)) - 20;
  std::int64_t lo = std::clamp<std::int64_t>(a, 0, static_cast<std::int64_t>(doc_len) - 1);
  std::int64_t hi = std::clamp<std::int64_t>(b, lo + 1, static_cast<std::int64_t>(doc_len));
  return Span::from_bounds(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
}

inline MicroCorpus random_micro_corpus(std::uint64_t seed) {
  Rng rng(seed);
  MicroCorpus mc;
  const auto ns = rng.uniform_int(1, 3);
  const auto nr = rng.uniform_int(1, 3);
  std::vector<std::string> susp, src;
  for (std::uint64_t i = 0; i < ns; ++i) {
    susp.push_back("susp" + std::to_string(i));
    mc.lengths[susp.back()] = rng.uniform_int(1, 2000);
  }
  for (std::uint64_t i = 0; i < nr; ++i) {
    src.push_back("src" + std::to_string(i));
    mc.lengths[src.back()] = rng.uniform_int(1, 2000);
  }
  auto make = [&](const std::string& s, Span ss, const std::string& r, Span rs, bool truth) {
    CaseEnd a{DocumentRef(s), ss};
    CaseEnd b{DocumentRef(r), rs};
    return truth ? ReuseCase::plagiarism(a, b) : ReuseCase::detected(a, b);
  };
  const auto nt = rng.uniform_int(0, 10);
  for (std::uint64_t i = 0; i < nt; ++i) {
    const auto& s = susp[rng.uniform_int(0, susp.size() - 1)];
    const auto& r = src[rng.uniform_int(0, src.size() - 1)];
    mc.truth.push_back(make(s, random_span(rng, mc.lengths[s]), r,
                            random_span(rng, mc.lengths[r]), true));
  }
  const auto nd = rng.uniform_int(0, 15);
  for (std::uint64_t i = 0; i < nd && mc.det.size() < 15; ++i) {
    const double u = rng.uniform();
    if (u < 0.5 && !mc.truth.empty()) {
      const auto& t = mc.truth[rng.uniform_int(0, mc.truth.size() - 1)];
      const auto& s = t.suspicious.document.id();
      const auto& r = t.source->document.id();
      if (u < 0.15) {
        mc.det.push_back(t);
        mc.det.back().kind = CaseKind::kDetected;
        mc.det.back().meta = {};
      } else if (u < 0.3 && t.suspicious.span.length() >= 2 && mc.det.size() < 14) {
        // Split into two halves.
        const auto half = t.suspicious.span.length() / 2;
        mc.det.push_back(make(s, Span(t.suspicious.span.start(), half), r,
                              t.source->span, false));
        mc.det.push_back(make(s, Span::from_bounds(t.suspicious.span.start() + half,
                                                   t.suspicious.span.end()),
                              r, t.source->span, false));
      } else {
        mc.det.push_back(make(s, jitter(rng, t.suspicious.span, mc.lengths[s]), r,
                              jitter(rng, t.source->span, mc.lengths[r]), false));
      }
    } else {
      const auto& s = susp[rng.uniform_int(0, susp.size() - 1)];
      const auto& r = src[rng.uniform_int(0, src.size() - 1)];
      mc.det.push_back(make(s, random_span(rng, mc.lengths[s]), r,
                            random_span(rng, mc.lengths[r]), false));
    }
  }
  return mc;
}

}  // namespace plagkit::oracle
