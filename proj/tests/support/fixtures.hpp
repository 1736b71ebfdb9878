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

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "plagkit/hashing.hpp"
#include "plagkit/pan_format.hpp"
#include "plagkit/vector_detector.hpp"

namespace plagkit::testing {

// Filler paragraph of roughly 150 characters; the text itself is irrelevant
// because vectors come from the store.
inline std::string filler(Rng& rng) {
  static constexpr const char* kWords[] = {"lorem", "ipsum", "dolor", "sit",
                                           "amet",  "elit",  "sed",   "magna"};
  std::string out;
  while (out.size() < 150) {
    if (!out.empty()) out += ' ';
    out += kWords[rng.uniform_int(0, 7)];
  }
  return out + ".";
}

struct SeparatedCorpus {
  Corpus corpus;
  VectorStore store;
};

// Pairs of three-paragraph documents with hand-placed chunk vectors. Each
// source paragraph k is the basis vector e_k. The reused suspicious
// paragraph has cosine `truth_sim` with its source paragraph and 0 with the
// others; every other suspicious paragraph has cosine `noise_sim` with
// source paragraph 0 and 0 with the rest.
inline SeparatedCorpus separated_corpus(std::size_t pairs, std::uint64_t seed,
                                        double truth_sim = 0.955,
                                        double noise_sim = 0.60) {
  constexpr std::size_t kDim = 8;
  Rng rng(seed);
  SeparatedCorpus out;
  std::vector<ReuseCase> truth;
  auto basis = [](std::size_t k) {
    std::vector<double> v(kDim, 0.0);
    v[k] = 1.0;
    return v;
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::string src_id = "src" + std::to_string(seed) + "-" + std::to_string(i) + ".txt";
    const std::string susp_id = "susp" + std::to_string(seed) + "-" + std::to_string(i) + ".txt";
    std::vector<std::string> src_paras, susp_paras;
    for (int k = 0; k < 3; ++k) src_paras.push_back(filler(rng));
    const std::size_t reused_src = rng.uniform_int(0, 2);
    const std::size_t reused_susp = rng.uniform_int(0, 2);
    for (std::size_t k = 0; k < 3; ++k) {
      susp_paras.push_back(k == reused_susp ? src_paras[reused_src] : filler(rng));
    }
    auto join = [](const std::vector<std::string>& ps) {
      std::string s;
      for (const auto& p : ps) s += (s.empty() ? "" : "\n\n") + p;
      return s;
    };
    Document src(DocumentRef(src_id), join(src_paras));
    Document susp(DocumentRef(susp_id), join(susp_paras));
    const auto src_spans = chunk_spans(src.chars(), ChunkMode::kParagraph);
    const auto susp_spans = chunk_spans(susp.chars(), ChunkMode::kParagraph);

    for (std::size_t k = 0; k < 3; ++k) out.store.insert(src_id, k, basis(k));
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<double> v(kDim, 0.0);
      if (k == reused_susp) {
        v[reused_src] = truth_sim;
        v[3 + k] = std::sqrt(1.0 - truth_sim * truth_sim);
      } else {
        v[0] = noise_sim;
        v[3 + k] = std::sqrt(1.0 - noise_sim * noise_sim);
      }
      out.store.insert(susp_id, k, v);
    }
    truth.push_back(ReuseCase::plagiarism({susp.ref(), susp_spans[reused_susp]},
                                          {src.ref(), src_spans[reused_src]}));
    out.corpus.add_pair({susp.ref(), src.ref()});
    out.corpus.add_document(std::move(src));
    out.corpus.add_document(std::move(susp));
  }
  out.corpus.set_truth(std::move(truth));
  return out;
}

}  // namespace plagkit::testing
