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

#include "plagkit/tokenize.hpp"

#include <set>

#include "plagkit/utf8.hpp"

namespace plagkit {

std::vector<Token> tokenize_normalize(std::u32string_view text,
                                      std::size_t base_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && utf8::is_space(text[i])) ++i;
    std::size_t word_end = i;
    while (word_end < n && !utf8::is_space(text[word_end])) ++word_end;
    std::size_t b = i;
    std::size_t e = word_end;
    while (b < e && utf8::is_punct(text[b])) ++b;
    while (e > b && utf8::is_punct(text[e - 1])) --e;
    if (e > b) {
      std::string norm;
      norm.reserve(e - b);
      for (std::size_t k = b; k < e; ++k) {
        utf8::append(norm, utf8::to_lower(text[k]));
      }
      out.push_back(Token{std::move(norm), Span(base_offset + b, e - b)});
    }
    i = word_end;
  }
  return out;
}

std::vector<Token> tokenize_normalize(std::string_view utf8_text) {
  return tokenize_normalize(utf8::decode(utf8_text));
}

double jaccard(const std::vector<Token>& a, const std::vector<Token>& b) {
  std::set<std::string_view> sa;
  std::set<std::string_view> sb;
  for (const auto& t : a) sa.insert(t.text);
  for (const auto& t : b) sb.insert(t.text);
  std::size_t inter = 0;
  for (const auto& w : sa) inter += sb.count(w);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 0.0
                  : static_cast<double>(inter) / static_cast<double>(uni);
}

double jaccard(std::string_view utf8_a, std::string_view utf8_b) {
  return jaccard(tokenize_normalize(utf8_a), tokenize_normalize(utf8_b));
}

}  // namespace plagkit
