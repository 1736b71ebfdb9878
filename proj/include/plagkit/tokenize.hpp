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

#include <string>
#include <string_view>
#include <vector>

#include "plagkit/span.hpp"

namespace plagkit {

struct Token {
  std::string text;  // lowercased, punctuation-trimmed, UTF-8
  Span span;         // the trimmed word in the original text

  bool operator==(const Token&) const = default;
};

// Splits on whitespace, trims leading/trailing punctuation, lowercases and
// drops tokens that end up empty. Spans are offsets into `text` (plus
// `base_offset`), so tokens of a document slice can be mapped back.
std::vector<Token> tokenize_normalize(std::u32string_view text,
                                      std::size_t base_offset = 0);
std::vector<Token> tokenize_normalize(std::string_view utf8_text);

// Word-set Jaccard similarity |A ∩ B| / |A ∪ B|; 0 when both are empty.
double jaccard(const std::vector<Token>& a, const std::vector<Token>& b);
double jaccard(std::string_view utf8_a, std::string_view utf8_b);

}  // namespace plagkit
