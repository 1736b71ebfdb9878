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

namespace plagkit::utf8 {

// Decodes UTF-8 into Unicode scalar values. Throws ParseError naming the
// byte offset of the first invalid sequence (overlong forms, surrogates and
// values above U+10FFFF are rejected).
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view chars);
void append(std::string& out, char32_t c);

// Number of scalar values; same validation as decode().
std::size_t count_chars(std::string_view bytes);

// Character classes used by tokenization and chunking.
bool is_space(char32_t c);
bool is_punct(char32_t c);
bool is_upper(char32_t c);
bool is_digit(char32_t c);

// Simple case folding: ASCII, Latin-1 supplement, Latin Extended-A, basic
// Greek and Cyrillic. Other characters are returned unchanged.
char32_t to_lower(char32_t c);

}  // namespace plagkit::utf8
