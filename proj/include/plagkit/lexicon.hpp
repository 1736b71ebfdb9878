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

// Built-in English word lists shared by the offline paraphraser (synonym
// substitution) and the synthetic document generator (which writes prose
// from the same content words so the paraphraser has something to do).

#pragma once

#include <array>
#include <span>
#include <string_view>

namespace plagkit::lexicon {

struct SynonymEntry {
  std::string_view word;
  std::array<std::string_view, 3> synonyms;
};

// Sorted by word.
std::span<const SynonymEntry> synonym_table();

// Entry for a lowercase word, or nullptr.
const SynonymEntry* find_synonyms(std::string_view lower_word);

// Determiners, prepositions, auxiliaries and connectives.
std::span<const std::string_view> function_words();

}  // namespace plagkit::lexicon
