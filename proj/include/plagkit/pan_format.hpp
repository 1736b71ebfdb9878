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

// Reader/writer for the PAN text-alignment corpus layout:
//
//   <corpus>/pairs          one "suspicious source" file-name pair per line
//   <corpus>/susp/*.txt     suspicious documents
//   <corpus>/src/*.txt      source documents
//   <corpus>/truth/*.xml    annotations, one <document> per file
//
// Annotation files use the historical feature schema:
//
//   <document reference="suspicious-document00001.txt">
//   <feature name="plagiarism" this_offset="..." this_length="..."
//            source_reference="..." source_offset="..." source_length="..."/>
//   </document>
//
// with optional model/prompt/severity attributes carrying generator
// metadata. Legacy readers ignore attributes they do not know.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plagkit/span.hpp"

namespace plagkit {

namespace fs = std::filesystem;

// A UTF-8 text document with character-indexed access.
class Document {
 public:
  Document(DocumentRef ref, std::string utf8);

  const DocumentRef& ref() const { return ref_; }
  const std::string& utf8() const { return utf8_; }
  const std::u32string& chars() const { return chars_; }
  std::size_t length() const { return chars_.size(); }

  // UTF-8 text of the characters covered by span; throws std::out_of_range
  // when the span exceeds the document.
  std::string slice(const Span& span) const;
  std::u32string_view view(const Span& span) const;

 private:
  DocumentRef ref_;
  std::string utf8_;
  std::u32string chars_;
};

// Reads a UTF-8 file. Throws IoError or ParseError (with byte offset).
Document load_document(const fs::path& path);
Document load_document(const fs::path& path, DocumentRef ref);

struct DocumentPair {
  DocumentRef suspicious;
  DocumentRef source;

  auto operator<=>(const DocumentPair&) const = default;
};

struct PairsFile {
  std::vector<DocumentPair> pairs;
  std::vector<std::string> warnings;  // duplicate pairs, with line numbers
};

PairsFile parse_pairs_text(std::string_view text);
PairsFile parse_pairs(const fs::path& path);
std::string format_pairs(const std::vector<DocumentPair>& pairs);

struct AnnotationDocument {
  DocumentRef suspicious;
  std::vector<ReuseCase> cases;

  bool operator==(const AnnotationDocument&) const = default;
};

// Document lengths keyed by id, used for span validation.
using LengthMap = std::map<std::string, std::size_t, std::less<>>;

AnnotationDocument parse_annotations_text(std::string_view xml,
                                          const LengthMap* lengths = nullptr,
                                          std::string_view origin = "<string>");
AnnotationDocument parse_annotations(const fs::path& path,
                                     const LengthMap* lengths = nullptr);

// Canonical form: features sorted by this_offset (then the remaining
// fields), fixed attribute order, LF line endings.
std::string format_annotations(const AnnotationDocument& doc);
void write_annotations(const AnnotationDocument& doc, const fs::path& path);

// Writes via a temporary file in the same directory and renames it.
void write_file_atomic(const fs::path& path, std::string_view content);
std::string read_file(const fs::path& path);

// Reads every *.xml in dir (sorted by file name) and concatenates the cases.
// Works for per-suspicious-document files and for legacy per-pair files.
std::vector<ReuseCase> load_cases_dir(const fs::path& dir,
                                      const LengthMap* lengths = nullptr);

// Groups cases by suspicious document and writes <stem>.xml per document.
// Documents listed in `all_suspicious` without cases get an empty file.
void write_cases_dir(const fs::path& dir, const std::vector<ReuseCase>& cases,
                     const std::vector<DocumentRef>& all_suspicious = {});

// A loaded corpus: pairs, the documents they reference, and optional truth.
class Corpus {
 public:
  // Loads <root>/pairs and every referenced document. Truth is read from
  // truth_dir (default <root>/truth) when it exists.
  static Corpus load(const fs::path& root,
                     std::optional<fs::path> truth_dir = std::nullopt);

  Corpus() = default;

  void add_document(Document doc);
  void add_pair(DocumentPair pair) { pairs_.push_back(std::move(pair)); }
  void set_truth(std::vector<ReuseCase> truth);

  const fs::path& root() const { return root_; }
  const std::vector<DocumentPair>& pairs() const { return pairs_; }
  const std::vector<ReuseCase>& truth() const { return truth_; }
  bool has_truth() const { return has_truth_; }

  const Document& document(const DocumentRef& ref) const;
  const Document* find(std::string_view id) const;
  LengthMap lengths() const;

  // Suspicious documents in pair order, deduplicated.
  std::vector<DocumentRef> suspicious_documents() const;

 private:
  fs::path root_;
  std::vector<DocumentPair> pairs_;
  std::map<std::string, std::shared_ptr<const Document>, std::less<>> docs_;
  std::vector<ReuseCase> truth_;
  bool has_truth_ = false;
};

}  // namespace plagkit
