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

#include "plagkit/pan_format.hpp"

#include <algorithm>
#include <atomic>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "plagkit/error.hpp"
#include "plagkit/utf8.hpp"

namespace plagkit {

namespace pt = boost::property_tree;

Document::Document(DocumentRef ref, std::string utf8)
    : ref_(std::move(ref)), utf8_(std::move(utf8)), chars_(utf8::decode(utf8_)) {}

std::u32string_view Document::view(const Span& span) const {
  if (span.end() > chars_.size()) {
    throw std::out_of_range("span [" + std::to_string(span.start()) + ", " +
                            std::to_string(span.end()) + ") exceeds " +
                            ref_.id() + " (" + std::to_string(chars_.size()) +
                            " chars)");
  }
  return std::u32string_view(chars_).substr(span.start(), span.length());
}

std::string Document::slice(const Span& span) const {
  return utf8::encode(view(span));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(tid % 100000) + "-" +
         std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

Document load_document(const fs::path& path, DocumentRef ref) {
  std::string bytes = read_file(path);
  try {
    return Document(std::move(ref), std::move(bytes));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Document load_document(const fs::path& path) {
  return load_document(path, DocumentRef(path.filename().string()));
}

PairsFile parse_pairs_text(std::string_view text) {
  PairsFile out;
  std::set<DocumentPair> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError("pairs line " + std::to_string(line_no) +
                       ": expected 2 file names, found " +
                       std::to_string(tokens.size()));
    }
    DocumentPair pair{DocumentRef(tokens[0]), DocumentRef(tokens[1])};
    if (!seen.insert(pair).second) {
      out.warnings.push_back("pairs line " + std::to_string(line_no) +
                             ": duplicate pair " + tokens[0] + " " +
                             tokens[1]);
    }
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

PairsFile parse_pairs(const fs::path& path) {
  try {
    return parse_pairs_text(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_pairs(const std::vector<DocumentPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += p.suspicious.id();
    out += ' ';
    out += p.source.id();
    out += '\n';
  }
  return out;
}

namespace {

std::size_t parse_count(const std::string& value, const char* attr,
                        std::string_view origin, std::size_t feature) {
  std::size_t v = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || value.empty()) {
    throw ParseError(std::string(origin) + ": feature " +
                     std::to_string(feature) + ": attribute " + attr +
                     " is not a non-negative integer: '" + value + "'");
  }
  return v;
}

Span make_span(std::size_t offset, std::size_t length, std::string_view origin,
               std::size_t feature) {
  if (length == 0) {
    throw ParseError(std::string(origin) + ": feature " +
                     std::to_string(feature) + ": zero-length span");
  }
  return Span(offset, length);
}

void check_span(const LengthMap* lengths, const CaseEnd& end,
                std::string_view origin, std::size_t feature) {
  if (lengths == nullptr) return;
  auto it = lengths->find(end.document.id());
  if (it == lengths->end()) {
    throw ParseError(std::string(origin) + ": feature " +
                     std::to_string(feature) + ": unknown document " +
                     end.document.id());
  }
  if (end.span.end() > it->second) {
    throw ParseError(std::string(origin) + ": feature " +
                     std::to_string(feature) + ": span [" +
                     std::to_string(end.span.start()) + ", " +
                     std::to_string(end.span.end()) + ") exceeds " +
                     end.document.id() + " length " +
                     std::to_string(it->second));
  }
}

void escape_attr(std::string& out, std::string_view value) {
  for (char c : value) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
}

void put_attr(std::string& out, std::string_view name, std::string_view value) {
  out += ' ';
  out += name;
  out += "=\"";
  escape_attr(out, value);
  out += '"';
}

// Canonical feature order.
auto sort_key(const ReuseCase& c) {
  const std::size_t src_off = c.source ? c.source->span.start() : 0;
  const std::size_t src_len = c.source ? c.source->span.length() : 0;
  const std::string src_ref = c.source ? c.source->document.id() : "";
  return std::make_tuple(c.suspicious.span.start(), c.suspicious.span.length(),
                         static_cast<int>(c.kind), src_ref, src_off, src_len,
                         c.meta);
}

}  // namespace

AnnotationDocument parse_annotations_text(std::string_view xml,
                                          const LengthMap* lengths,
                                          std::string_view origin) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string(origin) + ": malformed XML: " + e.what());
  }
  auto root = tree.get_child_optional("document");
  if (!root) throw ParseError(std::string(origin) + ": missing <document> root");
  auto reference = root->get_optional<std::string>("<xmlattr>.reference");
  if (!reference || reference->empty()) {
    throw ParseError(std::string(origin) +
                     ": <document> lacks the reference attribute");
  }
  AnnotationDocument doc{DocumentRef(*reference), {}};
  std::size_t index = 0;
  for (const auto& [tag, node] : *root) {
    if (tag != "feature") continue;
    ++index;
    const auto& attrs = node.get_child("<xmlattr>", pt::ptree());
    auto required = [&](const char* name) -> std::string {
      auto v = attrs.get_optional<std::string>(name);
      if (!v) {
        throw ParseError(std::string(origin) + ": feature " +
                         std::to_string(index) +
                         ": missing required attribute " + name);
      }
      return *v;
    };
    auto optional = [&](const char* name) {
      return attrs.get_optional<std::string>(name);
    };
    const CaseKind kind = [&] {
      try {
        return parse_case_kind(required("name"));
      } catch (const ParseError& e) {
        throw ParseError(std::string(origin) + ": feature " +
                         std::to_string(index) + ": " + e.what());
      }
    }();

    CaseEnd susp{doc.suspicious,
                 make_span(parse_count(required("this_offset"), "this_offset",
                                       origin, index),
                           parse_count(required("this_length"), "this_length",
                                       origin, index),
                           origin, index)};
    check_span(lengths, susp, origin, index);

    CaseMeta meta;
    try {
      if (auto v = optional("model")) meta.model = parse_model(*v);
      if (auto v = optional("prompt")) meta.prompt = parse_prompt(*v);
      if (auto v = optional("severity")) meta.severity = parse_severity(*v);
    } catch (const ParseError& e) {
      throw ParseError(std::string(origin) + ": feature " +
                       std::to_string(index) + ": " + e.what());
    }

    if (kind == CaseKind::kAltered) {
      doc.cases.push_back(ReuseCase::altered(std::move(susp), meta));
      continue;
    }
    const std::string src_ref = required("source_reference");
    if (src_ref.empty()) {
      throw ParseError(std::string(origin) + ": feature " +
                       std::to_string(index) + ": empty source_reference");
    }
    CaseEnd src{DocumentRef(src_ref),
                make_span(parse_count(required("source_offset"),
                                      "source_offset", origin, index),
                          parse_count(required("source_length"),
                                      "source_length", origin, index),
                          origin, index)};
    check_span(lengths, src, origin, index);
    ReuseCase c{kind, std::move(susp), std::move(src), meta};
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(origin) + ": feature " +
                       std::to_string(index) + ": " + e.what());
    }
    doc.cases.push_back(std::move(c));
  }
  return doc;
}

AnnotationDocument parse_annotations(const fs::path& path,
                                     const LengthMap* lengths) {
  return parse_annotations_text(read_file(path), lengths, path.string());
}

std::string format_annotations(const AnnotationDocument& doc) {
  std::vector<const ReuseCase*> order;
  order.reserve(doc.cases.size());
  for (const auto& c : doc.cases) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const ReuseCase* a, const ReuseCase* b) {
                     return sort_key(*a) < sort_key(*b);
                   });

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<document";
  put_attr(out, "reference", doc.suspicious.id());
  out += ">\n";
  for (const ReuseCase* c : order) {
    if (c->suspicious.document != doc.suspicious) {
      throw std::invalid_argument("case for " + c->suspicious.document.id() +
                                  " in annotations of " +
                                  doc.suspicious.id());
    }
    out += "<feature";
    put_attr(out, "name", to_string(c->kind));
    put_attr(out, "this_offset", std::to_string(c->suspicious.span.start()));
    put_attr(out, "this_length", std::to_string(c->suspicious.span.length()));
    if (c->source) {
      put_attr(out, "source_reference", c->source->document.id());
      put_attr(out, "source_offset", std::to_string(c->source->span.start()));
      put_attr(out, "source_length", std::to_string(c->source->span.length()));
    }
    if (c->meta.model) put_attr(out, "model", to_string(*c->meta.model));
    if (c->meta.prompt) put_attr(out, "prompt", to_string(*c->meta.prompt));
    if (c->meta.severity) {
      put_attr(out, "severity", to_string(*c->meta.severity));
    }
    out += "/>\n";
  }
  out += "</document>\n";
  return out;
}

void write_annotations(const AnnotationDocument& doc, const fs::path& path) {
  write_file_atomic(path, format_annotations(doc));
}

std::vector<ReuseCase> load_cases_dir(const fs::path& dir,
                                      const LengthMap* lengths) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ReuseCase> cases;
  for (const auto& f : files) {
    auto doc = parse_annotations(f, lengths);
    for (auto& c : doc.cases) cases.push_back(std::move(c));
  }
  return cases;
}

void write_cases_dir(const fs::path& dir, const std::vector<ReuseCase>& cases,
                     const std::vector<DocumentRef>& all_suspicious) {
  std::map<DocumentRef, AnnotationDocument> by_doc;
  for (const auto& ref : all_suspicious) {
    by_doc.emplace(ref, AnnotationDocument{ref, {}});
  }
  for (const auto& c : cases) {
    auto [it, _] = by_doc.emplace(c.suspicious.document,
                                  AnnotationDocument{c.suspicious.document, {}});
    it->second.cases.push_back(c);
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());
  for (const auto& [ref, doc] : by_doc) {
    write_annotations(doc, dir / (fs::path(ref.id()).stem().string() + ".xml"));
  }
}

Corpus Corpus::load(const fs::path& root, std::optional<fs::path> truth_dir) {
  Corpus corpus;
  corpus.root_ = root;
  const fs::path pairs_path = root / "pairs";
  if (!fs::exists(pairs_path)) throw IoError("missing " + pairs_path.string());
  PairsFile pf = parse_pairs(pairs_path);
  corpus.pairs_ = std::move(pf.pairs);
  for (const auto& p : corpus.pairs_) {
    if (!corpus.find(p.suspicious.id())) {
      corpus.add_document(
          load_document(root / "susp" / p.suspicious.id(), p.suspicious));
    }
    if (!corpus.find(p.source.id())) {
      corpus.add_document(load_document(root / "src" / p.source.id(), p.source));
    }
  }
  const fs::path tdir = truth_dir.value_or(root / "truth");
  if (fs::is_directory(tdir)) {
    const LengthMap lengths = corpus.lengths();
    corpus.set_truth(load_cases_dir(tdir, &lengths));
  } else if (truth_dir) {
    throw IoError("missing truth directory " + tdir.string());
  }
  return corpus;
}

void Corpus::add_document(Document doc) {
  const std::string id = doc.ref().id();
  docs_[id] = std::make_shared<const Document>(std::move(doc));
}

void Corpus::set_truth(std::vector<ReuseCase> truth) {
  truth_ = std::move(truth);
  has_truth_ = true;
}

const Document* Corpus::find(std::string_view id) const {
  auto it = docs_.find(id);
  return it == docs_.end() ? nullptr : it->second.get();
}

const Document& Corpus::document(const DocumentRef& ref) const {
  const Document* d = find(ref.id());
  if (d == nullptr) throw IoError("document not loaded: " + ref.id());
  return *d;
}

LengthMap Corpus::lengths() const {
  LengthMap out;
  for (const auto& [id, doc] : docs_) out.emplace(id, doc->length());
  return out;
}

std::vector<DocumentRef> Corpus::suspicious_documents() const {
  std::vector<DocumentRef> out;
  std::set<DocumentRef> seen;
  for (const auto& p : pairs_) {
    if (seen.insert(p.suspicious).second) out.push_back(p.suspicious);
  }
  return out;
}

}  // namespace plagkit
