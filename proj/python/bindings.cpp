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

// Python bindings for the plagkit core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "plagkit/commands.hpp"
#include "plagkit/error.hpp"
#include "plagkit/evaluator.hpp"
#include "plagkit/lexical_detector.hpp"
#include "plagkit/pan_format.hpp"
#include "plagkit/paraphrase.hpp"
#include "plagkit/span.hpp"
#include "plagkit/vector_detector.hpp"

namespace py = pybind11;
using namespace plagkit;

namespace {

std::optional<std::string> meta_name(const auto& v) {
  if (!v) return std::nullopt;
  return std::string(to_string(*v));
}

py::dict report_dict(const MetricReport& r) {
  py::dict d;
  d["micro_precision"] = r.micro_precision;
  d["micro_recall"] = r.micro_recall;
  d["micro_plagdet"] = r.micro_plagdet;
  d["macro_precision"] = r.macro_precision;
  d["macro_recall"] = r.macro_recall;
  d["macro_plagdet"] = r.macro_plagdet;
  d["granularity"] = r.granularity;
  d["score"] = r.score;
  d["truth_cases"] = r.counts.truth_cases;
  d["detections"] = r.counts.detections;
  return d;
}

std::vector<ReuseCase> detect_lexical_text(const std::string& source, const std::string& suspicious,
                                           const std::string& source_id,
                                           const std::string& suspicious_id,
                                           std::size_t ngram, std::size_t max_token_gap,
                                           std::size_t min_case_tokens) {
  LexicalParams p;
  p.ngram = ngram;
  p.max_token_gap = max_token_gap;
  p.min_case_tokens = min_case_tokens;
  return detect_lexical(Document(DocumentRef(source_id), source),
                        Document(DocumentRef(suspicious_id), suspicious), p);
}

std::vector<ReuseCase> detect_vector_text(const std::string& source, const std::string& suspicious,
                                          const std::string& source_id,
                                          const std::string& suspicious_id, double threshold,
                                          const std::string& chunk_mode, bool merge,
                                          std::size_t merge_gap, std::size_t min_len) {
  VectorDetectorConfig c;
  c.threshold = threshold;
  c.chunk_mode = parse_chunk_mode(chunk_mode);
  c.merge = merge;
  c.merge_gap = merge_gap;
  c.min_len_chars = min_len;
  return detect_vector(Document(DocumentRef(source_id), source),
                       Document(DocumentRef(suspicious_id), suspicious), c);
}

}  // namespace

PYBIND11_MODULE(_plagkit, m) {
  m.doc() = "Text-reuse corpus generation, detection and evaluation";

  auto base = py::register_exception<Error>(m, "PlagkitError");
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ProviderError>(m, "ProviderError", base);

  py::class_<Span>(m, "Span")
      .def(py::init<std::size_t, std::size_t>(), py::arg("start"), py::arg("length"))
      .def_static("from_bounds", &Span::from_bounds, py::arg("begin"), py::arg("end"))
      .def_property_readonly("start", &Span::start)
      .def_property_readonly("length", &Span::length)
      .def_property_readonly("end", &Span::end)
      .def("__eq__", [](const Span& a, const Span& b) { return a == b; })
      .def("__repr__", [](const Span& s) {
        return "Span(" + std::to_string(s.start()) + ", " + std::to_string(s.length()) + ")";
      });
  m.def("overlap_length", &overlap_length);
  m.def("gap_between", &gap_between);

  py::class_<ReuseCase>(m, "Case")
      .def_property_readonly("kind", [](const ReuseCase& c) { return std::string(to_string(c.kind)); })
      .def_property_readonly("suspicious_document",
                             [](const ReuseCase& c) { return c.suspicious.document.id(); })
      .def_property_readonly("suspicious_span", [](const ReuseCase& c) { return c.suspicious.span; })
      .def_property_readonly("source_document",
                             [](const ReuseCase& c) -> std::optional<std::string> {
                               if (!c.source) return std::nullopt;
                               return c.source->document.id();
                             })
      .def_property_readonly("source_span",
                             [](const ReuseCase& c) -> std::optional<Span> {
                               if (!c.source) return std::nullopt;
                               return c.source->span;
                             })
      .def_property_readonly("model", [](const ReuseCase& c) { return meta_name(c.meta.model); })
      .def_property_readonly("prompt", [](const ReuseCase& c) { return meta_name(c.meta.prompt); })
      .def_property_readonly("severity",
                             [](const ReuseCase& c) { return meta_name(c.meta.severity); })
      .def("__eq__", [](const ReuseCase& a, const ReuseCase& b) { return a == b; });

  m.def(
      "plagiarism_case",
      [](const std::string& susp, Span ss, const std::string& src, Span rs) {
        return ReuseCase::plagiarism({DocumentRef(susp), ss}, {DocumentRef(src), rs});
      },
      py::arg("suspicious"), py::arg("suspicious_span"), py::arg("source"),
      py::arg("source_span"));
  m.def(
      "detected_case",
      [](const std::string& susp, Span ss, const std::string& src, Span rs) {
        return ReuseCase::detected({DocumentRef(susp), ss}, {DocumentRef(src), rs});
      },
      py::arg("suspicious"), py::arg("suspicious_span"), py::arg("source"),
      py::arg("source_span"));
  m.def("cases_match", &cases_match);

  m.def("f1", &f1, py::arg("precision"), py::arg("recall"));
  m.def("plagdet", &plagdet, py::arg("precision"), py::arg("recall"), py::arg("granularity"));
  m.def(
      "aggregate_score",
      [](double mi_pd, double mi_r, double mi_p, double ma_pd, double ma_r, double ma_p) {
        MetricReport r;
        r.micro_plagdet = mi_pd;
        r.micro_recall = mi_r;
        r.micro_precision = mi_p;
        r.macro_plagdet = ma_pd;
        r.macro_recall = ma_r;
        r.macro_precision = ma_p;
        return aggregate_score(r);
      },
      py::arg("micro_plagdet"), py::arg("micro_recall"), py::arg("micro_precision"),
      py::arg("macro_plagdet"), py::arg("macro_recall"), py::arg("macro_precision"));
  m.def("round_for_display", &round_for_display, py::arg("value"), py::arg("decimals") = 2);
  m.def(
      "evaluate",
      [](const std::vector<ReuseCase>& truth, const std::vector<ReuseCase>& det) {
        return report_dict(evaluate(truth, det));
      },
      py::arg("truth"), py::arg("detections"));
  m.def(
      "slice_report",
      [](const std::vector<ReuseCase>& truth, const std::vector<ReuseCase>& det,
         const std::string& key) { return slice_report(truth, det, parse_slice_key(key)); },
      py::arg("truth"), py::arg("detections"), py::arg("key"));

  m.def(
      "load_cases",
      [](const std::filesystem::path& dir) { return load_cases_dir(dir); }, py::arg("directory"));

  m.def("detect_lexical", &detect_lexical_text, py::arg("source"), py::arg("suspicious"),
        py::arg("source_id") = "source.txt", py::arg("suspicious_id") = "suspicious.txt",
        py::arg("ngram") = LexicalParams{}.ngram,
        py::arg("max_token_gap") = LexicalParams{}.max_token_gap,
        py::arg("min_case_tokens") = LexicalParams{}.min_case_tokens);
  m.def("detect_vector", &detect_vector_text, py::arg("source"), py::arg("suspicious"),
        py::arg("source_id") = "source.txt", py::arg("suspicious_id") = "suspicious.txt",
        py::arg("threshold") = VectorDetectorConfig{}.threshold,
        py::arg("chunk_mode") = "paragraph", py::arg("merge") = true,
        py::arg("merge_gap") = VectorDetectorConfig{}.merge_gap,
        py::arg("min_len") = VectorDetectorConfig{}.min_len_chars);

  m.def(
      "paraphrase",
      [](const std::string& text, const std::string& prompt,
         std::optional<std::string> context, std::uint64_t seed) {
        OfflineParaphraser p(seed);
        return p.paraphrase(text, parse_prompt(prompt),
                            context ? std::optional<std::string_view>(*context) : std::nullopt);
      },
      py::arg("text"), py::arg("prompt") = "simple", py::arg("context") = py::none(),
      py::arg("seed") = 0);

  m.def(
      "generate",
      [](const std::filesystem::path& out, std::size_t pairs, std::uint64_t seed,
         const std::string& provider, bool blind, unsigned jobs) {
        cli::GenerateCommand c;
        c.out = out;
        c.pairs = pairs;
        c.seed = seed;
        c.provider = provider;
        c.blind = blind;
        c.jobs = jobs;
        py::gil_scoped_release release;
        return cli::cmd_generate(c);
      },
      py::arg("out"), py::arg("pairs") = 100, py::arg("seed") = 0,
      py::arg("provider") = "offline", py::arg("blind") = false, py::arg("jobs") = 1);
  m.def(
      "detect",
      [](const std::filesystem::path& corpus, const std::filesystem::path& out,
         const std::string& detector, std::optional<double> threshold, unsigned jobs) {
        cli::DetectCommand c;
        c.corpus = corpus;
        c.out = out;
        c.detector = cli::parse_detector(detector);
        if (threshold) c.vector.threshold = *threshold;
        c.jobs = jobs;
        py::gil_scoped_release release;
        return cli::cmd_detect(c);
      },
      py::arg("corpus"), py::arg("out"), py::arg("detector") = "vector",
      py::arg("threshold") = py::none(), py::arg("jobs") = 1);
  m.def(
      "evaluate_corpus",
      [](const std::filesystem::path& corpus, const std::filesystem::path& detections) {
        const Corpus c = Corpus::load(corpus);
        if (!c.has_truth()) throw IoError("no truth found for " + corpus.string());
        const LengthMap lengths = c.lengths();
        return report_dict(evaluate(c.truth(), load_cases_dir(detections, &lengths)));
      },
      py::arg("corpus"), py::arg("detections"));
}
