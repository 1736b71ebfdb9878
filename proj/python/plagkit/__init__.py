# Copyright 2025 The Plagkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Text-reuse corpus generation, detection and evaluation."""

from plagkit._plagkit import (
    Case,
    ConfigError,
    IoError,
    ParseError,
    PlagkitError,
    ProviderError,
    Span,
    aggregate_score,
    cases_match,
    detect,
    detect_lexical,
    detect_vector,
    detected_case,
    evaluate,
    evaluate_corpus,
    f1,
    gap_between,
    generate,
    load_cases,
    overlap_length,
    paraphrase,
    plagdet,
    plagiarism_case,
    round_for_display,
    slice_report,
)

__version__ = "0.1.0"

__all__ = [
    "Case",
    "ConfigError",
    "IoError",
    "ParseError",
    "PlagkitError",
    "ProviderError",
    "Span",
    "aggregate_score",
    "cases_match",
    "detect",
    "detect_lexical",
    "detect_vector",
    "detected_case",
    "evaluate",
    "evaluate_corpus",
    "f1",
    "gap_between",
    "generate",
    "load_cases",
    "overlap_length",
    "paraphrase",
    "plagdet",
    "plagiarism_case",
    "round_for_display",
    "slice_report",
]
