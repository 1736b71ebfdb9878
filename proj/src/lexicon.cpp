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

#include "plagkit/lexicon.hpp"

#include <algorithm>
#include <vector>

namespace plagkit::lexicon {
namespace {

constexpr SynonymEntry kEntries[] = {
    {"ability", {"capacity", "capability", "aptitude"}},
    {"accurate", {"precise", "exact", "faithful"}},
    {"achieve", {"attain", "reach", "accomplish"}},
    {"address", {"tackle", "handle", "confront"}},
    {"advantage", {"benefit", "merit", "upside"}},
    {"affect", {"influence", "alter", "shape"}},
    {"aim", {"goal", "objective", "purpose"}},
    {"allow", {"permit", "enable", "let"}},
    {"analysis", {"examination", "study", "investigation"}},
    {"apply", {"employ", "use", "utilize"}},
    {"approach", {"method", "strategy", "technique"}},
    {"appropriate", {"suitable", "fitting", "proper"}},
    {"assume", {"suppose", "presume", "posit"}},
    {"attempt", {"try", "endeavor", "effort"}},
    {"basic", {"fundamental", "elementary", "essential"}},
    {"behavior", {"conduct", "dynamics", "response"}},
    {"benchmark", {"baseline", "yardstick", "reference"}},
    {"boundary", {"border", "limit", "edge"}},
    {"build", {"construct", "assemble", "create"}},
    {"capture", {"record", "represent", "reflect"}},
    {"careful", {"meticulous", "thorough", "diligent"}},
    {"challenge", {"difficulty", "obstacle", "hurdle"}},
    {"change", {"modification", "shift", "alteration"}},
    {"choose", {"select", "pick", "opt"}},
    {"claim", {"assertion", "statement", "contention"}},
    {"clear", {"evident", "obvious", "apparent"}},
    {"collect", {"gather", "compile", "accumulate"}},
    {"combine", {"merge", "integrate", "unite"}},
    {"common", {"frequent", "widespread", "typical"}},
    {"compare", {"contrast", "juxtapose", "weigh"}},
    {"complex", {"intricate", "complicated", "elaborate"}},
    {"component", {"element", "part", "constituent"}},
    {"compute", {"calculate", "evaluate", "determine"}},
    {"concept", {"notion", "idea", "principle"}},
    {"condition", {"requirement", "constraint", "stipulation"}},
    {"consider", {"examine", "contemplate", "regard"}},
    {"consistent", {"coherent", "uniform", "stable"}},
    {"construct", {"build", "form", "establish"}},
    {"contain", {"include", "hold", "comprise"}},
    {"context", {"setting", "situation", "circumstance"}},
    {"contribution", {"addition", "input", "offering"}},
    {"control", {"regulate", "govern", "manage"}},
    {"correct", {"right", "valid", "sound"}},
    {"critical", {"crucial", "vital", "pivotal"}},
    {"current", {"present", "existing", "prevailing"}},
    {"data", {"observations", "measurements", "records"}},
    {"decrease", {"reduction", "decline", "drop"}},
    {"define", {"specify", "characterize", "delineate"}},
    {"demonstrate", {"show", "illustrate", "exhibit"}},
    {"depend", {"rely", "hinge", "rest"}},
    {"derive", {"obtain", "deduce", "infer"}},
    {"describe", {"portray", "depict", "outline"}},
    {"design", {"blueprint", "layout", "scheme"}},
    {"detail", {"particular", "specific", "aspect"}},
    {"detect", {"identify", "spot", "discover"}},
    {"determine", {"establish", "ascertain", "decide"}},
    {"develop", {"devise", "formulate", "create"}},
    {"difference", {"distinction", "discrepancy", "disparity"}},
    {"difficult", {"hard", "demanding", "tough"}},
    {"dimension", {"extent", "size", "magnitude"}},
    {"discuss", {"debate", "explore", "consider"}},
    {"distribution", {"spread", "dispersion", "allocation"}},
    {"domain", {"field", "area", "realm"}},
    {"effect", {"impact", "consequence", "influence"}},
    {"efficient", {"economical", "effective", "streamlined"}},
    {"effort", {"work", "labor", "exertion"}},
    {"emphasize", {"stress", "highlight", "underline"}},
    {"enable", {"facilitate", "empower", "permit"}},
    {"energy", {"power", "vigor", "force"}},
    {"enhance", {"improve", "boost", "strengthen"}},
    {"ensure", {"guarantee", "secure", "assure"}},
    {"entire", {"whole", "complete", "full"}},
    {"environment", {"surroundings", "setting", "milieu"}},
    {"error", {"mistake", "fault", "inaccuracy"}},
    {"essential", {"necessary", "indispensable", "key"}},
    {"estimate", {"approximation", "assessment", "guess"}},
    {"evaluate", {"assess", "appraise", "judge"}},
    {"evidence", {"proof", "support", "indication"}},
    {"examine", {"inspect", "scrutinize", "analyze"}},
    {"example", {"instance", "illustration", "case"}},
    {"exhibit", {"display", "present", "show"}},
    {"expand", {"extend", "broaden", "enlarge"}},
    {"expect", {"anticipate", "predict", "foresee"}},
    {"experiment", {"trial", "test", "investigation"}},
    {"explain", {"clarify", "elucidate", "account"}},
    {"explore", {"investigate", "probe", "survey"}},
    {"extend", {"broaden", "widen", "stretch"}},
    {"factor", {"element", "determinant", "aspect"}},
    {"feature", {"characteristic", "attribute", "trait"}},
    {"final", {"ultimate", "concluding", "last"}},
    {"focus", {"concentrate", "center", "emphasis"}},
    {"framework", {"structure", "architecture", "scaffold"}},
    {"function", {"role", "mapping", "operation"}},
    {"fundamental", {"basic", "underlying", "core"}},
    {"further", {"additional", "more", "extra"}},
    {"general", {"broad", "overall", "universal"}},
    {"generate", {"produce", "yield", "create"}},
    {"goal", {"target", "aim", "objective"}},
    {"growth", {"expansion", "increase", "rise"}},
    {"highlight", {"emphasize", "spotlight", "accentuate"}},
    {"hypothesis", {"conjecture", "supposition", "premise"}},
    {"identify", {"recognize", "pinpoint", "determine"}},
    {"impact", {"influence", "effect", "bearing"}},
    {"implement", {"execute", "realize", "carry"}},
    {"important", {"significant", "notable", "major"}},
    {"improve", {"refine", "enhance", "upgrade"}},
    {"include", {"encompass", "incorporate", "cover"}},
    {"increase", {"rise", "growth", "gain"}},
    {"indicate", {"suggest", "signal", "imply"}},
    {"individual", {"single", "separate", "distinct"}},
    {"influence", {"sway", "effect", "impact"}},
    {"information", {"knowledge", "details", "facts"}},
    {"initial", {"first", "preliminary", "early"}},
    {"insight", {"understanding", "perception", "awareness"}},
    {"interaction", {"interplay", "exchange", "coupling"}},
    {"interpret", {"construe", "read", "explain"}},
    {"investigate", {"probe", "research", "study"}},
    {"issue", {"problem", "matter", "concern"}},
    {"key", {"central", "main", "principal"}},
    {"knowledge", {"understanding", "expertise", "awareness"}},
    {"large", {"big", "substantial", "considerable"}},
    {"layer", {"level", "stratum", "tier"}},
    {"limit", {"restrict", "constrain", "cap"}},
    {"limitation", {"shortcoming", "restriction", "drawback"}},
    {"main", {"primary", "chief", "principal"}},
    {"maintain", {"preserve", "retain", "sustain"}},
    {"major", {"leading", "chief", "significant"}},
    {"measure", {"gauge", "quantify", "assess"}},
    {"mechanism", {"process", "means", "machinery"}},
    {"method", {"procedure", "technique", "approach"}},
    {"model", {"representation", "formulation", "description"}},
    {"modify", {"adjust", "alter", "adapt"}},
    {"motivate", {"inspire", "drive", "prompt"}},
    {"natural", {"inherent", "intrinsic", "organic"}},
    {"necessary", {"required", "needed", "essential"}},
    {"network", {"web", "system", "grid"}},
    {"novel", {"new", "original", "innovative"}},
    {"numerous", {"many", "several", "countless"}},
    {"observe", {"notice", "see", "witness"}},
    {"obtain", {"acquire", "get", "secure"}},
    {"occur", {"happen", "arise", "emerge"}},
    {"optimal", {"ideal", "best", "optimum"}},
    {"outcome", {"result", "consequence", "product"}},
    {"overall", {"total", "aggregate", "comprehensive"}},
    {"parameter", {"setting", "variable", "coefficient"}},
    {"particle", {"corpuscle", "grain", "fragment"}},
    {"pattern", {"motif", "regularity", "arrangement"}},
    {"perform", {"conduct", "execute", "carry"}},
    {"performance", {"efficiency", "effectiveness", "output"}},
    {"phenomenon", {"occurrence", "event", "effect"}},
    {"possible", {"feasible", "conceivable", "plausible"}},
    {"potential", {"possible", "prospective", "latent"}},
    {"precise", {"exact", "accurate", "rigorous"}},
    {"predict", {"forecast", "anticipate", "project"}},
    {"present", {"introduce", "offer", "report"}},
    {"previous", {"prior", "earlier", "preceding"}},
    {"primary", {"principal", "foremost", "chief"}},
    {"principle", {"tenet", "rule", "law"}},
    {"problem", {"question", "difficulty", "task"}},
    {"procedure", {"protocol", "routine", "process"}},
    {"process", {"operation", "course", "progression"}},
    {"produce", {"generate", "create", "yield"}},
    {"property", {"attribute", "quality", "trait"}},
    {"propose", {"suggest", "put", "advance"}},
    {"provide", {"supply", "offer", "furnish"}},
    {"quality", {"standard", "caliber", "grade"}},
    {"quantity", {"amount", "volume", "number"}},
    {"range", {"span", "spectrum", "scope"}},
    {"rapid", {"fast", "quick", "swift"}},
    {"rate", {"speed", "pace", "frequency"}},
    {"reduce", {"lower", "diminish", "decrease"}},
    {"region", {"area", "zone", "territory"}},
    {"relation", {"relationship", "connection", "link"}},
    {"relevant", {"pertinent", "applicable", "related"}},
    {"rely", {"depend", "count", "lean"}},
    {"remain", {"stay", "persist", "continue"}},
    {"represent", {"denote", "express", "embody"}},
    {"require", {"need", "demand", "necessitate"}},
    {"research", {"inquiry", "scholarship", "investigation"}},
    {"result", {"finding", "outcome", "conclusion"}},
    {"reveal", {"disclose", "uncover", "expose"}},
    {"robust", {"resilient", "sturdy", "reliable"}},
    {"role", {"part", "function", "position"}},
    {"sample", {"specimen", "subset", "selection"}},
    {"scale", {"magnitude", "extent", "size"}},
    {"significant", {"considerable", "substantial", "meaningful"}},
    {"similar", {"comparable", "alike", "analogous"}},
    {"simple", {"straightforward", "plain", "elementary"}},
    {"small", {"little", "minor", "modest"}},
    {"solution", {"answer", "resolution", "remedy"}},
    {"specific", {"particular", "distinct", "precise"}},
    {"stable", {"steady", "constant", "firm"}},
    {"strategy", {"plan", "tactic", "policy"}},
    {"strong", {"powerful", "robust", "intense"}},
    {"structure", {"organization", "arrangement", "configuration"}},
    {"study", {"analysis", "work", "research"}},
    {"substantial", {"considerable", "sizable", "ample"}},
    {"suggest", {"propose", "recommend", "imply"}},
    {"support", {"back", "sustain", "uphold"}},
    {"surface", {"exterior", "face", "boundary"}},
    {"system", {"arrangement", "setup", "apparatus"}},
    {"technique", {"method", "procedure", "practice"}},
    {"theory", {"hypothesis", "account", "doctrine"}},
    {"typical", {"standard", "usual", "normal"}},
    {"understand", {"comprehend", "grasp", "appreciate"}},
    {"unique", {"distinctive", "singular", "exclusive"}},
    {"useful", {"helpful", "valuable", "practical"}},
    {"validate", {"confirm", "verify", "corroborate"}},
    {"value", {"quantity", "magnitude", "figure"}},
    {"various", {"diverse", "assorted", "varied"}},
    {"vary", {"differ", "fluctuate", "change"}},
    {"yield", {"produce", "give", "return"}},
};

constexpr std::string_view kFunctionWords[] = {
    "the",  "a",    "an",    "of",    "in",    "on",      "for",
    "with", "and",  "to",    "by",    "from",  "that",    "this",
    "these", "is",  "are",   "was",   "were",  "be",      "has",
    "have", "can",  "may",   "which", "its",   "their",   "as",
    "at",   "into", "under", "while", "also",  "between", "within",
};

std::vector<SynonymEntry> sorted_entries() {
  std::vector<SynonymEntry> v(std::begin(kEntries), std::end(kEntries));
  std::sort(v.begin(), v.end(), [](const SynonymEntry& a, const SynonymEntry& b) {
    return a.word < b.word;
  });
  // Duplicates would make lookup ambiguous.
  v.erase(std::unique(v.begin(), v.end(),
                      [](const SynonymEntry& a, const SynonymEntry& b) {
                        return a.word == b.word;
                      }),
          v.end());
  return v;
}

}  // namespace

std::span<const SynonymEntry> synonym_table() {
  static const std::vector<SynonymEntry> table = sorted_entries();
  return table;
}

const SynonymEntry* find_synonyms(std::string_view lower_word) {
  const auto table = synonym_table();
  auto it = std::lower_bound(
      table.begin(), table.end(), lower_word,
      [](const SynonymEntry& e, std::string_view w) { return e.word < w; });
  if (it == table.end() || it->word != lower_word) return nullptr;
  return &*it;
}

std::span<const std::string_view> function_words() { return kFunctionWords; }

}  // namespace plagkit::lexicon
