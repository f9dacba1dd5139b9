// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "persuasion/cli_io.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "persuasion/anonymous_solver.h"
#include "persuasion/closure_exact.h"
#include "persuasion/simulate.h"
#include "persuasion/submodular_approx.h"

namespace persuasion {
namespace {

using Json = nlohmann::ordered_json;

absl::Status PathError(const std::string& path, absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat("at ", path.empty() ? "." : path, ": ", message));
}

absl::StatusOr<Json> ParseJson(std::string_view text) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("input is not valid JSON");
  }
  return doc;
}

absl::StatusOr<const Json*> Field(const Json& object, const std::string& path,
                                  const char* key) {
  if (!object.is_object()) return PathError(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) {
    return PathError(absl::StrCat(path, ".", key), "missing required field");
  }
  return &*it;
}

absl::StatusOr<double> Number(const Json& value, const std::string& path) {
  if (!value.is_number()) return PathError(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) return PathError(path, "number must be finite");
  return x;
}

absl::StatusOr<double> NumberField(const Json& object, const std::string& path,
                                   const char* key) {
  absl::StatusOr<const Json*> field = Field(object, path, key);
  if (!field.ok()) return field.status();
  return Number(**field, absl::StrCat(path, ".", key));
}

absl::StatusOr<int> IntField(const Json& object, const std::string& path,
                             const char* key) {
  absl::StatusOr<const Json*> field = Field(object, path, key);
  if (!field.ok()) return field.status();
  if (!(*field)->is_number_integer()) {
    return PathError(absl::StrCat(path, ".", key), "expected an integer");
  }
  return (*field)->get<int>();
}

absl::StatusOr<std::vector<double>> NumberArray(const Json& value,
                                                const std::string& path) {
  if (!value.is_array()) return PathError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    absl::StatusOr<double> x =
        Number(value[k], absl::StrCat(path, "[", k, "]"));
    if (!x.ok()) return x.status();
    out.push_back(*x);
  }
  return out;
}

absl::StatusOr<std::vector<double>> NumberArrayField(const Json& object,
                                                     const std::string& path,
                                                     const char* key) {
  absl::StatusOr<const Json*> field = Field(object, path, key);
  if (!field.ok()) return field.status();
  return NumberArray(**field, absl::StrCat(path, ".", key));
}

absl::StatusOr<std::vector<int>> IndexArray(const Json& value,
                                            const std::string& path) {
  if (!value.is_array()) return PathError(path, "expected an array");
  std::vector<int> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_number_integer()) {
      return PathError(absl::StrCat(path, "[", k, "]"),
                       "expected an integer index");
    }
    out.push_back(value[k].get<int>());
  }
  return out;
}

absl::Status CheckVersion(const Json& doc, std::string_view expected) {
  auto it = doc.find("version");
  if (it == doc.end()) return absl::OkStatus();
  if (!it->is_string() || it->get<std::string>() != expected) {
    return PathError(".version",
                     absl::StrCat("expected \"", std::string(expected), "\""));
  }
  return absl::OkStatus();
}

absl::StatusOr<SetFunction> SetFunctionFromJson(const Json& doc,
                                                const std::string& path) {
  if (!doc.is_object()) return PathError(path, "expected an object");
  for (const char* key : {"state_dependent", "by_state", "low", "high"}) {
    if (doc.contains(key)) {
      return PathError(
          path,
          "state-dependent sender utilities are not supported: the sender's "
          "utility must depend only on the set of adopting agents");
    }
  }
  absl::StatusOr<const Json*> type = Field(doc, path, "type");
  if (!type.ok()) return type.status();
  if (!(*type)->is_string()) {
    return PathError(path + ".type", "expected a string");
  }
  const std::string kind = (*type)->get<std::string>();
  absl::StatusOr<SetFunction> v = absl::InvalidArgumentError("");
  if (kind == "explicit") {
    absl::StatusOr<std::vector<double>> values =
        NumberArrayField(doc, path, "values");
    if (!values.ok()) return values.status();
    const std::size_t size = values->size();
    int n = 0;
    while ((std::size_t{1} << n) < size &&
           n <= SetFunction::kMaxExplicitAgents) {
      ++n;
    }
    if ((std::size_t{1} << n) != size) {
      return PathError(path + ".values",
                       "length must be a power of two (2^n entries)");
    }
    v = SetFunction::Explicit(n, *std::move(values));
  } else if (kind == "anonymous") {
    absl::StatusOr<std::vector<double>> f = NumberArrayField(doc, path, "f");
    if (!f.ok()) return f.status();
    v = SetFunction::Anonymous(*std::move(f));
  } else if (kind == "additive") {
    absl::StatusOr<std::vector<double>> w =
        NumberArrayField(doc, path, "weights");
    if (!w.ok()) return w.status();
    v = SetFunction::Additive(*std::move(w));
  } else if (kind == "coverage") {
    absl::StatusOr<std::vector<double>> weights =
        NumberArrayField(doc, path, "element_weights");
    if (!weights.ok()) return weights.status();
    absl::StatusOr<const Json*> covers = Field(doc, path, "covers");
    if (!covers.ok()) return covers.status();
    if (!(*covers)->is_array()) {
      return PathError(path + ".covers", "expected an array of arrays");
    }
    std::vector<std::vector<int>> sets;
    for (std::size_t i = 0; i < (*covers)->size(); ++i) {
      absl::StatusOr<std::vector<int>> set =
          IndexArray((**covers)[i], absl::StrCat(path, ".covers[", i, "]"));
      if (!set.ok()) return set.status();
      sets.push_back(*std::move(set));
    }
    v = SetFunction::Coverage(*std::move(weights), std::move(sets));
  } else {
    return PathError(path + ".type",
                     absl::StrCat("unknown set function type \"", kind,
                                  "\" (expected explicit, anonymous, "
                                  "additive or coverage)"));
  }
  if (!v.ok()) return PathError(path, v.status().message());
  return v;
}

Json SetFunctionToJson(const SetFunction& v) {
  Json doc;
  switch (v.kind()) {
    case SetFunction::Kind::kExplicit:
      doc["type"] = "explicit";
      doc["values"] = v.explicit_values();
      break;
    case SetFunction::Kind::kAnonymous:
      doc["type"] = "anonymous";
      doc["f"] = v.cardinality_profile();
      break;
    case SetFunction::Kind::kAdditive:
      doc["type"] = "additive";
      doc["weights"] = v.additive_weights();
      break;
    case SetFunction::Kind::kCoverage:
      doc["type"] = "coverage";
      doc["element_weights"] = v.element_weights();
      doc["covers"] = v.covers();
      break;
  }
  return doc;
}

std::string FormatNumber(const Json& value) {
  if (value.is_number_unsigned()) {
    return std::to_string(value.get<std::uint64_t>());
  }
  if (value.is_number_integer()) {
    return std::to_string(value.get<std::int64_t>());
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value.get<double>());
  return buffer;
}

bool IsScalar(const Json& value) {
  return !value.is_object() && !value.is_array();
}

// Pretty printer with 17-significant-digit floats. Arrays whose elements
// are all scalars stay on one line.
void WriteCanonical(const Json& value, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (value.is_object()) {
    if (value.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      WriteCanonical(it.value(), indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (value.is_array()) {
    const bool flat = std::all_of(value.begin(), value.end(), IsScalar);
    if (value.empty()) {
      out += "[]";
    } else if (flat) {
      out += "[";
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (k > 0) out += ", ";
        WriteCanonical(value[k], indent, out);
      }
      out += "]";
    } else {
      out += "[\n";
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (k > 0) out += ",\n";
        out += pad;
        WriteCanonical(value[k], indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "]";
    }
  } else if (value.is_number()) {
    out += FormatNumber(value);
  } else {
    out += value.dump();
  }
}

std::string Canonical(const Json& value) {
  std::string out;
  WriteCanonical(value, 0, out);
  out += "\n";
  return out;
}

}  // namespace

absl::StatusOr<SetFunction> ParseSetFunction(std::string_view text) {
  absl::StatusOr<Json> doc = ParseJson(text);
  if (!doc.ok()) return doc.status();
  return SetFunctionFromJson(*doc, "");
}

absl::StatusOr<PersuasionProfile> ParseProfile(std::string_view text) {
  absl::StatusOr<Json> doc = ParseJson(text);
  if (!doc.ok()) return doc.status();
  std::string path;
  const Json* levels = &*doc;
  if (doc->is_object()) {
    absl::StatusOr<const Json*> field = Field(*doc, "", "a");
    if (!field.ok()) return field.status();
    levels = *field;
    path = ".a";
  }
  absl::StatusOr<std::vector<double>> values = NumberArray(*levels, path);
  if (!values.ok()) return values.status();
  absl::StatusOr<PersuasionProfile> profile =
      PersuasionProfile::Create(*std::move(values));
  if (!profile.ok()) return PathError(path, profile.status().message());
  return profile;
}

absl::StatusOr<PersuasionInstance> ParseInstance(std::string_view text) {
  absl::StatusOr<Json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const Json& doc = *parsed;
  if (!doc.is_object()) return PathError("", "expected an object");
  if (auto s = CheckVersion(doc, kInstanceVersion); !s.ok()) return s;

  absl::StatusOr<int> n = IntField(doc, "", "n");
  if (!n.ok()) return n.status();
  if (*n < 1) return PathError(".n", "need at least one agent");
  absl::StatusOr<double> gamma = NumberField(doc, "", "gamma");
  if (!gamma.ok()) return gamma.status();
  if (!(*gamma > 0.0 && *gamma < 1.0)) {
    return PathError(".gamma", "prior must lie strictly between 0 and 1");
  }

  absl::StatusOr<const Json*> agents_json = Field(doc, "", "agents");
  if (!agents_json.ok()) return agents_json.status();
  if (!(*agents_json)->is_array()) {
    return PathError(".agents", "expected an array");
  }
  if (static_cast<int>((*agents_json)->size()) != *n) {
    return PathError(".agents", absl::StrCat("expected ", *n, " agents, got ",
                                             (*agents_json)->size()));
  }
  std::vector<AgentUtility> agents;
  for (int i = 0; i < *n; ++i) {
    const std::string path = absl::StrCat(".agents[", i, "]");
    const Json& a = (**agents_json)[i];
    AgentUtility u;
    for (auto [key, slot] :
         {std::pair{"u00", &u.u00}, std::pair{"u01", &u.u01},
          std::pair{"u10", &u.u10}, std::pair{"u11", &u.u11}}) {
      absl::StatusOr<double> x = NumberField(a, path, key);
      if (!x.ok()) return x.status();
      *slot = *x;
    }
    if (auto s = ValidateAgentUtility(u); !s.ok()) {
      return PathError(path, absl::StrCat("agent ", i, ": ", s.message()));
    }
    agents.push_back(u);
  }

  absl::StatusOr<const Json*> sender_json = Field(doc, "", "sender");
  if (!sender_json.ok()) return sender_json.status();
  absl::StatusOr<SetFunction> sender =
      SetFunctionFromJson(**sender_json, ".sender");
  if (!sender.ok()) return sender.status();
  if (sender->num_agents() != *n) {
    return PathError(".sender",
                     absl::StrCat("defined over ", sender->num_agents(),
                                  " agents, expected ", *n));
  }
  absl::StatusOr<PersuasionInstance> instance =
      PersuasionInstance::Create(*gamma, std::move(agents), *std::move(sender));
  if (!instance.ok()) return PathError("", instance.status().message());
  return instance;
}

std::string EmitSetFunction(const SetFunction& v) {
  return Canonical(SetFunctionToJson(v));
}

std::string EmitInstance(const PersuasionInstance& instance) {
  Json doc;
  doc["version"] = kInstanceVersion;
  doc["n"] = instance.n();
  doc["gamma"] = instance.gamma();
  Json agents = Json::array();
  for (const AgentUtility& a : instance.agents()) {
    Json agent;
    agent["u00"] = a.u00;
    agent["u01"] = a.u01;
    agent["u10"] = a.u10;
    agent["u11"] = a.u11;
    agents.push_back(std::move(agent));
  }
  doc["agents"] = std::move(agents);
  doc["sender"] = SetFunctionToJson(instance.sender());
  return Canonical(doc);
}

std::string EmitPolicy(const PolicyDocument& policy) {
  Json doc;
  doc["version"] = kPolicyVersion;
  doc["n"] = policy.n;
  Json support = Json::array();
  for (const WeightedSet& entry : policy.f0.support()) {
    Json item;
    item["set"] = entry.set;
    item["prob"] = entry.prob;
    support.push_back(std::move(item));
  }
  doc["f0_support"] = std::move(support);
  doc["marginals"] = policy.marginals;
  doc["closure_value"] = policy.closure_value;
  doc["revenue"] = policy.revenue;
  doc["method"] = policy.method;
  doc["guarantee"] = policy.guarantee;
  if (policy.seed.has_value()) doc["seed"] = *policy.seed;
  return Canonical(doc);
}

absl::StatusOr<PolicyDocument> ParsePolicy(std::string_view text) {
  absl::StatusOr<Json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const Json& doc = *parsed;
  if (!doc.is_object()) return PathError("", "expected an object");
  if (auto s = CheckVersion(doc, kPolicyVersion); !s.ok()) return s;

  PolicyDocument policy;
  absl::StatusOr<int> n = IntField(doc, "", "n");
  if (!n.ok()) return n.status();
  if (*n < 0) return PathError(".n", "must be nonnegative");
  policy.n = *n;

  absl::StatusOr<const Json*> support_json = Field(doc, "", "f0_support");
  if (!support_json.ok()) return support_json.status();
  if (!(*support_json)->is_array()) {
    return PathError(".f0_support", "expected an array");
  }
  std::vector<WeightedSet> support;
  for (std::size_t k = 0; k < (*support_json)->size(); ++k) {
    const std::string path = absl::StrCat(".f0_support[", k, "]");
    const Json& item = (**support_json)[k];
    absl::StatusOr<const Json*> set_json = Field(item, path, "set");
    if (!set_json.ok()) return set_json.status();
    absl::StatusOr<std::vector<int>> set =
        IndexArray(**set_json, path + ".set");
    if (!set.ok()) return set.status();
    if (!IsCanonicalSet(*set, *n)) {
      return PathError(path + ".set",
                       "must be ascending distinct indices below n");
    }
    absl::StatusOr<double> prob = NumberField(item, path, "prob");
    if (!prob.ok()) return prob.status();
    support.push_back({*std::move(set), *prob});
  }
  absl::StatusOr<SubsetDistribution> f0 =
      SubsetDistribution::Create(*n, std::move(support));
  if (!f0.ok()) return PathError(".f0_support", f0.status().message());
  policy.f0 = *std::move(f0);

  if (doc.contains("marginals")) {
    absl::StatusOr<std::vector<double>> marginals =
        NumberArrayField(doc, "", "marginals");
    if (!marginals.ok()) return marginals.status();
    policy.marginals = *std::move(marginals);
  } else {
    policy.marginals = policy.f0.Marginals();
  }
  for (auto [key, slot] : {std::pair{"closure_value", &policy.closure_value},
                           std::pair{"revenue", &policy.revenue},
                           std::pair{"guarantee", &policy.guarantee}}) {
    if (!doc.contains(key)) continue;
    absl::StatusOr<double> x = NumberField(doc, "", key);
    if (!x.ok()) return x.status();
    *slot = *x;
  }
  if (doc.contains("method")) {
    if (!doc["method"].is_string()) {
      return PathError(".method", "expected a string");
    }
    policy.method = doc["method"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      return PathError(".seed", "expected a nonnegative integer");
    }
    policy.seed = doc["seed"].get<std::uint64_t>();
  }
  return policy;
}

namespace {

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return 2;
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kResourceExhausted:
      return 3;
    default:
      return 4;
  }
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteOutput(const std::string& text, const std::string& path,
                         std::ostream& out) {
  if (path.empty()) {
    out << text;
    return absl::OkStatus();
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    return absl::NotFoundError(absl::StrCat("cannot write ", path));
  }
  return absl::OkStatus();
}

PolicyDocument MakeDocument(const SignalingPolicy& policy,
                            const ClosureResult& closure, double revenue,
                            std::optional<std::uint64_t> seed) {
  PolicyDocument doc;
  doc.n = policy.n();
  doc.f0 = policy.f0();
  doc.marginals = policy.f0().Marginals();
  doc.closure_value = closure.value;
  doc.revenue = revenue;
  doc.method = std::string(MethodTag(closure));
  doc.guarantee = closure.guarantee;
  doc.seed = seed;
  return doc;
}

struct Loaded {
  std::optional<PersuasionInstance> instance;
  std::optional<PolicyDocument> policy;
};

// Reading failures are usage errors (exit 1); content errors keep their
// own status.
int LoadInstance(const std::string& path, Loaded& loaded, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) {
    err << "error: " << text.status().message() << "\n";
    return 1;
  }
  absl::StatusOr<PersuasionInstance> instance = ParseInstance(*text);
  if (!instance.ok()) {
    err << "error: " << path << ": " << instance.status().message() << "\n";
    return ExitCodeFor(instance.status());
  }
  loaded.instance.emplace(*std::move(instance));
  return 0;
}

int LoadPolicy(const std::string& path, Loaded& loaded, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) {
    err << "error: " << text.status().message() << "\n";
    return 1;
  }
  absl::StatusOr<PolicyDocument> policy = ParsePolicy(*text);
  if (!policy.ok()) {
    err << "error: " << path << ": " << policy.status().message() << "\n";
    return ExitCodeFor(policy.status());
  }
  loaded.policy.emplace(*std::move(policy));
  return 0;
}

int RunSolve(const std::string& instance_path, const std::string& algorithm,
             std::optional<double> delta, std::uint64_t seed, int cg_steps,
             int cg_samples, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  Loaded loaded;
  if (int code = LoadInstance(instance_path, loaded, err); code != 0) {
    return code;
  }
  const PersuasionInstance& instance = *loaded.instance;
  std::string chosen = algorithm;
  if (chosen == "auto") {
    chosen = IsAnonymous(instance.sender()).has_value() ? "anonymous"
                                                        : "submodular-greedy";
  }
  PolicyDocument doc;
  if (chosen == "anonymous") {
    absl::StatusOr<AnonymousSolution> solution = SolveAnonymous(instance);
    if (!solution.ok()) return Fail(solution.status(), err);
    doc = MakeDocument(solution->policy, solution->closure.closure,
                       solution->revenue, std::nullopt);
  } else {
    SubmodularConfig config;
    config.delta = delta;
    config.seed = seed;
    config.continuous_greedy.steps = cg_steps;
    config.continuous_greedy.samples = cg_samples;
    config.algorithm = chosen == "submodular-cg"
                           ? MatroidAlgorithm::kContinuousGreedy
                           : MatroidAlgorithm::kGreedy;
    absl::StatusOr<SubmodularSolution> solution =
        SolveSubmodular(instance, config);
    if (!solution.ok()) return Fail(solution.status(), err);
    std::optional<std::uint64_t> stochastic_seed;
    if (config.algorithm == MatroidAlgorithm::kContinuousGreedy) {
      stochastic_seed = seed;
    }
    doc = MakeDocument(solution->policy, solution->closure.closure,
                       solution->revenue, stochastic_seed);
  }
  if (auto s = WriteOutput(EmitPolicy(doc), out_path, out); !s.ok()) {
    err << "error: " << s.message() << "\n";
    return 1;
  }
  return 0;
}

int RunExact(const std::string& instance_path, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
  Loaded loaded;
  if (int code = LoadInstance(instance_path, loaded, err); code != 0) {
    return code;
  }
  const PersuasionInstance& instance = *loaded.instance;
  absl::StatusOr<ClosureResult> closure =
      ConcaveClosureExact(instance.sender(), ProfileOf(instance));
  if (!closure.ok()) return Fail(closure.status(), err);
  absl::StatusOr<SignalingPolicy> policy =
      PolicyFromDistribution(closure->mu, instance);
  if (!policy.ok()) return Fail(policy.status(), err);
  absl::StatusOr<double> revenue = Revenue(*policy, instance);
  if (!revenue.ok()) return Fail(revenue.status(), err);
  const PolicyDocument doc =
      MakeDocument(*policy, *closure, *revenue, std::nullopt);
  if (auto s = WriteOutput(EmitPolicy(doc), out_path, out); !s.ok()) {
    err << "error: " << s.message() << "\n";
    return 1;
  }
  return 0;
}

int RunVerify(const std::string& instance_path, const std::string& policy_path,
              std::ostream& out, std::ostream& err) {
  Loaded loaded;
  if (int code = LoadInstance(instance_path, loaded, err); code != 0) {
    return code;
  }
  if (int code = LoadPolicy(policy_path, loaded, err); code != 0) return code;
  const SignalingPolicy policy(loaded.policy->f0);
  const IcReport report =
      VerifyIncentiveCompatibility(policy, *loaded.instance);
  Json doc;
  doc["ok"] = report.ok;
  doc["marginals"] = report.marginals;
  Json violations = Json::array();
  for (const IcViolation& v : report.violations) {
    Json item;
    item["agent"] = v.agent;
    item["reason"] = v.reason;
    violations.push_back(std::move(item));
    err << "violation at agent " << v.agent << ": " << v.reason << "\n";
  }
  doc["violations"] = std::move(violations);
  out << Canonical(doc);
  return report.ok ? 0 : 3;
}

int RunSimulate(const std::string& instance_path,
                const std::string& policy_path, std::int64_t trials,
                std::uint64_t seed, std::ostream& out, std::ostream& err) {
  Loaded loaded;
  if (int code = LoadInstance(instance_path, loaded, err); code != 0) {
    return code;
  }
  if (int code = LoadPolicy(policy_path, loaded, err); code != 0) return code;
  const SignalingPolicy policy(loaded.policy->f0);
  absl::StatusOr<SimulationReport> report =
      RunSimulation(policy, *loaded.instance, trials, seed);
  if (!report.ok()) return Fail(report.status(), err);
  absl::StatusOr<double> revenue = Revenue(policy, *loaded.instance);
  if (!revenue.ok()) return Fail(revenue.status(), err);
  Json doc;
  doc["trials"] = report->trials;
  doc["seed"] = seed;
  doc["empirical_revenue"] = report->empirical_revenue;
  doc["std_error"] = report->std_error;
  doc["analytic_revenue"] = *revenue;
  doc["disobedience_count"] = report->disobedience_count;
  doc["state_count"] = report->state_count;
  Json rates;
  rates["low"] = report->adoption_rate[0];
  rates["high"] = report->adoption_rate[1];
  doc["adoption_rate"] = std::move(rates);
  out << Canonical(doc);
  return 0;
}

int RunGadget(const std::string& setfn_path, const std::string& profile_path,
              double gamma, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  absl::StatusOr<std::string> setfn_text = ReadFile(setfn_path);
  if (!setfn_text.ok()) return Fail(setfn_text.status(), err), 1;
  absl::StatusOr<std::string> profile_text = ReadFile(profile_path);
  if (!profile_text.ok()) return Fail(profile_text.status(), err), 1;
  absl::StatusOr<SetFunction> v = ParseSetFunction(*setfn_text);
  if (!v.ok()) return Fail(v.status(), err);
  absl::StatusOr<PersuasionProfile> profile = ParseProfile(*profile_text);
  if (!profile.ok()) return Fail(profile.status(), err);
  absl::StatusOr<PersuasionInstance> instance =
      GadgetFromClosure(*v, *profile, gamma);
  if (!instance.ok()) return Fail(instance.status(), err);
  if (auto s = WriteOutput(EmitInstance(*instance), out_path, out); !s.ok()) {
    err << "error: " << s.message() << "\n";
    return 1;
  }
  return 0;
}

int RunCheck(const std::string& setfn_path, int n, std::ostream& out,
             std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(setfn_path);
  if (!text.ok()) return Fail(text.status(), err), 1;
  absl::StatusOr<SetFunction> v = ParseSetFunction(*text);
  if (!v.ok()) return Fail(v.status(), err);
  if (v->num_agents() != n) {
    return Fail(absl::InvalidArgumentError(
                    absl::StrCat("set function is defined over ",
                                 v->num_agents(), " agents, but --n is ", n)),
                err);
  }
  absl::StatusOr<bool> monotone = IsMonotone(*v);
  if (!monotone.ok()) return Fail(monotone.status(), err);
  absl::StatusOr<bool> submodular = IsSubmodular(*v);
  if (!submodular.ok()) return Fail(submodular.status(), err);
  Json doc;
  doc["n"] = n;
  doc["monotone"] = *monotone;
  doc["submodular"] = *submodular;
  if (auto f = IsAnonymous(*v); f.has_value()) {
    doc["anonymous"] = *f;
  } else {
    doc["anonymous"] = nullptr;
  }
  out << Canonical(doc);
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Optimal private signaling policies for Bayesian persuasion",
               "persuasion"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string policy_path;
  std::string out_path;
  std::string algorithm = "auto";
  std::optional<double> delta;
  std::uint64_t seed = 0;
  int cg_steps = ContinuousGreedyOptions{}.steps;
  int cg_samples = ContinuousGreedyOptions{}.samples;
  std::int64_t trials = 100000;
  std::string setfn_path;
  std::string profile_path;
  double gamma = kDefaultGadgetGamma;
  int check_n = 0;

  CLI::App* solve = app.add_subcommand("solve", "Compute a signaling policy");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_option("--algorithm", algorithm, "Solver")
      ->check(CLI::IsMember(
          {"auto", "anonymous", "submodular-greedy", "submodular-cg"}));
  solve->add_option("--delta", delta, "Discretization grid size");
  solve->add_option("--seed", seed, "Seed for continuous greedy");
  solve->add_option("--cg-steps", cg_steps, "Continuous greedy time steps");
  solve->add_option("--cg-samples", cg_samples,
                    "Samples per gradient estimate");
  solve->add_option("--out", out_path, "Write the policy here");

  CLI::App* exact =
      app.add_subcommand("exact", "Exact concave closure (small n)");
  exact->add_option("instance", instance_path, "Instance JSON")->required();
  exact->add_option("--out", out_path, "Write the policy here");

  CLI::App* verify =
      app.add_subcommand("verify", "Check incentive compatibility");
  verify->add_option("instance", instance_path, "Instance JSON")->required();
  verify->add_option("policy", policy_path, "Policy JSON")->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo replay of a policy");
  simulate->add_option("instance", instance_path, "Instance JSON")->required();
  simulate->add_option("policy", policy_path, "Policy JSON")->required();
  simulate->add_option("--trials", trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Seed");

  CLI::App* gadget = app.add_subcommand(
      "gadget", "Instance whose optimal revenue encodes a closure value");
  gadget->add_option("--setfn", setfn_path, "Set function JSON")->required();
  gadget->add_option("--profile", profile_path, "Profile JSON")->required();
  gadget->add_option("--gamma", gamma, "Prior of the high state");
  gadget->add_option("--out", out_path, "Write the instance here");

  CLI::App* check =
      app.add_subcommand("check", "Structural checks of a set function");
  check->add_option("setfn", setfn_path, "Set function JSON")->required();
  check->add_option("--n", check_n, "Number of agents")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    for (CLI::App* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return 1;
  }

  if (solve->parsed()) {
    return RunSolve(instance_path, algorithm, delta, seed, cg_steps, cg_samples,
                    out_path, out, err);
  }
  if (exact->parsed()) return RunExact(instance_path, out_path, out, err);
  if (verify->parsed()) return RunVerify(instance_path, policy_path, out, err);
  if (simulate->parsed()) {
    return RunSimulate(instance_path, policy_path, trials, seed, out, err);
  }
  if (gadget->parsed()) {
    return RunGadget(setfn_path, profile_path, gamma, out_path, out, err);
  }
  if (check->parsed()) return RunCheck(setfn_path, check_n, out, err);
  err << app.help();
  return 1;
}

}  // namespace persuasion
