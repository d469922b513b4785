#include <algorithm>
#include <cstdio>
#include <set>

#include "oddaut/error.hpp"
#include "oddaut/lab.hpp"

namespace oddaut {

namespace {

template <typename T>
T read_unsigned(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  }
  return static_cast<T>(v.get<std::uint64_t>());
}

std::string read_string(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::uint32_t> read_modulus(const nlohmann::json& v) {
  if (v.is_string()) return parse_modulus(v.get<std::string>());
  if (!v.is_array()) throw ConfigError("modulus must be an array of coefficients or a comma list");
  std::vector<std::uint32_t> out;
  for (const auto& c : v) {
    if (!c.is_number_unsigned()) throw ConfigError("modulus coefficients must be non-negative integers");
    out.push_back(c.get<std::uint32_t>());
  }
  return out;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Parity: return "parity";
    case Experiment::VerifyInverse: return "verify-inverse";
    case Experiment::TheoremCheck: return "theorem-check";
    case Experiment::Search: return "search";
    case Experiment::SliceCheck: return "slice-check";
  }
  return "unknown";
}

std::string to_string(SearchFamily f) {
  switch (f) {
    case SearchFamily::TameWords: return "tame-words";
    case SearchFamily::NagataConjugates: return "nagata-conjugates";
    case SearchFamily::Candidates: return "candidates";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view s) {
  for (auto e : {Experiment::Parity, Experiment::VerifyInverse, Experiment::TheoremCheck, Experiment::Search,
                 Experiment::SliceCheck}) {
    if (to_string(e) == s) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

SearchFamily parse_family(std::string_view s) {
  for (auto f : {SearchFamily::TameWords, SearchFamily::NagataConjugates, SearchFamily::Candidates}) {
    if (to_string(f) == s) return f;
  }
  throw ConfigError("unknown search family '" + std::string(s) +
                    "' (expected tame-words, nagata-conjugates or candidates)");
}

FieldPtr ExperimentConfig::make_field() const { return oddaut::make_field(p, m, modulus); }

void ExperimentConfig::set_field(std::string_view designation) {
  const FieldPtr probe = parse_field(designation);
  p = probe->p();
  m = probe->m();
  if (designation.find("mod=") != std::string_view::npos) modulus = probe->modulus();
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"field",        "modulus", "n",         "experiment",    "seed",
                                              "samples",      "word_length", "degree_bound", "output", "family",
                                              "candidates",   "inverse_check", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("field")) {
      const auto& f = j.at("field");
      if (f.is_string()) {
        c.set_field(f.get<std::string>());
      } else if (f.is_object()) {
        for (const auto& [key, value] : f.items()) {
          if (key != "p" && key != "m" && key != "modulus") throw ConfigError("unknown field key '" + key + "'");
        }
        c.p = read_unsigned<std::uint32_t>(f, "p");
        c.m = f.contains("m") ? read_unsigned<std::uint32_t>(f, "m") : 1;
        if (f.contains("modulus")) c.modulus = read_modulus(f.at("modulus"));
      } else {
        throw ConfigError("field must be a designation string or an object {p, m, modulus}");
      }
    }
    if (j.contains("modulus")) {
      if (c.modulus) throw ConfigError("modulus given twice");
      c.modulus = read_modulus(j.at("modulus"));
    }
    if (j.contains("n")) c.n = read_unsigned<std::size_t>(j, "n");
    if (j.contains("experiment")) c.experiment = parse_experiment(read_string(j, "experiment"));
    if (j.contains("seed")) c.seed = read_unsigned<std::uint64_t>(j, "seed");
    if (j.contains("samples")) c.samples = read_unsigned<std::uint64_t>(j, "samples");
    if (j.contains("word_length")) c.word_length = read_unsigned<std::size_t>(j, "word_length");
    if (j.contains("degree_bound")) c.degree_bound = read_unsigned<std::uint64_t>(j, "degree_bound");
    if (j.contains("output")) c.output = read_string(j, "output");
    if (j.contains("family")) c.family = parse_family(read_string(j, "family"));
    if (j.contains("candidates")) c.candidates = read_string(j, "candidates");
    if (j.contains("inverse_check")) {
      const auto s = read_string(j, "inverse_check");
      if (s == "always") {
        c.inverse_check = InverseCheck::Always;
      } else if (s == "odd-only") {
        c.inverse_check = InverseCheck::OddOnly;
      } else {
        throw ConfigError("inverse_check must be 'always' or 'odd-only'");
      }
    }
    if (j.contains("threads")) c.threads = read_unsigned<unsigned>(j, "threads");
  } catch (const FieldError& e) {
    throw ConfigError(std::string("field: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  try {
    (void)make_field();
  } catch (const FieldError& e) {
    throw ConfigError(std::string("field: ") + e.what());
  }
  if (n < 1 || n > kMaxVars) throw ConfigError("n must be in 1.." + std::to_string(kMaxVars));
  if (experiment == Experiment::Search) {
    if (family != SearchFamily::Candidates) {
      if (samples < 1) throw ConfigError("samples must be at least 1");
      if (word_length < 1) throw ConfigError("word_length must be at least 1");
      if (degree_bound < 1) throw ConfigError("degree_bound must be at least 1");
    }
    if (family == SearchFamily::NagataConjugates && n != 3) {
      throw ConfigError("the nagata-conjugates family needs n = 3");
    }
    if (family == SearchFamily::Candidates && candidates.empty()) {
      throw ConfigError("the candidates family needs a candidates file");
    }
  }
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["field"] = make_field()->designation();
  if (modulus) j["modulus"] = *modulus;
  j["n"] = n;
  j["experiment"] = to_string(experiment);
  j["seed"] = seed;
  j["samples"] = samples;
  j["word_length"] = word_length;
  j["degree_bound"] = degree_bound;
  j["output"] = output;
  j["family"] = to_string(family);
  if (!candidates.empty()) j["candidates"] = candidates;
  j["inverse_check"] = inverse_check == InverseCheck::Always ? "always" : "odd-only";
  j["threads"] = threads;
  return j;
}

nlohmann::ordered_json ReportRecord::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["field"] = field;
  j["n"] = n;
  j["map"] = map;
  if (!word.empty()) j["word"] = word;
  j["parity"] = parity ? nlohmann::ordered_json(to_string(*parity)) : nlohmann::ordered_json(nullptr);
  j["fixed_points"] = fixed_points ? nlohmann::ordered_json(*fixed_points) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [len, count] : cycle_histogram) hist[std::to_string(len)] = count;
  j["cycle_histogram"] = hist;
  if (group_order) j["group_order"] = *group_order;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["elapsed_ms"] = elapsed_ms;
  j["version"] = version;
  if (inverse) j["inverse"] = *inverse;
  if (inverse_verified) j["inverse_verified"] = *inverse_verified;
  j["witness"] = witness;
  if (witness) j["flag"] = "WITNESS";
  if (!notes.empty()) j["notes"] = notes;
  for (const auto& [key, value] : details.items()) j[key] = value;
  return j;
}

std::string ReportRecord::to_jsonl() const { return to_json().dump(); }

bool is_witness(const FieldSpec& field, std::optional<Parity> parity, std::optional<bool> inverse_verified) {
  return field.p() == 2 && field.m() >= 2 && parity == Parity::Odd && inverse_verified.value_or(false);
}

ReportWriter::ReportWriter(const std::string& path) {
  if (!path.empty()) {
    file_.emplace(path, std::ios::app);
    if (!*file_) throw std::runtime_error("cannot open report file '" + path + "'");
  }
}

void ReportWriter::write(const ReportRecord& record) {
  const std::string line = record.to_jsonl();
  if (file_) {
    *file_ << line << '\n';
    file_->flush();
  }
  for (auto* os : streams_) *os << line << '\n';
  ++count_;
}

}  // namespace oddaut
