// oddaut: parity, inverse verification, theorem checks, slice checks and the
// odd-automorphism search over finite fields.
//
// Exit status: 0 completed without witness, 2 WITNESS found, 1 error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oddaut/error.hpp"
#include "oddaut/lab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWitness = 2;

struct Options {
  std::string config_path;
  std::string field = "GF(2^2)";
  std::string modulus;
  std::size_t n = 0;
  std::string map;
  std::string inverse;
  std::size_t fixed = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1;
  std::size_t length = 4;
  std::uint64_t degree = 2;
  std::string family = "tame-words";
  std::string candidates;
  std::string inverse_check = "always";
  unsigned threads = 1;
  std::string out;
  bool config_has_n = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config");
  cmd->add_option("--field", o.field, "field designation, e.g. GF(2^2)");
  cmd->add_option("--mod", o.modulus, "modulus coefficients a0,a1,...,am");
  cmd->add_option("--n", o.n, "dimension (inferred from --map when omitted)");
  cmd->add_option("--out", o.out, "append JSONL records to this file");
}

// Config file first, then any flag given on the command line.
oddaut::ExperimentConfig resolve(const CLI::App& cmd, Options& o, oddaut::Experiment experiment) {
  oddaut::ExperimentConfig c;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw oddaut::ConfigError("cannot open config '" + o.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw oddaut::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    c = oddaut::ExperimentConfig::from_json(j);
    o.config_has_n = j.contains("n");
    if (j.contains("experiment") && c.experiment != experiment) {
      throw oddaut::ConfigError("config experiment '" + oddaut::to_string(c.experiment) +
                                "' does not match subcommand '" + oddaut::to_string(experiment) + "'");
    }
  }
  c.experiment = experiment;
  auto given = [&cmd](const char* flag) {
    const auto* opt = cmd.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--field") || o.config_path.empty()) {
    c.modulus.reset();
    c.set_field(o.field);
  }
  if (given("--mod")) c.modulus = oddaut::parse_modulus(o.modulus);
  if (given("--n")) c.n = o.n;
  if (given("--seed")) c.seed = o.seed;
  if (given("--samples")) c.samples = o.samples;
  if (given("--length")) c.word_length = o.length;
  if (given("--degree")) c.degree_bound = o.degree;
  if (given("--family")) c.family = oddaut::parse_family(o.family);
  if (given("--candidates")) c.candidates = o.candidates;
  if (given("--inverse-check")) {
    c.inverse_check = o.inverse_check == "odd-only" ? oddaut::InverseCheck::OddOnly : oddaut::InverseCheck::Always;
  }
  if (given("--threads")) c.threads = o.threads;
  if (given("--out")) c.output = o.out;
  return c;
}

// Map-based commands infer the dimension from the map unless one was given.
std::size_t map_dim(const CLI::App& cmd, const Options& o, const oddaut::ExperimentConfig& c) {
  return cmd.count("--n") > 0 || o.config_has_n ? c.n : 0;
}

int emit(const oddaut::ReportRecord& r, const std::string& out) {
  oddaut::ReportWriter writer(out);
  writer.add_stream(std::cout);
  writer.write(r);
  return r.witness ? kExitWitness : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial automorphisms over finite fields: parity of induced permutations"};
  app.require_subcommand(1);
  Options o;

  auto* parity = app.add_subcommand("parity", "parity and cycle type of the induced permutation");
  add_common(parity, o);
  parity->add_option("--map", o.map, "map, coordinates separated by ';'")->required();
  parity->add_option("--inverse", o.inverse, "candidate formal inverse");

  auto* verify = app.add_subcommand("verify-inverse", "check F o G = G o F = I formally");
  add_common(verify, o);
  verify->add_option("--map", o.map, "map F")->required();
  verify->add_option("--inverse", o.inverse, "map G")->required();

  auto* theorem = app.add_subcommand("theorem-check", "order of the group generated by tame images");
  add_common(theorem, o);

  auto* search = app.add_subcommand("search", "hunt for an odd automorphism");
  add_common(search, o);
  search->add_option("--seed", o.seed, "run seed");
  search->add_option("--samples", o.samples, "number of candidates");
  search->add_option("--length", o.length, "tame word length");
  search->add_option("--degree", o.degree, "degree bound of elementary letters");
  search->add_option("--family", o.family, "tame-words | nagata-conjugates | candidates");
  search->add_option("--candidates", o.candidates, "file of 'map<TAB>inverse' lines");
  search->add_option("--inverse-check", o.inverse_check, "always | odd-only")
      ->check(CLI::IsMember({"always", "odd-only"}));
  search->add_option("--threads", o.threads, "worker threads");

  auto* slice = app.add_subcommand("slice-check", "slice parities of a map fixing one variable");
  add_common(slice, o);
  slice->add_option("--map", o.map, "map fixing the chosen variable")->required();
  slice->add_option("--fixed", o.fixed, "fixed variable (1-based, default n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (parity->parsed()) {
      const auto c = resolve(*parity, o, oddaut::Experiment::Parity);
      const auto field = c.make_field();
      std::optional<std::string_view> inv;
      if (parity->count("--inverse")) inv = o.inverse;
      return emit(oddaut::cmd_parity(o.map, field, map_dim(*parity, o, c), inv), c.output);
    }
    if (verify->parsed()) {
      const auto c = resolve(*verify, o, oddaut::Experiment::VerifyInverse);
      emit(oddaut::cmd_verify_inverse(o.map, o.inverse, c.make_field(), map_dim(*verify, o, c)), c.output);
      return kExitOk;
    }
    if (theorem->parsed()) {
      const auto c = resolve(*theorem, o, oddaut::Experiment::TheoremCheck);
      return emit(oddaut::cmd_theorem_check(c.make_field(), c.n), c.output);
    }
    if (slice->parsed()) {
      const auto c = resolve(*slice, o, oddaut::Experiment::SliceCheck);
      const auto r = oddaut::cmd_slice_check(o.map, c.make_field(), map_dim(*slice, o, c), o.fixed);
      emit(r, c.output);
      if (!r.details.value("product_matches_total", true)) {
        std::cerr << "error: slice parity product disagrees with the total parity\n";
        return kExitError;
      }
      return kExitOk;
    }
    if (search->parsed()) {
      const auto c = resolve(*search, o, oddaut::Experiment::Search);
      oddaut::ReportWriter writer(c.output);
      writer.add_stream(std::cout);
      const auto outcome = oddaut::cmd_search(c, [&writer](const oddaut::ReportRecord& r) { writer.write(r); });
      if (outcome.witness_found) {
        std::cerr << "WITNESS: odd automorphism with verified inverse found\n";
        return kExitWitness;
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
