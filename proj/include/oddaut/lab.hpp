#ifndef ODDAUT_LAB_HPP
#define ODDAUT_LAB_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oddaut/autmap.hpp"
#include "oddaut/gf.hpp"
#include "oddaut/permgrp.hpp"

namespace oddaut {

inline constexpr const char* kVersion = "0.1.0";
// Largest point set accepted by theorem-check.
inline constexpr std::uint32_t kDegreeGuard = 4096;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment { Parity, VerifyInverse, TheoremCheck, Search, SliceCheck };

enum class SearchFamily {
  TameWords,         // random tame words
  NagataConjugates,  // Nagata conjugated by short random tame words (n = 3)
  Candidates,        // map/inverse pairs read from a file
};

enum class InverseCheck { Always, OddOnly };

std::string to_string(Experiment e);
std::string to_string(SearchFamily f);
Experiment parse_experiment(std::string_view s);
SearchFamily parse_family(std::string_view s);

struct ExperimentConfig {
  std::uint32_t p = 2;
  std::uint32_t m = 2;
  std::optional<std::vector<std::uint32_t>> modulus;
  std::size_t n = 2;
  Experiment experiment = Experiment::Search;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1;
  std::size_t word_length = 4;
  std::uint64_t degree_bound = 2;
  std::string output;

  SearchFamily family = SearchFamily::TameWords;
  std::string candidates;
  InverseCheck inverse_check = InverseCheck::Always;
  unsigned threads = 1;

  FieldPtr make_field() const;
  void set_field(std::string_view designation);

  // Throws ConfigError on unknown keys, wrong types or out-of-range values.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
  void validate() const;
};

/// One line of a JSONL report.
struct ReportRecord {
  std::string experiment;
  std::string field;
  std::size_t n = 0;
  std::string map;
  std::vector<std::string> word;
  std::optional<Parity> parity;
  std::optional<std::uint32_t> fixed_points;
  std::map<std::uint32_t, std::uint32_t> cycle_histogram;
  std::optional<std::string> group_order;
  std::optional<std::uint64_t> seed;
  double elapsed_ms = 0.0;
  std::string version = kVersion;

  std::optional<std::string> inverse;
  std::optional<bool> inverse_verified;
  bool witness = false;
  std::vector<std::string> notes;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  std::string to_jsonl() const;  // one line, no trailing newline
};

/// Odd permutation plus verified formal inverse over F_{2^m}, m >= 2.
bool is_witness(const FieldSpec& field, std::optional<Parity> parity, std::optional<bool> inverse_verified);

/// Appends records to a JSONL file (and/or stream), one object per line, in
/// submission order.
class ReportWriter {
 public:
  ReportWriter() = default;
  explicit ReportWriter(const std::string& path);
  void add_stream(std::ostream& os) { streams_.push_back(&os); }
  void write(const ReportRecord& record);
  std::size_t count() const noexcept { return count_; }

 private:
  std::optional<std::ofstream> file_;
  std::vector<std::ostream*> streams_;
  std::size_t count_ = 0;
};

ReportRecord cmd_parity(std::string_view map_text, const FieldPtr& field, std::size_t n,
                        std::optional<std::string_view> inverse_text = std::nullopt);

ReportRecord cmd_verify_inverse(std::string_view map_text, std::string_view inverse_text, const FieldPtr& field,
                                std::size_t n);

struct AlphabetEntry {
  std::string name;
  AutPair maps;
};

/// Tame image generators: diag(c,1,..,1) for a primitive c, the transvection
/// X1 + X2, the swap of X1 and X2, the n-cycle of variables, and the
/// elementary maps X1 + c M for every monomial M in X2..Xn with exponents
/// <= q-1 and c in the F_p-basis {1, g, ..., g^(m-1)}.
std::vector<AlphabetEntry> tame_alphabet(const FieldPtr& field, std::size_t n);

ReportRecord cmd_theorem_check(const FieldPtr& field, std::size_t n);

ReportRecord cmd_slice_check(std::string_view map_text, const FieldPtr& field, std::size_t n,
                             std::size_t fixed_var);

struct SearchOutcome {
  std::size_t records = 0;
  bool witness_found = false;
};

using RecordSink = std::function<void(const ReportRecord&)>;

/// Generates config.samples candidates of the configured family and emits one
/// record each, in order; stops right after the first witness.
SearchOutcome cmd_search(const ExperimentConfig& config, const RecordSink& sink);

/// Per-sample seed derived from the run seed (splitmix64).
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t sample);

}  // namespace oddaut

#endif  // ODDAUT_LAB_HPP
