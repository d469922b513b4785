#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "oddaut/error.hpp"
#include "oddaut/lab.hpp"
#include "oracles.hpp"

using namespace oddaut;
namespace fs = std::filesystem;

namespace {

const char* kNagataF4 = "X1 + X1^2*X3^3 + X2^4*X3; X2 + X1*X3^2 + X2^2*X3; X3";

std::vector<nlohmann::json> collect_search(const ExperimentConfig& c, SearchOutcome* outcome = nullptr) {
  std::vector<nlohmann::json> out;
  const auto o = cmd_search(c, [&out](const ReportRecord& r) { out.push_back(nlohmann::json::parse(r.to_jsonl())); });
  if (outcome) *outcome = o;
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "oddaut_test_lab";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(ODDAUT_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parity command") {
  const auto r = cmd_parity(kNagataF4, make_field(2, 2), 3);
  CHECK(r.parity == Parity::Even);
  CHECK(r.fixed_points == 28U);
  CHECK(r.cycle_histogram.at(2) == 18);
  CHECK_FALSE(r.witness);

  const auto t = cmd_parity("X1+X2; X2", make_field(2, 1), 2);
  CHECK(t.parity == Parity::Odd);
  CHECK(t.fixed_points == 2U);
  CHECK_FALSE(t.witness);  // F2 is not a witness field

  const auto frob = cmd_parity("X1^2; X2^2", make_field(2, 2), 2);
  CHECK(frob.parity == Parity::Even);
  REQUIRE(frob.notes.size() == 1);
  CHECK(frob.notes[0].find("no inverse verified") != std::string::npos);
  CHECK_FALSE(frob.inverse_verified.has_value());

  const auto frob_inv = cmd_parity("X1^2; X2^2", make_field(2, 2), 2, std::string_view("X1^2; X2^2"));
  CHECK(frob_inv.inverse_verified == false);
  CHECK(frob_inv.notes.at(0).find("functional inverse") != std::string::npos);

  CHECK_THROWS_AS(cmd_parity("X1*X2; X1", make_field(2, 1), 2), NotBijectiveError);
  CHECK_THROWS_AS(cmd_parity("X1 +; X2", make_field(2, 1), 2), ParseError);
}

TEST_CASE("verify-inverse command") {
  auto f3 = make_field(3, 1);
  CHECK(cmd_verify_inverse("X + Y^2; Y", "X - Y^2; Y", f3, 2).inverse_verified == true);
  auto f5 = make_field(5, 1);
  const AutPair n5 = nagata_map(f5);
  const auto r = cmd_verify_inverse(format_map(n5.map), format_map(n5.inverse), f5, 3);
  CHECK(r.inverse_verified == true);
  CHECK(r.details["f_after_g"] == "X1; X2; X3");
  const auto frob = cmd_verify_inverse("X1^2; X2^2", "X1^2; X2^2", make_field(2, 2), 2);
  CHECK(frob.inverse_verified == false);
  CHECK(frob.details["functionally_inverse"] == true);
  CHECK(frob.details["f_after_g"] == "X1^4; X2^4");
  CHECK_FALSE(frob.notes.empty());
  CHECK(cmd_verify_inverse("X1 + 1; X2", "X1; X2", f3, 2).details["functionally_inverse"] == false);
}

TEST_CASE("theorem-check command") {
  const auto f2 = cmd_theorem_check(make_field(2, 1), 2);
  CHECK(f2.group_order == "24");
  CHECK(f2.details["matches"] == "Sym");
  CHECK(f2.details["all_generators_even"] == false);

  const auto f3 = cmd_theorem_check(make_field(3, 1), 2);
  CHECK(f3.group_order == "362880");
  CHECK(f3.details["matches"] == "Sym");

  const auto f4 = cmd_theorem_check(make_field(2, 2), 2);
  CHECK(f4.group_order == "10461394944000");
  CHECK(f4.details["matches"] == "Alt");
  CHECK(f4.details["all_generators_even"] == true);
  for (const auto& g : f4.details["generators"]) CHECK(g["parity"] == "even");

  const auto f2n3 = cmd_theorem_check(make_field(2, 1), 3);
  CHECK(f2n3.group_order == "40320");
  const auto f4n3 = cmd_theorem_check(make_field(2, 2), 3);
  CHECK(f4n3.details["matches"] == "Alt");

  CHECK_THROWS_AS(cmd_theorem_check(make_field(2, 5), 3), DomainError);
  CHECK_THROWS_AS(cmd_theorem_check(make_field(2, 2), 1), DomainError);
}

TEST_CASE("tame alphabet generators are verified pairs") {
  for (auto [p, m, n] : {std::tuple{2U, 2U, 2U}, {3U, 1U, 3U}, {2U, 3U, 2U}, {3U, 2U, 2U}}) {
    const auto alphabet = tame_alphabet(make_field(p, m), n);
    // 4 linear generators plus q^(n-1) monomials times m basis elements.
    std::size_t monomials = 1;
    for (std::size_t i = 1; i < n; ++i) monomials *= make_field(p, m)->q();
    CHECK(alphabet.size() == 4 + monomials * m);
    for (const auto& e : alphabet) REQUIRE(verify_inverse_pair(e.maps.map, e.maps.inverse));
  }
}

TEST_CASE("slice-check command") {
  auto f4 = make_field(2, 2);
  const auto r = cmd_slice_check("X+Y*Z; Y+Z^2; Z", f4, 3, 0);
  CHECK(r.details["slices"].size() == 4);
  CHECK(r.details["product_matches_total"] == true);
  CHECK(r.details["all_slices_even"] == true);

  const auto id = cmd_slice_check("X1; X2; X3", f4, 3, 3);
  CHECK(id.parity == Parity::Even);
  CHECK(id.details["all_slices_even"] == true);

  const auto f2 = cmd_slice_check("X+Y; Y; Z", make_field(2, 1), 3, 3);
  CHECK(f2.details["slices"].size() == 2);
  for (const auto& s : f2.details["slices"]) CHECK(s["parity"] == "odd");
  CHECK(f2.details["slice_product"] == "even");
  CHECK(f2.parity == Parity::Even);
  CHECK_FALSE(f2.details.contains("all_slices_even"));

  CHECK_THROWS_AS(cmd_slice_check("X+Y*Z; Y+Z^2; Z+X", f4, 3, 3), DomainError);
}

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::from_json(nlohmann::json::parse(
      R"j({"field": "GF(2^3)", "n": 2, "experiment": "search", "seed": 7, "samples": 5,
          "word_length": 3, "degree_bound": 2, "output": "r.jsonl", "threads": 2})j"));
  CHECK(c.p == 2);
  CHECK(c.m == 3);
  CHECK(c.seed == 7);
  CHECK(c.threads == 2);
  const auto round = ExperimentConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  CHECK(round.to_json() == c.to_json());

  const auto obj = ExperimentConfig::from_json(nlohmann::json::parse(R"j({"field": {"p": 2, "m": 3, "modulus": [1,0,1,1]}})j"));
  CHECK(obj.make_field()->modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
  const auto inl = ExperimentConfig::from_json(nlohmann::json::parse(R"j({"field": "GF(2^3) mod=1,0,1,1"})j"));
  CHECK(inl.make_field()->modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});

  const std::vector<const char*> bad = {
      R"j([1, 2])j",
      R"j({"feild": "GF(2)"})j",
      R"j({"field": "GF(4)"})j",
      R"j({"field": "GF(2^2)", "modulus": [0, 0, 1]})j",
      R"j({"n": 0})j",
      R"j({"n": 13})j",
      R"j({"seed": -1})j",
      R"j({"seed": "7"})j",
      R"j({"experiment": "prove"})j",
      R"j({"experiment": "search", "samples": 0})j",
      R"j({"experiment": "search", "word_length": 0})j",
      R"j({"experiment": "search", "family": "wild"})j",
      R"j({"experiment": "search", "family": "nagata-conjugates", "n": 2})j",
      R"j({"experiment": "search", "family": "candidates"})j",
      R"j({"inverse_check": "never"})j",
      R"j({"threads": 0})j",
      R"j({"field": {"p": 2, "q": 4}})j",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::parse(text)), ConfigError);
  }
}

TEST_CASE("report record layout") {
  const auto r = cmd_parity("X1+X2; X2", make_field(2, 1), 2);
  const auto j = nlohmann::ordered_json::parse(r.to_jsonl());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> head = {"experiment", "field", "n", "map", "parity", "fixed_points",
                                         "cycle_histogram", "seed", "elapsed_ms", "version"};
  REQUIRE(keys.size() >= head.size());
  CHECK(std::vector<std::string>(keys.begin(), keys.begin() + head.size()) == head);
  CHECK(j["cycle_histogram"]["2"] == 1);
  CHECK(r.to_jsonl().find('\n') == std::string::npos);

  auto f4 = make_field(2, 2);
  CHECK(is_witness(*f4, Parity::Odd, true));
  CHECK_FALSE(is_witness(*f4, Parity::Odd, false));
  CHECK_FALSE(is_witness(*f4, Parity::Even, true));
  CHECK_FALSE(is_witness(*f4, Parity::Odd, std::nullopt));
  CHECK_FALSE(is_witness(*make_field(2, 1), Parity::Odd, true));
  CHECK_FALSE(is_witness(*make_field(3, 2), Parity::Odd, true));
}

TEST_CASE("search: tame words are even and reproducible") {
  ExperimentConfig c;
  c.p = 2;
  c.m = 2;
  c.n = 2;
  c.seed = 42;
  c.samples = 1000;
  SearchOutcome o;
  auto a = collect_search(c, &o);
  CHECK(o.records == 1000);
  CHECK_FALSE(o.witness_found);
  for (const auto& r : a) {
    REQUIRE(r["parity"] == "even");
    REQUIRE(r["inverse_verified"] == true);
    REQUIRE(r["inverse_check"] == "direct");
  }
  auto b = collect_search(c);
  c.threads = 4;
  auto t = collect_search(c);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == t.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i].erase("elapsed_ms");
    b[i].erase("elapsed_ms");
    t[i].erase("elapsed_ms");
    REQUIRE(a[i] == b[i]);
    REQUIRE(a[i] == t[i]);
  }
}

TEST_CASE("search records agree with an inversion-count oracle") {
  ExperimentConfig c;
  c.p = 3;
  c.m = 1;
  c.n = 2;
  c.seed = 3;
  c.samples = 60;
  const auto field = c.make_field();
  const auto records = collect_search(c);
  for (const auto& r : records) {
    const PolyMap f = parse_map(r["map"].get<std::string>(), field, 2);
    const Perm p = permutation_from_map(f, PointIndexer(field, 2));
    const int inv = oracle::inversion_parity(p.images());
    REQUIRE(r["parity"] == (inv == 1 ? "odd" : "even"));
  }
}

TEST_CASE("search: nagata conjugates") {
  ExperimentConfig c;
  c.p = 2;
  c.m = 2;
  c.n = 3;
  c.family = SearchFamily::NagataConjugates;
  c.seed = 5;
  c.samples = 100;
  c.word_length = 3;
  c.degree_bound = 2;
  const auto records = collect_search(c);
  CHECK(records.size() == 100);
  for (const auto& r : records) {
    REQUIRE(r["parity"] == "even");
    REQUIRE(r["inverse_verified"] == true);
    REQUIRE(r["inverse_check"] == "factorwise");
  }
}

TEST_CASE("search: candidate files") {
  const fs::path empty = scratch("empty.tsv");
  std::ofstream(empty).close();
  ExperimentConfig c;
  c.p = 2;
  c.m = 2;
  c.n = 2;
  c.family = SearchFamily::Candidates;
  c.candidates = empty.string();
  SearchOutcome o;
  CHECK(collect_search(c, &o).empty());
  CHECK(o.records == 0);
  CHECK_FALSE(o.witness_found);

  const fs::path cands = scratch("cands.tsv");
  std::ofstream(cands) << "# comment\n\nX1 + X2^2; X2\tX1 + X2^2; X2\nX1^2; X2^2\tX1^2; X2^2\nX2; X1\n";
  c.candidates = cands.string();
  const auto records = collect_search(c, &o);
  REQUIRE(records.size() == 3);
  CHECK(records[0]["inverse_verified"] == true);
  CHECK(records[1]["inverse_verified"] == false);
  CHECK_FALSE(records[2].contains("inverse_verified"));

  // An odd map over F3 with its inverse is not a witness (odd q).
  c.p = 3;
  c.m = 1;
  std::ofstream(cands) << "X2; X1\tX2; X1\n";
  const auto odd = collect_search(c, &o);
  CHECK(odd.at(0)["parity"] == "odd");
  CHECK(odd.at(0)["witness"] == false);

  const fs::path broken = scratch("broken.tsv");
  std::ofstream(broken) << "X1; X2\nX1 +; X2\n";
  c.candidates = broken.string();
  CHECK_THROWS_AS(collect_search(c), ParseError);
  c.candidates = (fs::temp_directory_path() / "oddaut_test_lab" / "missing.tsv").string();
  CHECK_THROWS(collect_search(c));
}

TEST_CASE("search: odd-only inverse checking") {
  ExperimentConfig c;
  c.p = 3;
  c.m = 1;
  c.n = 2;
  c.samples = 40;
  c.inverse_check = InverseCheck::OddOnly;
  for (const auto& r : collect_search(c)) {
    REQUIRE(r.contains("inverse_verified") == (r["parity"] == "odd"));
  }
}

TEST_CASE("sample seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(sample_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(sample_seed(1, 0) != sample_seed(2, 0));
}

TEST_CASE("cli exit codes and output") {
  const fs::path out = scratch("cli.txt");
  CHECK(run_cli("parity --field 'GF(2)' --map 'X1+X2; X2'", out) == 0);
  CHECK(slurp(out).find("\"parity\":\"odd\"") != std::string::npos);

  CHECK(run_cli("parity --field 'GF(2)' --map 'X1*X2; X1'", out) == 1);
  CHECK(run_cli("parity --field 'GF(4)' --map 'X1'", out) == 1);
  CHECK(run_cli("bogus", out) == 1);
  CHECK(run_cli("theorem-check --field 'GF(2)' --n 2", out) == 0);
  CHECK(slurp(out).find("\"group_order\":\"24\"") != std::string::npos);

  const fs::path report = scratch("report.jsonl");
  CHECK(run_cli("search --field 'GF(2^2)' --n 2 --samples 7 --seed 9 --out " + report.string(), out) == 0);
  std::ifstream in(report);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    CHECK(nlohmann::json::parse(line)["experiment"] == "search");
    ++lines;
  }
  CHECK(lines == 7);

  // No odd automorphism over F4 is known, so exit status 2 is unreachable here.
  const fs::path cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"j({"field": "GF(2^2)", "n": 3, "family": "nagata-conjugates", "samples": 3, "seed": 1})j";
  CHECK(run_cli("search --config " + cfg.string(), out) == 0);
  std::ofstream(cfg) << R"j({"field": "GF(2^2)", "n": 3, "famly": "x"})j";
  CHECK(run_cli("search --config " + cfg.string(), out) == 1);
  CHECK(slurp(out).find("unknown config key") != std::string::npos);
}
