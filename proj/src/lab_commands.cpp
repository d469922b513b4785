#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "oddaut/error.hpp"
#include "oddaut/lab.hpp"

namespace oddaut {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ReportRecord base_record(Experiment experiment, const FieldSpec& field, std::size_t n) {
  ReportRecord r;
  r.experiment = to_string(experiment);
  r.field = field.designation();
  r.n = n;
  return r;
}

void fill_permutation(ReportRecord& r, const Perm& perm) {
  const auto d = cycle_decomposition(perm);
  r.parity = sign(perm);
  r.fixed_points = d.fixed_points;
  r.cycle_histogram = d.histogram();
}

std::string monomial_name(const Monomial& m, std::size_t n) {
  std::string out;
  for (std::size_t v = 0; v < n; ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += "X" + std::to_string(v + 1);
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out.empty() ? "1" : out;
}

// Parity and (optionally) inverse verification of one search candidate.
// factor_verified: the inverse is a product of verified factor inverses, so
// F o G = I already holds formally by associativity.
ReportRecord evaluate_candidate(const PolyMap& map, const std::optional<PolyMap>& inverse, InverseCheck check,
                                bool factor_verified = false) {
  const auto start = Clock::now();
  ReportRecord r = base_record(Experiment::Search, map.gf(), map.dim());
  r.map = format_map(map);
  if (inverse) r.inverse = format_map(*inverse);
  try {
    fill_permutation(r, permutation_from_map(map, PointIndexer(map.field(), map.dim())));
  } catch (const NotBijectiveError& e) {
    r.notes.emplace_back(e.what());
  }
  if (inverse && r.parity && (check == InverseCheck::Always || *r.parity == Parity::Odd)) {
    r.inverse_verified = factor_verified || verify_inverse_pair(map, *inverse);
    r.details["inverse_check"] = factor_verified ? "factorwise" : "direct";
  }
  r.witness = is_witness(map.gf(), r.parity, r.inverse_verified);
  r.elapsed_ms = elapsed_ms(start);
  return r;
}

struct Candidate {
  PolyMap map;
  std::optional<PolyMap> inverse;
  std::vector<std::string> word;
};

std::vector<Candidate> read_candidate_file(const std::string& path, const FieldPtr& field, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open candidate file '" + path + "'");
  std::vector<Candidate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    const auto tab = line.find('\t');
    try {
      PolyMap map = parse_map(line.substr(0, tab), field, n);
      std::optional<PolyMap> inverse;
      if (tab != std::string::npos) inverse = parse_map(line.substr(tab + 1), field, n);
      out.push_back(Candidate{std::move(map), std::move(inverse), {}});
    } catch (const ParseError& e) {
      throw ParseError("candidate file line " + std::to_string(line_no) + ": " + e.message(), e.position());
    } catch (const std::invalid_argument& e) {
      throw DomainError("candidate file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t sample) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (sample + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ReportRecord cmd_parity(std::string_view map_text, const FieldPtr& field, std::size_t n,
                        std::optional<std::string_view> inverse_text) {
  const auto start = Clock::now();
  const PolyMap map = parse_map(map_text, field, n);
  ReportRecord r = base_record(Experiment::Parity, *field, map.dim());
  r.map = format_map(map);
  fill_permutation(r, permutation_from_map(map, PointIndexer(field, map.dim())));
  if (inverse_text) {
    const PolyMap inverse = parse_map(*inverse_text, field, map.dim());
    r.inverse = format_map(inverse);
    r.inverse_verified = verify_inverse_pair(map, inverse);
    if (!*r.inverse_verified) {
      r.notes.push_back(functional_equal(compose_maps(map, inverse), identity_map(field, map.dim()))
                            ? "supplied inverse is only a functional inverse; automorphism status not established"
                            : "supplied inverse is not an inverse");
    }
  } else {
    r.notes.push_back(
        "no inverse verified: parity of the induced bijection only, automorphism status not established");
  }
  r.witness = is_witness(*field, r.parity, r.inverse_verified);
  r.elapsed_ms = elapsed_ms(start);
  return r;
}

ReportRecord cmd_verify_inverse(std::string_view map_text, std::string_view inverse_text, const FieldPtr& field,
                                std::size_t n) {
  const auto start = Clock::now();
  const PolyMap f = parse_map(map_text, field, n);
  const PolyMap g = parse_map(inverse_text, field, f.dim());
  const PolyMap id = identity_map(field, f.dim());
  const PolyMap fg = compose_maps(f, g);
  const PolyMap gf = compose_maps(g, f);
  const bool verdict = fg == id && gf == id;

  ReportRecord r = base_record(Experiment::VerifyInverse, *field, f.dim());
  r.map = format_map(f);
  r.inverse = format_map(g);
  r.inverse_verified = verdict;
  r.details["f_after_g"] = format_map(fg);
  r.details["g_after_f"] = format_map(gf);
  if (!verdict) {
    const bool functional = functional_equal(fg, id) && functional_equal(gf, id);
    r.details["functionally_inverse"] = functional;
    if (functional) {
      r.notes.push_back("maps are mutually inverse as functions on the point set but not as polynomial maps");
    }
  }
  r.elapsed_ms = elapsed_ms(start);
  return r;
}

std::vector<AlphabetEntry> tame_alphabet(const FieldPtr& field, std::size_t n) {
  if (n < 2) throw DomainError("the tame alphabet needs n >= 2");
  const FieldSpec& gf = *field;
  std::vector<AlphabetEntry> out;

  {
    std::vector<FFElem> e = Matrix::identity(field, n).entries();
    e[0] = gf.primitive();
    out.push_back({"diag(" + format_element(gf, gf.primitive()) + ",1)", linear_map(Matrix(field, n, e))});
  }
  {
    std::vector<FFElem> e = Matrix::identity(field, n).entries();
    e[1] = FFElem{1};
    out.push_back({"transvection X1+X2", linear_map(Matrix(field, n, e))});
  }
  {
    std::vector<std::size_t> swap(n);
    for (std::size_t i = 0; i < n; ++i) swap[i] = i + 1;
    std::swap(swap[0], swap[1]);
    out.push_back({"swap X1,X2", permute_vars_map(field, swap)});
  }
  {
    std::vector<std::size_t> cycle(n);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n + 1;
    out.push_back({"variable cycle", permute_vars_map(field, cycle)});
  }

  // Monomials in X2..Xn with exponents in 0..q-1, little-endian counter.
  std::vector<FFElem> basis;
  for (std::uint32_t k = 0; k < gf.m(); ++k) basis.push_back(gf.pow(gf.gen(), k));
  if (gf.m() == 1) basis = {FFElem{1}};
  std::vector<std::uint32_t> exps(n, 0);
  while (true) {
    Monomial mono;
    for (std::size_t v = 1; v < n; ++v) mono[v] = exps[v];
    for (const auto c : basis) {
      const Poly shift = Poly::from_terms(field, n, {Term{mono, c}});
      std::string name = "X1 + ";
      if (c.index != 1) name += format_element(gf, c) + "*";
      name += monomial_name(mono, n);
      out.push_back({std::move(name), elementary_map(field, n, 1, shift)});
    }
    std::size_t v = 1;
    while (v < n) {
      if (++exps[v] < gf.q()) break;
      exps[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  return out;
}

ReportRecord cmd_theorem_check(const FieldPtr& field, std::size_t n) {
  const auto start = Clock::now();
  if (n < 2) throw DomainError("theorem-check needs n >= 2");
  const PointIndexer indexer(field, n);
  if (indexer.size() > kDegreeGuard) {
    throw DomainError("degree guard exceeded: q^n = " + std::to_string(indexer.size()) + " > " +
                      std::to_string(kDegreeGuard));
  }
  ReportRecord r = base_record(Experiment::TheoremCheck, *field, n);

  std::vector<Perm> images;
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  bool all_even = true;
  for (const auto& entry : tame_alphabet(field, n)) {
    if (!verify_inverse_pair(entry.maps.map, entry.maps.inverse)) {
      throw std::logic_error("alphabet element '" + entry.name + "' failed inverse verification");
    }
    Perm img = permutation_from_map(entry.maps.map, indexer);
    const Parity par = sign(img);
    all_even = all_even && par == Parity::Even;
    nlohmann::ordered_json g;
    g["name"] = entry.name;
    g["map"] = format_map(entry.maps.map);
    g["parity"] = to_string(par);
    gens.push_back(std::move(g));
    images.push_back(std::move(img));
  }

  const Bsgs bsgs = schreier_sims(images);
  const BigInt order = bsgs.order();
  const BigInt sym = factorial(indexer.size());
  const BigInt alt = sym / 2;
  std::string matches = "neither";
  if (order == sym) {
    matches = "Sym";
  } else if (order == alt) {
    matches = "Alt";
  }

  r.group_order = order.str();
  r.details["points"] = indexer.size();
  r.details["reading"] = n == 2 ? "TA_2 on F_q^2" : "TA_n on F_q^n, n = " + std::to_string(n);
  r.details["sym_order"] = sym.str();
  r.details["alt_order"] = alt.str();
  r.details["matches"] = matches;
  r.details["all_generators_even"] = all_even;
  r.details["base_length"] = bsgs.base().size();
  r.details["generators"] = std::move(gens);
  r.elapsed_ms = elapsed_ms(start);
  return r;
}

ReportRecord cmd_slice_check(std::string_view map_text, const FieldPtr& field, std::size_t n,
                             std::size_t fixed_var) {
  const auto start = Clock::now();
  const PolyMap f = parse_map(map_text, field, n);
  if (f.dim() < 2) throw DomainError("slice-check needs n >= 2");
  if (fixed_var == 0) fixed_var = f.dim();
  const FieldSpec& gf = *field;

  ReportRecord r = base_record(Experiment::SliceCheck, gf, f.dim());
  r.map = format_map(f);
  const PointIndexer slice_indexer(field, f.dim() - 1);
  nlohmann::ordered_json slices = nlohmann::ordered_json::array();
  Parity product = Parity::Even;
  bool all_even = true;
  for (const auto a : gf.elements()) {
    const PolyMap s = slice_map(f, fixed_var, a);
    const Parity par = sign(permutation_from_map(s, slice_indexer));
    product = product * par;
    all_even = all_even && par == Parity::Even;
    nlohmann::ordered_json rec;
    rec["value"] = format_element(gf, a);
    rec["map"] = format_map(s);
    rec["parity"] = to_string(par);
    slices.push_back(std::move(rec));
  }
  fill_permutation(r, permutation_from_map(f, PointIndexer(field, f.dim())));

  r.details["fixed_variable"] = fixed_var;
  r.details["slices"] = std::move(slices);
  r.details["slice_product"] = to_string(product);
  r.details["total_parity"] = to_string(*r.parity);
  r.details["product_matches_total"] = product == *r.parity;
  if (gf.p() == 2 && gf.m() >= 2) r.details["all_slices_even"] = all_even;
  r.notes.push_back("automorphism status not established; slice law checked on the induced permutations");
  r.elapsed_ms = elapsed_ms(start);
  return r;
}

SearchOutcome cmd_search(const ExperimentConfig& config, const RecordSink& sink) {
  config.validate();
  const FieldPtr field = config.make_field();
  SearchOutcome outcome;

  // Candidate i is built and evaluated independently of every other one, so
  // batches can be evaluated in parallel and emitted in order.
  std::vector<Candidate> file_candidates;
  std::uint64_t total = config.samples;
  if (config.family == SearchFamily::Candidates) {
    file_candidates = read_candidate_file(config.candidates, field, config.n);
    total = file_candidates.size();
  }
  const std::optional<AutPair> nagata =
      config.family == SearchFamily::NagataConjugates ? std::optional<AutPair>(nagata_map(field)) : std::nullopt;
  if (nagata && !verify_inverse_pair(nagata->map, nagata->inverse)) {
    throw std::logic_error("Nagata pair failed inverse verification");
  }

  auto evaluate = [&](std::uint64_t i) -> ReportRecord {
    switch (config.family) {
      case SearchFamily::TameWords: {
        const std::uint64_t s = sample_seed(config.seed, i);
        TameSample t = random_tame_word(field, config.n, config.word_length, config.degree_bound, s);
        ReportRecord r = evaluate_candidate(t.map, t.inverse, config.inverse_check);
        r.word = serialize_word(t.word);
        r.seed = s;
        r.details["family"] = to_string(config.family);
        r.details["sample"] = i;
        return r;
      }
      case SearchFamily::NagataConjugates: {
        const std::uint64_t s = sample_seed(config.seed, i);
        const std::size_t depth = 1 + s % std::min<std::size_t>(3, config.word_length);
        TameSample phi = random_tame_word(field, 3, depth, config.degree_bound, s);
        PolyMap map = conjugate(nagata->map, phi.map, phi.inverse);
        PolyMap inverse = compose_maps(phi.inverse, compose_maps(nagata->inverse, phi.map));
        ReportRecord r = evaluate_candidate(map, inverse, config.inverse_check, true);
        r.word = serialize_word(phi.word);
        r.seed = s;
        r.details["family"] = to_string(config.family);
        r.details["sample"] = i;
        r.details["conjugator"] = format_map(phi.map);
        return r;
      }
      case SearchFamily::Candidates: {
        const Candidate& c = file_candidates[i];
        ReportRecord r = evaluate_candidate(c.map, c.inverse, config.inverse_check);
        r.details["family"] = to_string(config.family);
        r.details["sample"] = i;
        return r;
      }
    }
    throw std::logic_error("unhandled search family");
  };

  const std::uint64_t batch = std::max<std::uint64_t>(1, config.threads);
  for (std::uint64_t first = 0; first < total; first += batch) {
    const std::uint64_t last = std::min(total, first + batch);
    std::vector<ReportRecord> results;
    if (config.threads <= 1) {
      for (std::uint64_t i = first; i < last; ++i) results.push_back(evaluate(i));
    } else {
      std::vector<std::future<ReportRecord>> futures;
      for (std::uint64_t i = first; i < last; ++i) futures.push_back(std::async(std::launch::async, evaluate, i));
      for (auto& f : futures) results.push_back(f.get());
    }
    for (const auto& r : results) {
      sink(r);
      ++outcome.records;
      if (r.witness) {
        outcome.witness_found = true;
        return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace oddaut
