#include "oddaut/autmap.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oddaut/error.hpp"

namespace oddaut {

namespace {

void check_same_space(const PolyMap& f, const PolyMap& g) {
  if (f.dim() != g.dim()) {
    throw MismatchError("dimension mismatch: " + std::to_string(f.dim()) + " vs " + std::to_string(g.dim()));
  }
  if (!same_field(f.field(), g.field())) throw MismatchError("field mismatch");
}

// Calls visit(point) for every point of F_q^n, X_1 varying fastest.
template <typename Visit>
void for_each_point(const FieldSpec& gf, std::size_t n, Visit&& visit) {
  std::vector<FFElem> point(n, FFElem{0});
  while (true) {
    visit(std::span<const FFElem>(point));
    std::size_t k = 0;
    while (k < n) {
      if (++point[k].index < gf.q()) break;
      point[k].index = 0;
      ++k;
    }
    if (k == n) return;
  }
}

}  // namespace

PolyMap::PolyMap(FieldPtr field, std::vector<Poly> coords) : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw DomainError("map needs a field");
  if (coords_.empty()) throw DomainError("map needs at least one coordinate");
  for (const auto& c : coords_) {
    if (c.n_vars() != coords_.size()) {
      throw MismatchError("coordinate has " + std::to_string(c.n_vars()) + " variables in a map of dimension " +
                          std::to_string(coords_.size()));
    }
    if (!same_field(c.field(), field_)) throw MismatchError("coordinate field differs from map field");
  }
}

std::uint64_t PolyMap::degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& c : coords_) d = std::max(d, c.degree());
  return d;
}

bool operator==(const PolyMap& a, const PolyMap& b) {
  return same_field(a.field_, b.field_) && a.coords_ == b.coords_;
}

Matrix::Matrix(FieldPtr field, std::size_t n, std::vector<FFElem> entries)
    : field_(std::move(field)), n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw DomainError("matrix needs n*n entries");
  for (auto e : entries_) {
    if (!field_->valid(e)) throw DomainError("invalid matrix entry");
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  std::vector<FFElem> e(n * n, FFElem{0});
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = FFElem{1};
  return Matrix(std::move(field), n, std::move(e));
}

FFElem Matrix::determinant() const {
  const FieldSpec& gf = *field_;
  std::vector<FFElem> a = entries_;
  FFElem det{1};
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && a[pivot * n_ + col].index == 0) ++pivot;
    if (pivot == n_) return FFElem{0};
    if (pivot != col) {
      for (std::size_t k = 0; k < n_; ++k) std::swap(a[pivot * n_ + k], a[col * n_ + k]);
      det = gf.neg(det);
    }
    const FFElem pv = a[col * n_ + col];
    det = gf.mul(det, pv);
    const FFElem pinv = gf.inv(pv);
    for (std::size_t r = col + 1; r < n_; ++r) {
      const FFElem factor = gf.mul(a[r * n_ + col], pinv);
      if (factor.index == 0) continue;
      for (std::size_t k = col; k < n_; ++k) {
        a[r * n_ + k] = gf.sub(a[r * n_ + k], gf.mul(factor, a[col * n_ + k]));
      }
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  const FieldSpec& gf = *field_;
  std::vector<FFElem> a = entries_;
  std::vector<FFElem> inv = identity(field_, n_).entries_;
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && a[pivot * n_ + col].index == 0) ++pivot;
    if (pivot == n_) throw DomainError("singular matrix");
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(a[pivot * n_ + k], a[col * n_ + k]);
      std::swap(inv[pivot * n_ + k], inv[col * n_ + k]);
    }
    const FFElem pinv = gf.inv(a[col * n_ + col]);
    for (std::size_t k = 0; k < n_; ++k) {
      a[col * n_ + k] = gf.mul(a[col * n_ + k], pinv);
      inv[col * n_ + k] = gf.mul(inv[col * n_ + k], pinv);
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == col) continue;
      const FFElem factor = a[r * n_ + col];
      if (factor.index == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        a[r * n_ + k] = gf.sub(a[r * n_ + k], gf.mul(factor, a[col * n_ + k]));
        inv[r * n_ + k] = gf.sub(inv[r * n_ + k], gf.mul(factor, inv[col * n_ + k]));
      }
    }
  }
  return Matrix(field_, n_, std::move(inv));
}

PolyMap identity_map(FieldPtr field, std::size_t n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  std::vector<Poly> coords;
  coords.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) coords.push_back(Poly::variable(field, n, i));
  return PolyMap(std::move(field), std::move(coords));
}

PolyMap compose_maps(const PolyMap& f, const PolyMap& g) {
  check_same_space(f, g);
  std::vector<Poly> coords;
  coords.reserve(f.dim());
  for (const auto& fi : f.coords()) coords.push_back(fi.substitute(g.coords()));
  return PolyMap(f.field(), std::move(coords));
}

std::vector<FFElem> eval_map(const PolyMap& f, std::span<const FFElem> point) {
  if (point.size() != f.dim()) throw MismatchError("point arity does not match map dimension");
  std::vector<FFElem> out;
  out.reserve(f.dim());
  for (const auto& c : f.coords()) out.push_back(c.eval(point));
  return out;
}

bool verify_inverse_pair(const PolyMap& f, const PolyMap& g) {
  check_same_space(f, g);
  const PolyMap id = identity_map(f.field(), f.dim());
  return compose_maps(f, g) == id && compose_maps(g, f) == id;
}

bool functional_equal_by_reduction(const PolyMap& f, const PolyMap& g) {
  check_same_space(f, g);
  for (std::size_t i = 1; i <= f.dim(); ++i) {
    if (!(f.coord(i).functional_reduce() == g.coord(i).functional_reduce())) return false;
  }
  return true;
}

bool functional_equal_by_evaluation(const PolyMap& f, const PolyMap& g) {
  check_same_space(f, g);
  bool equal = true;
  for_each_point(f.gf(), f.dim(), [&](std::span<const FFElem> pt) {
    if (equal && eval_map(f, pt) != eval_map(g, pt)) equal = false;
  });
  return equal;
}

bool functional_equal(const PolyMap& f, const PolyMap& g) {
  const bool by_reduction = functional_equal_by_reduction(f, g);
  const bool by_evaluation = functional_equal_by_evaluation(f, g);
  if (by_reduction != by_evaluation) {
    throw std::logic_error("functional equality routes disagree");
  }
  return by_reduction;
}

AutPair elementary_map(FieldPtr field, std::size_t n, std::size_t i, const Poly& f) {
  if (i < 1 || i > n) throw DomainError("elementary target index out of range");
  if (f.n_vars() != n) throw MismatchError("elementary shift must be a polynomial in n variables");
  if (!same_field(f.field(), field)) throw MismatchError("field mismatch");
  if (f.involves(i)) throw DomainError("elementary shift involves its target variable X" + std::to_string(i));
  PolyMap id = identity_map(field, n);
  std::vector<Poly> fwd(id.coords().begin(), id.coords().end());
  std::vector<Poly> bwd = fwd;
  fwd[i - 1] = fwd[i - 1] + f;
  bwd[i - 1] = bwd[i - 1] - f;
  return AutPair{PolyMap(field, std::move(fwd)), PolyMap(field, std::move(bwd))};
}

AutPair linear_map(const Matrix& matrix) {
  if (matrix.determinant().index == 0) throw DomainError("singular matrix");
  const Matrix inv = matrix.inverse();
  const FieldPtr& field = matrix.field();
  const std::size_t n = matrix.n();
  auto build = [&](const Matrix& m) {
    std::vector<Poly> coords;
    for (std::size_t r = 0; r < n; ++r) {
      Poly row(field, n);
      for (std::size_t c = 0; c < n; ++c) {
        if (m(r, c).index != 0) row = row + Poly::variable(field, n, c + 1).scale(m(r, c));
      }
      coords.push_back(std::move(row));
    }
    return PolyMap(field, std::move(coords));
  };
  return AutPair{build(matrix), build(inv)};
}

AutPair triangular_map(FieldPtr field, std::span<const FFElem> diag, std::span<const Poly> shifts) {
  const std::size_t n = diag.size();
  if (n < 1 || shifts.size() != n) throw DomainError("triangular map needs n diagonal entries and n shifts");
  for (std::size_t i = 0; i < n; ++i) {
    if (diag[i].index == 0) throw DomainError("zero diagonal coefficient at position " + std::to_string(i + 1));
    for (std::size_t v = 1; v <= i + 1; ++v) {
      if (shifts[i].involves(v)) {
        throw DomainError("shift " + std::to_string(i + 1) + " uses forbidden variable X" + std::to_string(v));
      }
    }
  }
  // T = F_n o ... o F_1 with F_i = E_i(f_i) o diag(1, .., a_i, .., 1); each F_i
  // touches coordinate i only, and f_i sees the untouched later variables.
  AutPair result{identity_map(field, n), identity_map(field, n)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FFElem> entries = Matrix::identity(field, n).entries();
    entries[i * n + i] = diag[i];
    AutPair scale = linear_map(Matrix(field, n, std::move(entries)));
    AutPair shift = elementary_map(field, n, i + 1, shifts[i]);
    result.map = compose_maps(shift.map, compose_maps(scale.map, result.map));
    result.inverse = compose_maps(result.inverse, compose_maps(scale.inverse, shift.inverse));
  }
  return result;
}

AutPair nagata_map(FieldPtr field) {
  const std::size_t n = 3;
  const Poly x = Poly::variable(field, n, 1);
  const Poly y = Poly::variable(field, n, 2);
  const Poly z = Poly::variable(field, n, 3);
  const Poly delta = x * z + y * y;
  const Poly two = Poly::constant(field, n, field->from_int(2));
  const Poly z_delta = z * delta;
  const Poly z_delta2 = z_delta * delta;
  const Poly two_y_delta = two * y * delta;
  PolyMap map(field, {x - two_y_delta - z_delta2, y + z_delta, z});
  PolyMap inverse(field, {x + two_y_delta - z_delta2, y - z_delta, z});
  return AutPair{std::move(map), std::move(inverse)};
}

AutPair permute_vars_map(FieldPtr field, std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n + 1, false);
  for (auto v : perm) {
    if (v < 1 || v > n || seen[v]) throw DomainError("not a permutation of 1..n");
    seen[v] = true;
  }
  std::vector<FFElem> entries(n * n, FFElem{0});
  for (std::size_t i = 0; i < n; ++i) entries[i * n + (perm[i] - 1)] = FFElem{1};
  return linear_map(Matrix(std::move(field), n, std::move(entries)));
}

AutPair letter_pair(const TameWord& word, const TameLetter& letter) {
  if (const auto* lin = std::get_if<LinearLetter>(&letter)) return linear_map(lin->matrix);
  const auto& elem = std::get<ElementaryLetter>(letter);
  return elementary_map(word.field, word.n, elem.target, elem.shift);
}

AutPair word_maps(const TameWord& word) {
  PolyMap map = identity_map(word.field, word.n);
  PolyMap inverse = map;
  for (const auto& letter : word.letters) {
    AutPair lp = letter_pair(word, letter);
    map = compose_maps(map, lp.map);
    inverse = compose_maps(lp.inverse, inverse);
  }
  return AutPair{std::move(map), std::move(inverse)};
}

TameSample random_tame_word(FieldPtr field, std::size_t n, std::size_t length, std::uint64_t degree_bound,
                            std::uint64_t seed) {
  if (length < 1) throw DomainError("word length must be at least 1");
  if (degree_bound < 1) throw DomainError("degree bound must be at least 1");
  if (n < 1 || n > kMaxVars) throw DomainError("unsupported dimension");
  const FieldSpec& gf = *field;
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };

  TameWord word{field, n, {}, seed, degree_bound};
  for (std::size_t l = 0; l < length; ++l) {
    if (uniform(0, 1) == 0) {
      // Rejection on the determinant.
      while (true) {
        std::vector<FFElem> entries(n * n);
        for (auto& e : entries) e = FFElem{static_cast<std::uint32_t>(uniform(0, gf.q() - 1))};
        Matrix m(field, n, std::move(entries));
        if (m.determinant().index != 0) {
          word.letters.emplace_back(LinearLetter{std::move(m)});
          break;
        }
      }
    } else {
      const std::size_t target = static_cast<std::size_t>(uniform(1, n));
      const std::uint64_t n_terms = uniform(1, degree_bound);
      std::vector<Term> terms;
      for (std::uint64_t t = 0; t < n_terms; ++t) {
        Monomial m;
        while (true) {
          std::uint64_t total = 0;
          for (std::size_t v = 0; v < n; ++v) {
            m[v] = v + 1 == target ? 0 : static_cast<std::uint32_t>(uniform(0, degree_bound));
            total += m[v];
          }
          if (total <= degree_bound) break;
        }
        terms.push_back(Term{m, FFElem{static_cast<std::uint32_t>(uniform(1, gf.q() - 1))}});
      }
      word.letters.emplace_back(ElementaryLetter{target, Poly::from_terms(field, n, std::move(terms))});
    }
  }
  AutPair maps = word_maps(word);
  return TameSample{std::move(word), std::move(maps.map), std::move(maps.inverse)};
}

std::vector<std::string> serialize_word(const TameWord& word) {
  std::vector<std::string> out;
  for (const auto& letter : word.letters) {
    if (const auto* lin = std::get_if<LinearLetter>(&letter)) {
      std::string rec = "lin";
      for (auto e : lin->matrix.entries()) {
        // Multi-summand literals are joined without spaces to stay one token.
        std::string lit;
        for (const auto& s : element_summands(*word.field, e)) lit += (lit.empty() ? "" : "+") + s;
        rec += " " + lit;
      }
      out.push_back(std::move(rec));
    } else {
      const auto& elem = std::get<ElementaryLetter>(letter);
      out.push_back("elem " + std::to_string(elem.target) + " " + format_poly(elem.shift));
    }
  }
  return out;
}

PolyMap slice_map(const PolyMap& f, std::size_t i, FFElem a) {
  const std::size_t n = f.dim();
  if (i < 1 || i > n) throw DomainError("slice variable out of range");
  if (n < 2) throw DomainError("slicing needs dimension at least 2");
  if (!f.gf().valid(a)) throw DomainError("invalid field element");
  if (!f.coord(i).is_variable(i)) {
    throw DomainError("map does not fix variable X" + std::to_string(i) + " formally");
  }
  const FieldPtr& field = f.field();
  std::vector<Poly> args;
  args.reserve(n);
  for (std::size_t v = 1; v <= n; ++v) {
    if (v == i) {
      args.push_back(Poly::constant(field, n - 1, a));
    } else {
      args.push_back(Poly::variable(field, n - 1, v < i ? v : v - 1));
    }
  }
  std::vector<Poly> coords;
  coords.reserve(n - 1);
  for (std::size_t v = 1; v <= n; ++v) {
    if (v != i) coords.push_back(f.coord(v).substitute(args));
  }
  return PolyMap(field, std::move(coords));
}

PolyMap conjugate(const PolyMap& f, const PolyMap& phi, const PolyMap& phi_inv) {
  check_same_space(f, phi);
  if (!verify_inverse_pair(phi, phi_inv)) throw DomainError("conjugating pair is not a verified inverse pair");
  return compose_maps(phi_inv, compose_maps(f, phi));
}

PolyMap parse_map(std::string_view text, FieldPtr field, std::size_t n) {
  std::vector<std::string_view> pieces;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    pieces.push_back(text.substr(start, semi == std::string_view::npos ? text.npos : semi - start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  // A trailing separator is tolerated.
  if (pieces.size() > 1 && pieces.back().find_first_not_of(" \t\r\n") == std::string_view::npos) pieces.pop_back();
  if (n == 0) n = pieces.size();
  if (pieces.size() != n) {
    throw DomainError("map has " + std::to_string(pieces.size()) + " coordinates, expected " + std::to_string(n));
  }
  std::vector<Poly> coords;
  std::size_t offset = 0;
  for (const auto& piece : pieces) {
    try {
      coords.push_back(parse_poly(piece, field, n));
    } catch (const ParseError& e) {
      throw ParseError("coordinate " + std::to_string(coords.size() + 1) + ": " + e.message(),
                       offset + e.position());
    }
    offset += piece.size() + 1;
  }
  return PolyMap(std::move(field), std::move(coords));
}

std::string format_map(const PolyMap& f) {
  std::string out;
  for (std::size_t i = 1; i <= f.dim(); ++i) {
    if (i > 1) out += "; ";
    out += format_poly(f.coord(i));
  }
  return out;
}

}  // namespace oddaut
