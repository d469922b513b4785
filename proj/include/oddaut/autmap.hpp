#ifndef ODDAUT_AUTMAP_HPP
#define ODDAUT_AUTMAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oddaut/gf.hpp"
#include "oddaut/mpoly.hpp"

namespace oddaut {

/// Polynomial endomorphism of affine n-space: n coordinate polynomials in n
/// variables over one field.
class PolyMap {
 public:
  PolyMap(FieldPtr field, std::vector<Poly> coords);

  const FieldPtr& field() const noexcept { return field_; }
  const FieldSpec& gf() const noexcept { return *field_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const Poly> coords() const noexcept { return coords_; }
  // 1-based.
  const Poly& coord(std::size_t i) const { return coords_.at(i - 1); }

  std::uint64_t degree() const noexcept;

  friend bool operator==(const PolyMap& a, const PolyMap& b);

 private:
  FieldPtr field_;
  std::vector<Poly> coords_;
};

/// A map together with a formal inverse.
struct AutPair {
  PolyMap map;
  PolyMap inverse;
};

/// Square matrix over a field, row-major.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t n, std::vector<FFElem> entries);
  static Matrix identity(FieldPtr field, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const FieldPtr& field() const noexcept { return field_; }
  FFElem operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  const std::vector<FFElem>& entries() const noexcept { return entries_; }

  FFElem determinant() const;
  Matrix inverse() const;  // throws DomainError when singular

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_ && same_field(a.field_, b.field_);
  }

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<FFElem> entries_;
};

PolyMap identity_map(FieldPtr field, std::size_t n);

/// Formal composition F o G: coordinate i is F_i(G_1, ..., G_n).
PolyMap compose_maps(const PolyMap& f, const PolyMap& g);

std::vector<FFElem> eval_map(const PolyMap& f, std::span<const FFElem> point);

/// True iff F o G and G o F are both formally the identity.
bool verify_inverse_pair(const PolyMap& f, const PolyMap& g);

bool functional_equal_by_reduction(const PolyMap& f, const PolyMap& g);
bool functional_equal_by_evaluation(const PolyMap& f, const PolyMap& g);
/// Runs both routes; throws std::logic_error if they disagree.
bool functional_equal(const PolyMap& f, const PolyMap& g);

/// (X_1, ..., X_i + f, ..., X_n) where f does not involve X_i; inverse uses -f.
AutPair elementary_map(FieldPtr field, std::size_t n, std::size_t i, const Poly& f);

AutPair linear_map(const Matrix& matrix);

/// (a_1 X_1 + f_1, ..., a_n X_n + f_n) with a_i != 0 and f_i in X_{i+1}..X_n,
/// built as a product of per-coordinate scalings and elementary maps; the
/// inverse is the reversed product of the factor inverses.
AutPair triangular_map(FieldPtr field, std::span<const FFElem> diag, std::span<const Poly> shifts);

/// Nagata's map (X - 2Y D - Z D^2, Y + Z D, Z), D = XZ + Y^2, and its inverse
/// (X + 2Y D - Z D^2, Y - Z D, Z). Integer coefficients are reduced mod p.
AutPair nagata_map(FieldPtr field);

/// Coordinate i is X_{perm[i-1]} (perm holds 1-based indices).
AutPair permute_vars_map(FieldPtr field, std::span<const std::size_t> perm);

struct LinearLetter {
  Matrix matrix;
};

struct ElementaryLetter {
  std::size_t target;  // 1-based
  Poly shift;
};

using TameLetter = std::variant<LinearLetter, ElementaryLetter>;

/// A word in tame generators. The represented map is letters[0] o letters[1] o ...
struct TameWord {
  FieldPtr field;
  std::size_t n = 0;
  std::vector<TameLetter> letters;
  std::uint64_t seed = 0;
  std::uint64_t degree_bound = 0;
};

struct TameSample {
  TameWord word;
  PolyMap map;
  PolyMap inverse;
};

AutPair letter_pair(const TameWord& word, const TameLetter& letter);
AutPair word_maps(const TameWord& word);

/// Seeded random tame word: each letter is Linear (random invertible matrix by
/// rejection) or Elementary (random target, 1..D random terms of total degree
/// <= D avoiding the target) with equal probability.
TameSample random_tame_word(FieldPtr field, std::size_t n, std::size_t length, std::uint64_t degree_bound,
                            std::uint64_t seed);

/// Records "lin <n^2 literals>" / "elem <i> <poly>", one per letter.
std::vector<std::string> serialize_word(const TameWord& word);

/// Substitutes X_i = a into the other coordinates of a map whose i-th
/// coordinate is exactly X_i, yielding a map of dimension n-1.
PolyMap slice_map(const PolyMap& f, std::size_t i, FFElem a);

/// phi_inv o F o phi, after checking that (phi, phi_inv) is an inverse pair.
PolyMap conjugate(const PolyMap& f, const PolyMap& phi, const PolyMap& phi_inv);

/// Coordinates separated by ';'.
PolyMap parse_map(std::string_view text, FieldPtr field, std::size_t n);
std::string format_map(const PolyMap& f);

}  // namespace oddaut

#endif  // ODDAUT_AUTMAP_HPP
