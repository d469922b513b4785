#ifndef ODDAUT_MPOLY_HPP
#define ODDAUT_MPOLY_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oddaut/gf.hpp"

namespace oddaut {

inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector. Slots beyond the owning polynomial's variable count are 0.
class Monomial {
 public:
  Monomial() = default;

  std::uint32_t operator[](std::size_t var) const { return exps_[var]; }
  std::uint32_t& operator[](std::size_t var) { return exps_[var]; }

  std::uint64_t degree() const noexcept;
  bool is_one() const noexcept;

  // Exponent-wise sum; throws DomainError on exponent overflow.
  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded lexicographic: total degree first, then X1 > X2 > ... lexicographically.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::size_t hash() const noexcept;

 private:
  std::array<std::uint32_t, kMaxVars> exps_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
  Monomial monomial;
  FFElem coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in n_vars variables over a finite field. Terms are kept in
/// descending graded-lex order with no zero coefficients, so structural
/// equality is polynomial equality.
class Poly {
 public:
  Poly(FieldPtr field, std::size_t n_vars);

  static Poly constant(FieldPtr field, std::size_t n_vars, FFElem c);
  // 1-based variable index.
  static Poly variable(FieldPtr field, std::size_t n_vars, std::size_t var);
  static Poly from_terms(FieldPtr field, std::size_t n_vars, std::vector<Term> terms);

  const FieldPtr& field() const noexcept { return field_; }
  const FieldSpec& gf() const noexcept { return *field_; }
  std::size_t n_vars() const noexcept { return n_vars_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::uint64_t degree() const noexcept;
  FFElem constant_term() const;
  FFElem coefficient(const Monomial& m) const;
  // 1-based.
  bool involves(std::size_t var) const;
  // True when the polynomial is exactly X_var.
  bool is_variable(std::size_t var) const;

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator-() const;
  Poly operator*(const Poly& other) const;
  Poly scale(FFElem c) const;
  Poly pow(std::uint64_t e) const;
  // Coefficient-wise x -> x^p together with exponents times p; equals pow(p).
  Poly frobenius() const;

  FFElem eval(std::span<const FFElem> point) const;

  // Formal substitution X_i -> args[i-1]; no functional reduction.
  Poly substitute(std::span<const Poly> args) const;

  // Representative with every exponent <= q-1 inducing the same function.
  Poly functional_reduce() const;

  // Re-embeds into a ring with a different variable count. Variables
  // involved must map to valid slots.
  Poly with_vars(std::size_t n_vars) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void check_compatible(const Poly& other) const;
  void canonicalize();

  FieldPtr field_;
  std::size_t n_vars_;
  std::vector<Term> terms_;
};

std::string format_poly(const Poly& f);

/// Parses the polynomial grammar: sums of products of coefficient literals
/// (integers, g, g^k) and variables X1..Xn (X, Y, Z accepted when n <= 3).
Poly parse_poly(std::string_view text, FieldPtr field, std::size_t n_vars);

}  // namespace oddaut

#endif  // ODDAUT_MPOLY_HPP
