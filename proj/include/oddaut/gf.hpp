#ifndef ODDAUT_GF_HPP
#define ODDAUT_GF_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oddaut {

/// Element of F_{p^m}, identified by its index: the coefficient vector
/// (a_0, ..., a_{m-1}) of a_0 + a_1 t + ... read as a base-p number, a_0 least
/// significant. Index 0 is zero, index 1 is one.
struct FFElem {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(FFElem, FFElem) = default;
};

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// A finite field F_{p^m} = F_p[t] / (modulus). Immutable; all arithmetic is
/// table driven and thread safe.
class FieldSpec {
 public:
  // Largest supported field order. Arithmetic tables are q*q.
  static constexpr std::uint32_t kMaxOrder = 1024;

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FFElem zero() const noexcept { return FFElem{0}; }
  FFElem one() const noexcept { return FFElem{1}; }
  // Residue class of t.
  FFElem gen() const noexcept { return gen_; }
  // Smallest-index generator of the multiplicative group.
  FFElem primitive() const noexcept { return primitive_; }
  bool gen_is_primitive() const noexcept { return gen_ == primitive_; }

  bool valid(FFElem a) const noexcept { return a.index < q_; }

  FFElem add(FFElem a, FFElem b) const;
  FFElem sub(FFElem a, FFElem b) const;
  FFElem mul(FFElem a, FFElem b) const;
  FFElem neg(FFElem a) const;
  FFElem inv(FFElem a) const;  // throws DomainError on zero
  FFElem pow(FFElem a, std::uint64_t e) const;
  FFElem frobenius(FFElem a) const { return pow(a, p_); }

  // Image of an integer under Z -> F_p -> F_q.
  FFElem from_int(std::int64_t v) const;
  bool in_prime_field(FFElem a) const noexcept { return a.index < p_; }

  std::vector<std::uint32_t> coefficients(FFElem a) const;
  FFElem from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

  std::vector<FFElem> elements() const;

  // Discrete log to base gen(); nullopt for zero or when a is not a power of g.
  std::optional<std::uint32_t> log_gen(FFElem a) const;
  std::uint32_t gen_order() const noexcept { return gen_order_; }

  // "GF(p^m)", or "GF(p)" for a prime field.
  std::string designation() const;
  // Designation plus modulus, e.g. "GF(2^2) mod=1,1,1".
  std::string full_designation() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  friend FieldPtr make_field(std::uint32_t, std::uint32_t,
                             std::optional<std::vector<std::uint32_t>>);
  FieldSpec(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

  std::size_t slot(FFElem a, FFElem b) const noexcept {
    return static_cast<std::size_t>(a.index) * q_ + b.index;
  }

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint16_t> gen_pow_;              // g^k for k < gen_order_
  std::vector<std::int32_t> gen_log_;                // -1 when not a power of g
  FFElem gen_;
  FFElem primitive_;
  std::uint32_t gen_order_ = 1;
};

/// Builds and validates F_{p^m}. Without a modulus the built-in default for
/// (p, m) is used: t for prime fields, and low-weight irreducibles for
/// F_4, F_8, F_16, F_32, F_64 and F_9.
FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

bool same_field(const FieldPtr& a, const FieldPtr& b);

bool is_prime(std::uint32_t v);

/// Brute-force irreducibility of a monic polynomial over F_p (coefficients low
/// to high): tries every monic divisor of degree <= deg/2.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs);

/// Parses "GF(p^m)" or "GF(p)" with an optional modulus list "a0,a1,...,am".
FieldPtr parse_field(std::string_view designation, std::string_view modulus = {});

std::vector<std::uint32_t> parse_modulus(std::string_view text);

/// Literal forms: integers for prime-field elements, "g" / "g^k" for powers of
/// g. Elements that are neither are written as a sum of basis literals
/// ("1 + g" style); the summands are returned separately.
std::vector<std::string> element_summands(const FieldSpec& field, FFElem a);
std::string format_element(const FieldSpec& field, FFElem a);

}  // namespace oddaut

#endif  // ODDAUT_GF_HPP
