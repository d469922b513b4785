#include "oddaut/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <utility>

#include "oddaut/error.hpp"

namespace oddaut {

namespace {

using Coeffs = std::vector<std::uint32_t>;

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Coeffs poly_mod(Coeffs a, const Coeffs& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

Coeffs to_digits(std::uint32_t index, std::uint32_t p, std::uint32_t m) {
  Coeffs out(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

std::uint32_t from_digits(const Coeffs& digits, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
  return v;
}

const std::map<std::pair<std::uint32_t, std::uint32_t>, Coeffs>& default_moduli() {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Coeffs> table = {
      {{2, 2}, {1, 1, 1}},                // t^2 + t + 1
      {{2, 3}, {1, 1, 0, 1}},             // t^3 + t + 1
      {{2, 4}, {1, 1, 0, 0, 1}},          // t^4 + t + 1
      {{2, 5}, {1, 0, 1, 0, 0, 1}},       // t^5 + t^2 + 1
      {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},    // t^6 + t + 1
      {{3, 2}, {1, 0, 1}},                // t^2 + 1
  };
  return table;
}

std::uint32_t ipow(std::uint32_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    r *= base;
    if (r > FieldSpec::kMaxOrder) return FieldSpec::kMaxOrder + 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::string trim_view(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::uint32_t parse_uint(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    throw FieldError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs) {
  if (coeffs.size() < 2) return false;
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 1) return true;
  // Every monic divisor of degree d, enumerated by its lower d coefficients.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Coeffs divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      if (poly_mod(coeffs, divisor, p).empty()) return false;
    }
  }
  return true;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw FieldError("extension degree must be at least 1");
  if (ipow(p, m) > FieldSpec::kMaxOrder) {
    throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(m) +
                     " exceeds the supported maximum " + std::to_string(FieldSpec::kMaxOrder));
  }
  Coeffs mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != m + 1) {
      throw FieldError("modulus must have m+1 = " + std::to_string(m + 1) + " coefficients");
    }
    for (auto c : mod) {
      if (c >= p) throw FieldError("modulus coefficient " + std::to_string(c) + " is not below p");
    }
    if (mod.back() != 1) throw FieldError("modulus is not monic");
    if (!is_irreducible(p, mod)) throw FieldError("modulus is reducible over F_" + std::to_string(p));
  } else if (m == 1) {
    mod = {0, 1};
  } else {
    const auto& table = default_moduli();
    const auto it = table.find({p, m});
    if (it == table.end()) {
      throw FieldError("no default modulus for GF(" + std::to_string(p) + "^" + std::to_string(m) +
                       "); supply one");
    }
    mod = it->second;
  }
  return FieldPtr(new FieldSpec(p, m, std::move(mod)));
}

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(ipow(p, m)), modulus_(std::move(modulus)) {
  const std::size_t qq = static_cast<std::size_t>(q_) * q_;
  add_.resize(qq);
  mul_.resize(qq);
  neg_.resize(q_);
  inv_.resize(q_, 0);

  std::vector<Coeffs> digits(q_);
  for (std::uint32_t a = 0; a < q_; ++a) digits[a] = to_digits(a, p_, m_);

  for (std::uint32_t a = 0; a < q_; ++a) {
    Coeffs n(m_);
    for (std::uint32_t i = 0; i < m_; ++i) n[i] = (p_ - digits[a][i]) % p_;
    neg_[a] = static_cast<std::uint16_t>(from_digits(n, p_));
    for (std::uint32_t b = 0; b < q_; ++b) {
      Coeffs s(m_);
      for (std::uint32_t i = 0; i < m_; ++i) s[i] = (digits[a][i] + digits[b][i]) % p_;
      add_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(from_digits(s, p_));

      Coeffs prod(2 * m_, 0);
      for (std::uint32_t i = 0; i < m_; ++i) {
        for (std::uint32_t j = 0; j < m_; ++j) {
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p_;
        }
      }
      Coeffs r = poly_mod(prod, modulus_, p_);
      r.resize(m_, 0);
      mul_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(from_digits(r, p_));
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_[static_cast<std::size_t>(a) * q_ + b] == 1) {
        inv_[a] = static_cast<std::uint16_t>(b);
        break;
      }
    }
  }

  // g = t mod modulus; for m = 1 this is -modulus[0].
  {
    Coeffs t = {0, 1};
    Coeffs r = poly_mod(t, modulus_, p_);
    r.resize(m_, 0);
    gen_ = FFElem{from_digits(r, p_)};
  }

  auto order_of = [&](std::uint32_t a) -> std::uint32_t {
    if (a == 0) return 0;
    std::uint32_t x = a;
    std::uint32_t k = 1;
    while (x != 1) {
      x = mul_[static_cast<std::size_t>(x) * q_ + a];
      ++k;
    }
    return k;
  };

  primitive_ = FFElem{1};
  for (std::uint32_t a = 1; a < q_; ++a) {
    if (order_of(a) == q_ - 1) {
      primitive_ = FFElem{a};
      break;
    }
  }

  gen_log_.assign(q_, -1);
  if (gen_.index != 0) {
    gen_order_ = order_of(gen_.index);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < gen_order_; ++k) {
      gen_pow_.push_back(static_cast<std::uint16_t>(x));
      gen_log_[x] = static_cast<std::int32_t>(k);
      x = mul_[static_cast<std::size_t>(x) * q_ + gen_.index];
    }
  } else {
    gen_order_ = 0;
  }
}

FFElem FieldSpec::add(FFElem a, FFElem b) const { return FFElem{add_[slot(a, b)]}; }

FFElem FieldSpec::sub(FFElem a, FFElem b) const { return FFElem{add_[slot(a, FFElem{neg_[b.index]})]}; }

FFElem FieldSpec::mul(FFElem a, FFElem b) const { return FFElem{mul_[slot(a, b)]}; }

FFElem FieldSpec::neg(FFElem a) const { return FFElem{neg_[a.index]}; }

FFElem FieldSpec::inv(FFElem a) const {
  if (a.index == 0) throw DomainError("inverse of zero");
  return FFElem{inv_[a.index]};
}

FFElem FieldSpec::pow(FFElem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.index == 0) return zero();
  e %= (q_ - 1);
  FFElem result = one();
  FFElem base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

FFElem FieldSpec::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return FFElem{static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> FieldSpec::coefficients(FFElem a) const { return to_digits(a.index, p_, m_); }

FFElem FieldSpec::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() != m_) throw DomainError("coefficient vector must have length m");
  for (auto c : coeffs) {
    if (c >= p_) throw DomainError("coefficient out of range");
  }
  return FFElem{from_digits(coeffs, p_)};
}

std::vector<FFElem> FieldSpec::elements() const {
  std::vector<FFElem> out;
  out.reserve(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out.push_back(FFElem{i});
  return out;
}

std::optional<std::uint32_t> FieldSpec::log_gen(FFElem a) const {
  if (a.index >= q_ || gen_log_[a.index] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(gen_log_[a.index]);
}

std::string FieldSpec::designation() const {
  if (m_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
}

std::string FieldSpec::full_designation() const {
  std::string out = designation() + " mod=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(modulus_[i]);
  }
  return out;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::vector<std::uint32_t> parse_modulus(std::string_view text) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim_view(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    out.push_back(parse_uint(piece, "modulus coefficient"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

FieldPtr parse_field(std::string_view designation, std::string_view modulus) {
  std::string d = trim_view(designation);
  std::string mod_text = trim_view(modulus);
  // Allow the modulus inline: "GF(2^2) mod=1,1,1".
  if (const auto pos = d.find("mod="); pos != std::string::npos) {
    if (!mod_text.empty()) throw FieldError("modulus given twice");
    mod_text = trim_view(std::string_view(d).substr(pos + 4));
    d = trim_view(std::string_view(d).substr(0, pos));
  }
  if (d.size() < 5 || d.compare(0, 3, "GF(") != 0 || d.back() != ')') {
    throw FieldError("field designation must look like GF(p^m): '" + d + "'");
  }
  const std::string inner = d.substr(3, d.size() - 4);
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  if (const auto caret = inner.find('^'); caret != std::string::npos) {
    p = parse_uint(trim_view(std::string_view(inner).substr(0, caret)), "characteristic");
    m = parse_uint(trim_view(std::string_view(inner).substr(caret + 1)), "extension degree");
  } else {
    p = parse_uint(trim_view(inner), "characteristic");
  }
  if (mod_text.empty()) return make_field(p, m);
  return make_field(p, m, parse_modulus(mod_text));
}

std::vector<std::string> element_summands(const FieldSpec& field, FFElem a) {
  if (field.in_prime_field(a)) return {std::to_string(a.index)};
  if (auto k = field.log_gen(a)) {
    if (*k == 1) return {"g"};
    return {"g^" + std::to_string(*k)};
  }
  // Polynomial-basis expansion a_0 + a_1 g + ...; each summand is a literal.
  std::vector<std::string> out;
  const auto digits = field.coefficients(a);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    std::string basis = i == 0 ? "" : (i == 1 ? "g" : "g^" + std::to_string(i));
    if (i == 0) {
      out.push_back(std::to_string(digits[i]));
    } else {
      for (std::uint32_t c = 0; c < digits[i]; ++c) out.push_back(basis);
    }
  }
  return out;
}

std::string format_element(const FieldSpec& field, FFElem a) {
  const auto parts = element_summands(field, a);
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

}  // namespace oddaut
