#include "oddaut/mpoly.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "oddaut/error.hpp"

namespace oddaut {

namespace {

using Accumulator = std::unordered_map<Monomial, FFElem, MonomialHash>;

void accumulate(Accumulator& acc, const FieldSpec& field, const Monomial& m, FFElem c) {
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) it->second = field.add(it->second, c);
}

std::vector<Term> drain(Accumulator& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [m, c] : acc) {
    if (c.index != 0) out.push_back(Term{m, c});
  }
  return out;
}

std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
  if (a > std::numeric_limits<std::uint32_t>::max() - b) throw DomainError("exponent overflow");
  return a + b;
}

}  // namespace

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.exps_[i] = checked_add(exps_[i], other.exps_[i]);
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto e : exps_) {
    h ^= e;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Poly::Poly(FieldPtr field, std::size_t n_vars) : field_(std::move(field)), n_vars_(n_vars) {
  if (!field_) throw DomainError("polynomial needs a field");
  if (n_vars_ > kMaxVars) {
    throw DomainError("at most " + std::to_string(kMaxVars) + " variables are supported");
  }
}

Poly Poly::constant(FieldPtr field, std::size_t n_vars, FFElem c) {
  Poly out(std::move(field), n_vars);
  if (!out.gf().valid(c)) throw DomainError("invalid field element");
  if (c.index != 0) out.terms_.push_back(Term{Monomial{}, c});
  return out;
}

Poly Poly::variable(FieldPtr field, std::size_t n_vars, std::size_t var) {
  Poly out(std::move(field), n_vars);
  if (var < 1 || var > n_vars) {
    throw DomainError("variable X" + std::to_string(var) + " out of range 1.." + std::to_string(n_vars));
  }
  Monomial m;
  m[var - 1] = 1;
  out.terms_.push_back(Term{m, FFElem{1}});
  return out;
}

Poly Poly::from_terms(FieldPtr field, std::size_t n_vars, std::vector<Term> terms) {
  Poly out(std::move(field), n_vars);
  for (const auto& t : terms) {
    if (!out.gf().valid(t.coeff)) throw DomainError("invalid field element");
    for (std::size_t v = n_vars; v < kMaxVars; ++v) {
      if (t.monomial[v] != 0) throw DomainError("monomial uses a variable beyond n_vars");
    }
  }
  out.terms_ = std::move(terms);
  out.canonicalize();
  return out;
}

void Poly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff = gf().add(merged.back().coeff, t.coeff);
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.index == 0; });
  terms_ = std::move(merged);
}

void Poly::check_compatible(const Poly& other) const {
  if (n_vars_ != other.n_vars_) {
    throw MismatchError("variable count mismatch: " + std::to_string(n_vars_) + " vs " +
                        std::to_string(other.n_vars_));
  }
  if (!same_field(field_, other.field_)) throw MismatchError("field mismatch");
}

std::uint64_t Poly::degree() const noexcept {
  // Descending graded order: the first term has maximal degree.
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

FFElem Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return FFElem{0};
}

FFElem Poly::coefficient(const Monomial& m) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& key) { return t.monomial > key; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return FFElem{0};
}

bool Poly::involves(std::size_t var) const {
  if (var < 1 || var > n_vars_) return false;
  return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.monomial[var - 1] != 0; });
}

bool Poly::is_variable(std::size_t var) const {
  if (var < 1 || var > n_vars_ || terms_.size() != 1) return false;
  Monomial m;
  m[var - 1] = 1;
  return terms_[0].monomial == m && terms_[0].coeff.index == 1;
}

Poly Poly::operator+(const Poly& other) const {
  check_compatible(other);
  Poly out(field_, n_vars_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->monomial > b->monomial)) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->monomial > a->monomial) {
      out.terms_.push_back(*b++);
    } else {
      const FFElem c = gf().add(a->coeff, b->coeff);
      if (c.index != 0) out.terms_.push_back(Term{a->monomial, c});
      ++a;
      ++b;
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.coeff = gf().neg(t.coeff);
  return out;
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::operator*(const Poly& other) const {
  check_compatible(other);
  Poly out(field_, n_vars_);
  if (is_zero() || other.is_zero()) return out;
  if (terms_.size() == 1 || other.terms_.size() == 1) {
    // Monomial times polynomial keeps the order; no collection needed.
    const Poly& single = terms_.size() == 1 ? *this : other;
    const Poly& many = terms_.size() == 1 ? other : *this;
    const Term& s = single.terms_[0];
    out.terms_.reserve(many.terms_.size());
    for (const auto& t : many.terms_) {
      out.terms_.push_back(Term{s.monomial * t.monomial, gf().mul(s.coeff, t.coeff)});
    }
    return out;
  }
  Accumulator acc;
  acc.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      accumulate(acc, gf(), a.monomial * b.monomial, gf().mul(a.coeff, b.coeff));
    }
  }
  out.terms_ = drain(acc);
  out.canonicalize();
  return out;
}

Poly Poly::scale(FFElem c) const {
  if (!gf().valid(c)) throw DomainError("invalid field element");
  Poly out(field_, n_vars_);
  if (c.index == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff = gf().mul(t.coeff, c);
  return out;
}

Poly Poly::frobenius() const {
  const std::uint32_t p = gf().p();
  Poly out(field_, n_vars_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < n_vars_; ++v) {
      const std::uint64_t e = static_cast<std::uint64_t>(t.monomial[v]) * p;
      if (e > std::numeric_limits<std::uint32_t>::max()) throw DomainError("exponent overflow");
      m[v] = static_cast<std::uint32_t>(e);
    }
    out.terms_.push_back(Term{m, gf().frobenius(t.coeff)});
  }
  // x -> x^p is injective on monomials and preserves graded-lex order.
  return out;
}

Poly Poly::pow(std::uint64_t e) const {
  // Base-p digits: f^e = prod_k (f^(p^k))^(d_k), with f^(p^k) by Frobenius.
  Poly result = constant(field_, n_vars_, FFElem{1});
  if (e == 0) return result;
  const std::uint32_t p = gf().p();
  Poly frob = *this;
  while (true) {
    const std::uint64_t digit = e % p;
    for (std::uint64_t i = 0; i < digit; ++i) result = result * frob;
    e /= p;
    if (e == 0) break;
    frob = frob.frobenius();
  }
  return result;
}

FFElem Poly::eval(std::span<const FFElem> point) const {
  if (point.size() != n_vars_) {
    throw MismatchError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                        std::to_string(n_vars_));
  }
  const FieldSpec& f = gf();
  FFElem sum{0};
  for (const auto& t : terms_) {
    FFElem v = t.coeff;
    for (std::size_t i = 0; i < n_vars_ && v.index != 0; ++i) {
      if (t.monomial[i] != 0) v = f.mul(v, f.pow(point[i], t.monomial[i]));
    }
    sum = f.add(sum, v);
  }
  return sum;
}

Poly Poly::substitute(std::span<const Poly> args) const {
  if (args.size() != n_vars_) {
    throw MismatchError("substitution needs " + std::to_string(n_vars_) + " arguments, got " +
                        std::to_string(args.size()));
  }
  if (args.empty()) return *this;
  const std::size_t out_vars = args.front().n_vars();
  for (const auto& a : args) {
    if (a.n_vars() != out_vars) throw MismatchError("substitution arguments disagree on variable count");
    if (!same_field(a.field(), field_)) throw MismatchError("field mismatch in substitution");
  }

  std::vector<std::map<std::uint32_t, Poly>> powers(n_vars_);
  auto power = [&](std::size_t var, std::uint32_t e) -> const Poly& {
    auto& cache = powers[var];
    if (auto it = cache.find(e); it != cache.end()) return it->second;
    return cache.emplace(e, args[var].pow(e)).first->second;
  };

  Accumulator acc;
  for (const auto& t : terms_) {
    Poly prod = constant(args.front().field(), out_vars, t.coeff);
    for (std::size_t v = 0; v < n_vars_ && !prod.is_zero(); ++v) {
      if (t.monomial[v] != 0) prod = prod * power(v, t.monomial[v]);
    }
    for (const auto& pt : prod.terms_) accumulate(acc, gf(), pt.monomial, pt.coeff);
  }
  Poly out(args.front().field(), out_vars);
  out.terms_ = drain(acc);
  out.canonicalize();
  return out;
}

Poly Poly::functional_reduce() const {
  const std::uint32_t q = gf().q();
  Accumulator acc;
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < n_vars_; ++v) {
      const std::uint32_t e = t.monomial[v];
      m[v] = e == 0 ? 0 : ((e - 1) % (q - 1)) + 1;
    }
    accumulate(acc, gf(), m, t.coeff);
  }
  Poly out(field_, n_vars_);
  out.terms_ = drain(acc);
  out.canonicalize();
  return out;
}

Poly Poly::with_vars(std::size_t n_vars) const {
  Poly out(field_, n_vars);
  for (const auto& t : terms_) {
    for (std::size_t v = n_vars; v < kMaxVars; ++v) {
      if (t.monomial[v] != 0) throw DomainError("polynomial uses variable X" + std::to_string(v + 1));
    }
  }
  out.terms_ = terms_;
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.n_vars_ == b.n_vars_ && same_field(a.field_, b.field_) && a.terms_ == b.terms_;
}

}  // namespace oddaut
