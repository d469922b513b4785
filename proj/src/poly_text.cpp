#include <cctype>
#include <charconv>
#include <string>

#include "oddaut/error.hpp"
#include "oddaut/mpoly.hpp"

namespace oddaut {

namespace {

std::string format_monomial(const Monomial& m, std::size_t n_vars) {
  std::string out;
  for (std::size_t v = 0; v < n_vars; ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += "X" + std::to_string(v + 1);
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out;
}

// Recursive-descent parser over the polynomial grammar. Each term is a product
// of factors; a factor is a coefficient literal or a (possibly powered) variable.
class PolyParser {
 public:
  PolyParser(std::string_view text, FieldPtr field, std::size_t n_vars)
      : text_(text), field_(std::move(field)), n_vars_(n_vars) {}

  Poly parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Poly sum(field_, n_vars_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
      skip_ws();
    }
    while (true) {
      Poly t = parse_term();
      sum = negate ? sum - t : sum + t;
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      negate = c == '-';
      ++pos_;
      skip_ws();
    }
    return sum;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::uint64_t parse_uint() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an unsigned integer");
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{}) {
      pos_ = start;
      fail("integer literal out of range");
    }
    (void)ptr;
    return v;
  }

  std::uint64_t parse_optional_exponent() {
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    return parse_uint();
  }

  Poly parse_term() {
    Poly prod = parse_factor();
    while (true) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      skip_ws();
      prod = prod * parse_factor();
    }
    return prod;
  }

  Poly parse_factor() {
    if (at_end()) fail("expected a coefficient or variable");
    const char c = peek();
    const FieldSpec& gf = *field_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t v = parse_uint();
      return Poly::constant(field_, n_vars_, FFElem{static_cast<std::uint32_t>(v % gf.p())});
    }
    if (c == 'g') {
      ++pos_;
      const std::uint64_t k = parse_optional_exponent();
      return Poly::constant(field_, n_vars_, gf.pow(gf.gen(), k));
    }
    if (c == 'X' || c == 'Y' || c == 'Z') {
      const std::size_t start = pos_;
      ++pos_;
      std::size_t var = 0;
      if (c == 'X' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::uint64_t idx = parse_uint();
        if (idx == 0) {
          pos_ = start;
          fail("variables are 1-based (X1..X" + std::to_string(n_vars_) + ")");
        }
        var = static_cast<std::size_t>(idx);
      } else {
        if (n_vars_ > 3) {
          pos_ = start;
          fail(std::string("alias '") + c + "' is only accepted for n <= 3");
        }
        var = c == 'X' ? 1 : (c == 'Y' ? 2 : 3);
      }
      if (var > n_vars_) {
        pos_ = start;
        fail("variable index " + std::to_string(var) + " out of range 1.." + std::to_string(n_vars_));
      }
      const std::uint64_t e = parse_optional_exponent();
      if (e > 0xffffffffULL) fail("exponent too large");
      Monomial m;
      m[var - 1] = static_cast<std::uint32_t>(e);
      return Poly::from_terms(field_, n_vars_, {Term{m, FFElem{1}}});
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  FieldPtr field_;
  std::size_t n_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  auto emit = [&out](const std::string& piece) {
    if (!out.empty()) out += " + ";
    out += piece;
  };
  for (const auto& t : f.terms()) {
    const std::string mono = format_monomial(t.monomial, f.n_vars());
    for (const auto& lit : element_summands(f.gf(), t.coeff)) {
      if (mono.empty()) {
        emit(lit);
      } else if (lit == "1") {
        emit(mono);
      } else {
        emit(lit + "*" + mono);
      }
    }
  }
  return out;
}

Poly parse_poly(std::string_view text, FieldPtr field, std::size_t n_vars) {
  if (n_vars < 1 || n_vars > kMaxVars) throw DomainError("unsupported variable count");
  return PolyParser(text, std::move(field), n_vars).parse();
}

}  // namespace oddaut
