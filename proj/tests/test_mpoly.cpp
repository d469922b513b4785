#include <doctest.h>

#include <string>
#include <vector>

#include "oddaut/error.hpp"
#include "oddaut/mpoly.hpp"
#include "oracles.hpp"

using namespace oddaut;

namespace {

Poly P(const char* text, const FieldPtr& f, std::size_t n) { return parse_poly(text, f, n); }

Poly random_poly(oracle::Rng& rng, const FieldPtr& f, std::size_t n, std::uint32_t max_deg, std::size_t max_terms) {
  std::vector<Term> terms;
  const std::size_t count = rng.below(max_terms + 1);
  for (std::size_t t = 0; t < count; ++t) {
    Monomial mono;
    std::uint32_t budget = rng.below(max_deg + 1);
    for (std::size_t v = 0; v < n && budget > 0; ++v) {
      const std::uint32_t e = rng.below(budget + 1);
      mono[v] = e;
      budget -= e;
    }
    terms.push_back(Term{mono, FFElem{rng.below(f->q())}});
  }
  return Poly::from_terms(f, n, std::move(terms));
}

std::vector<FFElem> random_point(oracle::Rng& rng, const FieldPtr& f, std::size_t n) {
  std::vector<FFElem> pt(n);
  for (auto& x : pt) x = FFElem{rng.below(f->q())};
  return pt;
}

}  // namespace

TEST_CASE("arithmetic examples") {
  auto f2 = make_field(2, 1);
  auto f4 = make_field(2, 2);
  CHECK((P("X + Y", f2, 2) + P("X + Y", f2, 2)).is_zero());
  const Poly d = P("X1*X3 + X2^2", f4, 3);
  CHECK(d * d == P("X1^2*X3^2 + X2^4", f4, 3));
  CHECK(P("X1 + 1", f4, 1).scale(f4->gen()) == P("g*X1 + g", f4, 1));
  CHECK(d.pow(2) == d.frobenius());
  CHECK_THROWS_AS(P("X1", f4, 2) + P("X1", f4, 3), MismatchError);
  CHECK_THROWS_AS(P("X1", f4, 2) + P("X1", f2, 2), MismatchError);
}

TEST_CASE("evaluation examples") {
  auto f4 = make_field(2, 2);
  const FFElem g{2};
  const std::vector<FFElem> pt{FFElem{1}, g, FFElem{1}};
  CHECK(P("X1*X3 + X2^2", f4, 3).eval(pt) == g);
  const std::vector<FFElem> gg{g, g};
  CHECK(P("X1 + X2^2", f4, 2).eval(gg) == FFElem{1});
  const std::vector<FFElem> zero(2);
  CHECK(P("g*X1*X2 + X2^3 + g^2", f4, 2).eval(zero) == FFElem{3});
  const std::vector<FFElem> short_pt{g};
  CHECK_THROWS_AS(P("X1", f4, 2).eval(short_pt), MismatchError);
}

TEST_CASE("substitution examples") {
  auto f3 = make_field(3, 1);
  const std::vector<Poly> inv{P("X - Y^2", f3, 2), P("Y", f3, 2)};
  CHECK(P("X + Y^2", f3, 2).substitute(inv) == P("X", f3, 2));
  const Poly f = P("2*X1^2*X2 + X2 + 1", f3, 2);
  const std::vector<Poly> id{P("X1", f3, 2), P("X2", f3, 2)};
  CHECK(f.substitute(id) == f);
  auto f2 = make_field(2, 1);
  const std::vector<Poly> sq{P("X1^2", f2, 1)};
  CHECK(P("X1^2", f2, 1).substitute(sq) == P("X1^4", f2, 1));
  const std::vector<Poly> one_arg{P("X1", f3, 2)};
  CHECK_THROWS_AS(f.substitute(one_arg), MismatchError);
}

TEST_CASE("functional reduction examples") {
  auto f4 = make_field(2, 2);
  auto f2 = make_field(2, 1);
  CHECK(P("X1^4", f4, 1).functional_reduce() == P("X1", f4, 1));
  CHECK(P("X1^2", f4, 1).functional_reduce() == P("X1^2", f4, 1));
  CHECK(P("X1^2 + X1", f2, 1).functional_reduce().is_zero());
  CHECK(P("X1^7*X2^3 + X1", f4, 2).functional_reduce() == P("X1*X2^3 + X1", f4, 2));
}

TEST_CASE("ring laws on random polynomials") {
  oracle::Rng rng(11);
  for (auto [p, m] : {std::pair{2U, 1U}, {3U, 1U}, {2U, 2U}, {5U, 1U}, {7U, 1U}, {2U, 3U}}) {
    auto f = make_field(p, m);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + rng.below(3);
      const Poly a = random_poly(rng, f, n, 4, 4);
      const Poly b = random_poly(rng, f, n, 4, 4);
      const Poly c = random_poly(rng, f, n, 4, 4);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a * b == b * a);
      REQUIRE((a - a).is_zero());
      REQUIRE(a.pow(3) == a * a * a);
      REQUIRE(a.pow(p) == a.frobenius());
    }
  }
}

TEST_CASE("evaluation commutes with substitution") {
  oracle::Rng rng(12);
  for (auto [p, m] : {std::pair{2U, 2U}, {3U, 1U}, {2U, 3U}, {5U, 1U}}) {
    auto f = make_field(p, m);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng.below(3);
      const Poly h = random_poly(rng, f, n, 3, 4);
      std::vector<Poly> args;
      for (std::size_t i = 0; i < n; ++i) args.push_back(random_poly(rng, f, n, 3, 3));
      const auto pt = random_point(rng, f, n);
      std::vector<FFElem> inner;
      for (const auto& a : args) inner.push_back(a.eval(pt));
      REQUIRE(h.substitute(args).eval(pt) == h.eval(inner));
    }
  }
}

TEST_CASE("functional reduction preserves values at every point") {
  oracle::Rng rng(13);
  for (auto [p, m] : {std::pair{2U, 1U}, {2U, 2U}, {3U, 1U}, {2U, 3U}, {5U, 1U}, {7U, 1U}}) {
    auto f = make_field(p, m);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + rng.below(2);
      const Poly h = random_poly(rng, f, n, 20, 5);
      const Poly r = h.functional_reduce();
      for (const auto& t : r.terms()) {
        for (std::size_t v = 0; v < n; ++v) REQUIRE(t.monomial[v] <= f->q() - 1);
      }
      std::vector<FFElem> pt(n);
      const std::uint32_t total = n == 1 ? f->q() : f->q() * f->q();
      for (std::uint32_t idx = 0; idx < total; ++idx) {
        pt[0] = FFElem{idx % f->q()};
        if (n == 2) pt[1] = FFElem{idx / f->q()};
        REQUIRE(h.eval(pt) == r.eval(pt));
      }
    }
  }
}

TEST_CASE("parser examples") {
  auto f4 = make_field(2, 2);
  CHECK(P("X1 + X2^2", f4, 2) == P("X + Y^2", f4, 2));
  const Poly h = P("g*X1*X3 + X2^2", f4, 3);
  CHECK(h.coefficient(P("X1*X3", f4, 3).terms()[0].monomial) == f4->gen());
  CHECK(format_poly(h) == "g*X1*X3 + X2^2");
  CHECK(format_poly(Poly(f4, 2)) == "0");
  CHECK(P("-X1 + 3", make_field(5, 1), 1) == P("4*X1 + 3", make_field(5, 1), 1));
  CHECK(P("X1 - X2", f4, 2) == P("X1 + X2", f4, 2));
  CHECK(P("g^3", f4, 1) == P("1", f4, 1));
  CHECK(P("2*X1", f4, 1).is_zero());
  CHECK(P("X1 * X1 * X2^0", f4, 2) == P("X1^2", f4, 2));
}

TEST_CASE("parser errors") {
  auto f4 = make_field(2, 2);
  try {
    P("X0 + 1", f4, 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("1-based") != std::string::npos);
  }
  CHECK_THROWS_AS(P("X3", f4, 2), ParseError);
  CHECK_THROWS_AS(P("X1 +", f4, 2), ParseError);
  CHECK_THROWS_AS(P("X1 ^", f4, 2), ParseError);
  CHECK_THROWS_AS(P("X1 $ X2", f4, 2), ParseError);
  CHECK_THROWS_AS(P("", f4, 2), ParseError);
  CHECK_THROWS_AS(P("Z", f4, 2), ParseError);
  CHECK_THROWS_AS(P("h*X1", f4, 2), ParseError);
  CHECK_THROWS_AS(P("X1 X2", f4, 2), ParseError);
}

TEST_CASE("format then parse round trip") {
  struct Case {
    std::uint32_t p, m;
    std::size_t n;
    const char* text;
  };
  const std::vector<Case> corpus = {
      {2, 2, 2, "X1 + X2^2"},
      {3, 1, 2, "X1 - X2^2"},
      {2, 2, 3, "g*X1*X3 + X2^2"},
      {2, 2, 3, "X1*X3 + X2^2"},
      {2, 2, 3, "X1 + X1^2*X3^3 + X2^4*X3"},
      {2, 2, 3, "X2 + X1*X3^2 + X2^2*X3"},
      {3, 1, 3, "X1 - 2*X1*X2*X3 - 2*X2^3 - X1^2*X3^3 - 2*X1*X2^2*X3^2 - X2^4*X3"},
      {3, 1, 3, "X1 + 2*X1*X2*X3 + 2*X2^3 - X1^2*X3^3 - 2*X1*X2^2*X3^2 - X2^4*X3"},
      {2, 2, 2, "X1^2"},
      {2, 2, 2, "X1^4"},
      {2, 1, 2, "X1 + X2"},
      {2, 2, 3, "X1 + X2*X3"},
      {2, 2, 3, "X2 + X3^2"},
      {2, 2, 3, "X3 + 1"},
      {2, 3, 2, "g^6*X1^3*X2 + g^5*X2^2 + g + 1"},
      {3, 2, 2, "g*X1 + X2 + g + 2"},
      {5, 1, 3, "4*X1^2*X2 + 3*X3 + 2"},
  };
  oracle::Rng rng(14);
  for (const auto& c : corpus) {
    auto f = make_field(c.p, c.m);
    const Poly a = P(c.text, f, c.n);
    const std::string s = format_poly(a);
    REQUIRE(P(s.c_str(), f, c.n) == a);
    REQUIRE(format_poly(P(s.c_str(), f, c.n)) == s);
  }
  for (auto [p, m] : {std::pair{2U, 2U}, {3U, 2U}, {2U, 4U}, {7U, 1U}}) {
    auto f = make_field(p, m);
    for (int trial = 0; trial < 50; ++trial) {
      const Poly a = random_poly(rng, f, 3, 5, 5);
      REQUIRE(parse_poly(format_poly(a), f, 3) == a);
    }
  }
}

TEST_CASE("graded lex ordering and queries") {
  auto f4 = make_field(2, 2);
  const Poly h = P("X2 + X1 + X1*X2 + X2^2 + 1", f4, 2);
  CHECK(format_poly(h) == "X1*X2 + X2^2 + X1 + X2 + 1");
  CHECK(h.degree() == 2);
  CHECK(h.involves(1));
  CHECK_FALSE(P("X2", f4, 2).involves(1));
  CHECK(P("X2", f4, 2).is_variable(2));
  CHECK(h.constant_term() == f4->one());
  CHECK(P("X1", f4, 1).with_vars(3) == P("X1", f4, 3));
}
