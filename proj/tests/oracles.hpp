// Brute-force reference implementations. Deliberately naive; they share no
// code paths with the library beyond the element index encoding.
#ifndef ODDAUT_TESTS_ORACLES_HPP
#define ODDAUT_TESTS_ORACLES_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// splitmix64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform-enough in [0, n) for the small n used here.
  std::uint32_t below(std::uint64_t n) { return static_cast<std::uint32_t>(next() % n); }

  std::vector<std::uint32_t> permutation(std::uint32_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = i;
    for (std::uint32_t i = n; i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    return v;
  }

 private:
  std::uint64_t state_;
};

// 0 even, 1 odd.
inline int inversion_parity(const std::vector<std::uint32_t>& images) {
  std::uint64_t inv = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) inv += images[i] > images[j];
  }
  return static_cast<int>(inv & 1U);
}

// Closure of the generators under composition; 0 if it exceeds limit.
inline std::uint64_t enumerate_group(const std::vector<std::vector<std::uint32_t>>& gens, std::uint64_t limit) {
  if (gens.empty()) return 1;
  const std::size_t n = gens.front().size();
  std::vector<std::uint32_t> id(n);
  for (std::uint32_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::uint32_t>> seen{id};
  std::deque<std::vector<std::uint32_t>> todo{id};
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      std::vector<std::uint32_t> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = g[cur[i]];
      if (seen.insert(next).second) {
        if (seen.size() > limit) return 0;
        todo.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

// F_{2^m} arithmetic by shift-and-add reduction on bit vectors; modulus bits
// include the leading term.
struct Gf2m {
  std::uint32_t m;
  std::uint32_t modulus;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (b >> i & 1U) r ^= a << i;
    }
    for (std::uint32_t d = 2 * m; d-- > m;) {
      if (r >> d & 1U) r ^= modulus << (d - m);
    }
    return r;
  }
};

// Prime field F_p for p small.
struct Fp {
  std::uint32_t p;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return a * b % p; }
  std::uint32_t neg(std::uint32_t a) const { return (p - a) % p; }
};

// Nagata's map evaluated straight from its formula in characteristic 2, where
// it reads (x + z d^2, y + z d, z), d = xz + y^2.
inline std::array<std::uint32_t, 3> nagata_char2(const Gf2m& f, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  const std::uint32_t d = f.mul(x, z) ^ f.mul(y, y);
  return {x ^ f.mul(z, f.mul(d, d)), y ^ f.mul(z, d), z};
}

// Nagata over F_p from the general formula (x - 2yd - zd^2, y + zd, z).
inline std::array<std::uint32_t, 3> nagata_prime(const Fp& f, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  const std::uint32_t d = f.add(f.mul(x, z), f.mul(y, y));
  const std::uint32_t two_yd = f.mul(2 % f.p, f.mul(y, d));
  const std::uint32_t zdd = f.mul(z, f.mul(d, d));
  return {f.add(x, f.neg(f.add(two_yd, zdd))), f.add(y, f.mul(z, d)), z};
}

}  // namespace oracle

#endif  // ODDAUT_TESTS_ORACLES_HPP
