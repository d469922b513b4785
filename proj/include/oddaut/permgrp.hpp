#ifndef ODDAUT_PERMGRP_HPP
#define ODDAUT_PERMGRP_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oddaut/autmap.hpp"
#include "oddaut/gf.hpp"

namespace oddaut {

using BigInt = boost::multiprecision::cpp_int;

/// Identifies F_q^n with {0, ..., q^n - 1}: (x_1, ..., x_n) -> sum index(x_i) q^(i-1).
class PointIndexer {
 public:
  PointIndexer(FieldPtr field, std::size_t n);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return size_; }

  std::uint32_t index(std::span<const FFElem> point) const;
  std::vector<FFElem> point(std::uint32_t index) const;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::uint32_t size_;
};

enum class Parity { Even, Odd };

inline Parity operator*(Parity a, Parity b) { return a == b ? Parity::Even : Parity::Odd; }
const char* to_string(Parity p);

/// Permutation of {0, ..., N-1} stored as its image array.
class Perm {
 public:
  explicit Perm(std::vector<std::uint32_t> images);  // validates
  static Perm identity(std::uint32_t n);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator[](std::uint32_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  struct Unchecked {};
  Perm(std::vector<std::uint32_t> images, Unchecked) : images_(std::move(images)) {}
  friend Perm perm_compose(const Perm&, const Perm&);
  friend Perm perm_inverse(const Perm&);

  std::vector<std::uint32_t> images_;
};

/// (p o r)[i] = p[r[i]].
Perm perm_compose(const Perm& p, const Perm& r);
Perm perm_inverse(const Perm& p);

struct CycleDecomposition {
  // Nontrivial cycles, each starting at its minimal element, ordered by it.
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t fixed_points = 0;

  // Cycle length -> count, for lengths >= 2.
  std::map<std::uint32_t, std::uint32_t> histogram() const;
};

CycleDecomposition cycle_decomposition(const Perm& p);
Parity sign(const Perm& p);
/// "(2 3)(5 9 11)", "()" for the identity.
std::string format_cycles(const Perm& p);

/// The permutation E(F) of the point set induced by evaluating F; throws
/// NotBijectiveError if two points share an image.
Perm permutation_from_map(const PolyMap& f, const PointIndexer& indexer);

/// Base and strong generating set built by deterministic Schreier-Sims with
/// explicit transversal tables. Immutable once built.
class Bsgs {
 public:
  std::uint32_t degree() const noexcept { return degree_; }
  std::vector<std::uint32_t> base() const;
  std::vector<Perm> strong_generators() const;
  std::vector<std::uint32_t> orbit_sizes() const;
  BigInt order() const;

  // True iff p sifts to the identity through the stabilizer chain.
  bool contains(const Perm& p) const;

 private:
  friend Bsgs schreier_sims(std::span<const Perm> generators);

  struct Level {
    std::uint32_t base_point = 0;
    std::vector<Perm> generators;
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> orbit_pos;  // point -> slot in orbit, -1 outside
    std::vector<Perm> transversal;        // transversal[k] maps base_point to orbit[k]
    std::vector<Perm> transversal_inv;
    std::vector<std::size_t> checked;     // per orbit slot: generators already verified
  };

  struct SiftResult {
    Perm residue;
    std::size_t level;  // first level whose orbit misses the image, or levels_.size()
  };

  explicit Bsgs(std::uint32_t degree) : degree_(degree) {}
  SiftResult sift(Perm g, std::size_t start) const;
  void add_level(std::uint32_t base_point);
  void add_generator(std::size_t level, const Perm& g);
  void extend_orbit(Level& level, std::size_t first_new_generator);
  void build();

  std::uint32_t degree_;
  std::vector<Level> levels_;
};

Bsgs schreier_sims(std::span<const Perm> generators);
inline bool contains(const Bsgs& bsgs, const Perm& p) { return bsgs.contains(p); }

BigInt factorial(std::uint32_t n);

}  // namespace oddaut

#endif  // ODDAUT_PERMGRP_HPP
