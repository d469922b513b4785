#include "oddaut/permgrp.hpp"

#include <algorithm>
#include <numeric>

#include "oddaut/error.hpp"

namespace oddaut {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

PointIndexer::PointIndexer(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n) {
  if (!field_) throw DomainError("indexer needs a field");
  if (n_ < 1) throw DomainError("dimension must be at least 1");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    size *= field_->q();
    if (size > 0xffffffULL) throw DomainError("point set too large to index");
  }
  size_ = static_cast<std::uint32_t>(size);
}

std::uint32_t PointIndexer::index(std::span<const FFElem> point) const {
  if (point.size() != n_) throw MismatchError("point arity does not match indexer dimension");
  std::uint32_t idx = 0;
  for (std::size_t i = n_; i-- > 0;) {
    if (!field_->valid(point[i])) throw DomainError("invalid field element in point");
    idx = idx * field_->q() + point[i].index;
  }
  return idx;
}

std::vector<FFElem> PointIndexer::point(std::uint32_t index) const {
  if (index >= size_) throw DomainError("point index out of range");
  std::vector<FFElem> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = FFElem{index % field_->q()};
    index /= field_->q();
  }
  return out;
}

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw DomainError("image array is not a permutation");
    seen[v] = true;
  }
}

Perm Perm::identity(std::uint32_t n) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 0U);
  return Perm(std::move(images), Unchecked{});
}

bool Perm::is_identity() const noexcept {
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm perm_compose(const Perm& p, const Perm& r) {
  if (p.size() != r.size()) throw MismatchError("permutation size mismatch");
  std::vector<std::uint32_t> out(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) out[i] = p.images_[r.images_[i]];
  return Perm(std::move(out), Perm::Unchecked{});
}

Perm perm_inverse(const Perm& p) {
  std::vector<std::uint32_t> out(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) out[p.images_[i]] = i;
  return Perm(std::move(out), Perm::Unchecked{});
}

std::map<std::uint32_t, std::uint32_t> CycleDecomposition::histogram() const {
  std::map<std::uint32_t, std::uint32_t> h;
  for (const auto& c : cycles) ++h[static_cast<std::uint32_t>(c.size())];
  return h;
}

CycleDecomposition cycle_decomposition(const Perm& p) {
  CycleDecomposition out;
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> cycle;
    for (std::uint32_t x = start; !seen[x]; x = p[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    if (cycle.size() == 1) {
      ++out.fixed_points;
    } else {
      out.cycles.push_back(std::move(cycle));
    }
  }
  return out;
}

Parity sign(const Perm& p) {
  const auto d = cycle_decomposition(p);
  const std::uint64_t cycles = d.cycles.size() + d.fixed_points;
  return (p.size() - cycles) % 2 == 0 ? Parity::Even : Parity::Odd;
}

std::string format_cycles(const Perm& p) {
  const auto d = cycle_decomposition(p);
  if (d.cycles.empty()) return "()";
  std::string out;
  for (const auto& c : d.cycles) {
    out += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(c[i]);
    }
    out += ")";
  }
  return out;
}

Perm permutation_from_map(const PolyMap& f, const PointIndexer& indexer) {
  if (f.dim() != indexer.dim()) throw MismatchError("map dimension does not match indexer");
  if (!same_field(f.field(), indexer.field())) throw MismatchError("map field does not match indexer");
  // Evaluation only depends on the functional class; reduce once up front.
  std::vector<Poly> reduced;
  reduced.reserve(f.dim());
  for (const auto& c : f.coords()) reduced.push_back(c.functional_reduce());

  const std::uint32_t n_points = indexer.size();
  std::vector<std::uint32_t> images(n_points);
  std::vector<bool> hit(n_points, false);
  std::vector<FFElem> image(f.dim());
  for (std::uint32_t i = 0; i < n_points; ++i) {
    const auto pt = indexer.point(i);
    for (std::size_t c = 0; c < reduced.size(); ++c) image[c] = reduced[c].eval(pt);
    const std::uint32_t j = indexer.index(image);
    if (hit[j]) {
      throw NotBijectiveError("induced map is not bijective: point " + std::to_string(j) + " has two preimages");
    }
    hit[j] = true;
    images[i] = j;
  }
  return Perm(std::move(images));
}

BigInt factorial(std::uint32_t n) {
  BigInt r = 1;
  for (std::uint32_t k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace oddaut
