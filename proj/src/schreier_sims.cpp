// Deterministic Schreier-Sims: stabilizer chain with explicit transversal
// tables, Schreier generators sifted level by level from the bottom up.
// Each (orbit point, generator) pair is sifted at most once successfully;
// transversal entries never change after creation, so a pair that sifted to
// the identity keeps doing so as deeper levels grow.

#include <algorithm>

#include "oddaut/error.hpp"
#include "oddaut/permgrp.hpp"

namespace oddaut {

namespace {

std::uint32_t first_moved_point(const Perm& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return i;
  }
  return p.size();
}

}  // namespace

void Bsgs::add_level(std::uint32_t base_point) {
  Level level;
  level.base_point = base_point;
  level.orbit = {base_point};
  level.orbit_pos.assign(degree_, -1);
  level.orbit_pos[base_point] = 0;
  level.transversal.push_back(Perm::identity(degree_));
  level.transversal_inv.push_back(Perm::identity(degree_));
  level.checked.push_back(0);
  levels_.push_back(std::move(level));
}

void Bsgs::extend_orbit(Level& level, std::size_t first_new_generator) {
  auto visit = [&level](std::size_t slot, std::size_t gen) {
    const Perm& s = level.generators[gen];
    const std::uint32_t gamma = s[level.orbit[slot]];
    if (level.orbit_pos[gamma] >= 0) return;
    Perm u = perm_compose(s, level.transversal[slot]);
    level.orbit_pos[gamma] = static_cast<std::int32_t>(level.orbit.size());
    level.orbit.push_back(gamma);
    level.transversal_inv.push_back(perm_inverse(u));
    level.transversal.push_back(std::move(u));
    level.checked.push_back(0);
  };
  const std::size_t old_size = level.orbit.size();
  for (std::size_t slot = 0; slot < old_size; ++slot) {
    for (std::size_t g = first_new_generator; g < level.generators.size(); ++g) visit(slot, g);
  }
  for (std::size_t slot = old_size; slot < level.orbit.size(); ++slot) {
    for (std::size_t g = 0; g < level.generators.size(); ++g) visit(slot, g);
  }
}

void Bsgs::add_generator(std::size_t level, const Perm& g) {
  Level& l = levels_[level];
  l.generators.push_back(g);
  extend_orbit(l, l.generators.size() - 1);
}

Bsgs::SiftResult Bsgs::sift(Perm g, std::size_t start) const {
  for (std::size_t l = start; l < levels_.size(); ++l) {
    const Level& level = levels_[l];
    const std::int32_t pos = level.orbit_pos[g[level.base_point]];
    if (pos < 0) return SiftResult{std::move(g), l};
    g = perm_compose(level.transversal_inv[static_cast<std::size_t>(pos)], g);
  }
  return SiftResult{std::move(g), levels_.size()};
}

void Bsgs::build() {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    const auto li = static_cast<std::size_t>(i);
    bool extended = false;
    for (std::size_t k = 0; k < levels_[li].orbit.size() && !extended; ++k) {
      for (std::size_t s = levels_[li].checked[k]; s < levels_[li].generators.size(); ++s) {
        const Level& level = levels_[li];
        const Perm& gen = level.generators[s];
        const std::uint32_t gamma = gen[level.orbit[k]];
        const auto gamma_slot = static_cast<std::size_t>(level.orbit_pos[gamma]);
        // Schreier generator u_gamma^-1 o s o u_beta fixes the base point.
        Perm h = perm_compose(level.transversal_inv[gamma_slot], perm_compose(gen, level.transversal[k]));
        if (h.is_identity()) {
          levels_[li].checked[k] = s + 1;
          continue;
        }
        SiftResult r = sift(std::move(h), li + 1);
        if (r.level == levels_.size() && r.residue.is_identity()) {
          levels_[li].checked[k] = s + 1;
          continue;
        }
        if (r.level == levels_.size()) add_level(first_moved_point(r.residue));
        for (std::size_t l = li + 1; l <= r.level; ++l) add_generator(l, r.residue);
        i = static_cast<std::ptrdiff_t>(r.level);
        extended = true;
        break;
      }
    }
    if (!extended) --i;
  }
}

Bsgs schreier_sims(std::span<const Perm> generators) {
  if (generators.empty()) throw DomainError("schreier_sims needs at least one generator");
  const std::uint32_t degree = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != degree) throw MismatchError("generators act on different point counts");
  }
  Bsgs bsgs(degree);
  std::vector<Perm> nontrivial;
  for (const auto& g : generators) {
    if (!g.is_identity()) nontrivial.push_back(g);
  }
  // Initial base: every generator must move some base point.
  for (const auto& g : nontrivial) {
    const bool fixes_base = std::all_of(bsgs.levels_.begin(), bsgs.levels_.end(),
                                        [&g](const auto& l) { return g[l.base_point] == l.base_point; });
    if (fixes_base) bsgs.add_level(first_moved_point(g));
  }
  for (std::size_t l = 0; l < bsgs.levels_.size(); ++l) {
    for (const auto& g : nontrivial) {
      bool fixes_prefix = true;
      for (std::size_t k = 0; k < l && fixes_prefix; ++k) {
        fixes_prefix = g[bsgs.levels_[k].base_point] == bsgs.levels_[k].base_point;
      }
      if (fixes_prefix) bsgs.levels_[l].generators.push_back(g);
    }
    bsgs.extend_orbit(bsgs.levels_[l], 0);
  }
  bsgs.build();
  return bsgs;
}

std::vector<std::uint32_t> Bsgs::base() const {
  std::vector<std::uint32_t> out;
  for (const auto& l : levels_) out.push_back(l.base_point);
  return out;
}

std::vector<Perm> Bsgs::strong_generators() const {
  std::vector<Perm> out;
  for (const auto& l : levels_) {
    for (const auto& g : l.generators) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

std::vector<std::uint32_t> Bsgs::orbit_sizes() const {
  std::vector<std::uint32_t> out;
  for (const auto& l : levels_) out.push_back(static_cast<std::uint32_t>(l.orbit.size()));
  return out;
}

BigInt Bsgs::order() const {
  BigInt r = 1;
  for (const auto& l : levels_) r *= static_cast<std::uint32_t>(l.orbit.size());
  return r;
}

bool Bsgs::contains(const Perm& p) const {
  if (p.size() != degree_) throw MismatchError("permutation size does not match group degree");
  SiftResult r = sift(p, 0);
  return r.level == levels_.size() && r.residue.is_identity();
}

}  // namespace oddaut
