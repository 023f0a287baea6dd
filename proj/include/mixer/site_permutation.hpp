#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mixer/rng.hpp"
#include "mixer/sites.hpp"

namespace mixer {

// A bijection of Z with finite support, stored as (site, image) pairs
// sorted by site with fixed points stripped. Immutable value type; two
// permutations are equal iff they are equal as functions on Z.
class SitePermutation {
 public:
  using Entry = std::pair<Site, Site>;

  SitePermutation() = default;

  // Builds from (site, image) pairs; sites outside the list are fixed.
  // Fixed points are stripped. Throws std::invalid_argument if the sites
  // are not distinct or the images are not a permutation of the sites.
  static SitePermutation from_pairs(std::vector<Entry> pairs);

  static SitePermutation transposition(Site a, Site b);

  // sigma(x); identity off the stored support.
  Site operator()(Site x) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Site> support() const;
  std::size_t support_size() const { return entries_.size(); }
  bool is_identity() const { return entries_.empty(); }
  std::optional<Site> support_min() const;
  std::optional<Site> support_max() const;

  friend bool operator==(const SitePermutation&, const SitePermutation&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by site, no fixed points
};

// (sigma . tau)(x) = sigma(tau(x)): tau acts first. The whole project uses
// this convention; the semidirect-product formulas below are stated against
// it and the group-axiom tests pin it down.
SitePermutation compose(const SitePermutation& sigma, const SitePermutation& tau);

SitePermutation invert_perm(const SitePermutation& sigma);

// x -> g + sigma(x - g); the action of the translation by g on permutations.
// Support is g + support(sigma). Site arithmetic is checked.
SitePermutation conjugate_by_translation(Site g, const SitePermutation& sigma);

// sum over the support of |sigma(x) - x|: total tile displacement.
std::uint64_t displacement_sum(const SitePermutation& sigma);

// Cyclic permutation <g_1,...,g_n>: sigma(g_j) = g_{j+1}, sigma(g_n) = g_1.
struct Cycle {
  std::vector<Site> orbit;

  // Requires n >= 2 distinct sites.
  explicit Cycle(std::vector<Site> orbit_in);

  SitePermutation as_permutation() const;
  bool contains(Site g) const;
  // sum over the orbit of d(g_j, sigma(g_j)), closing edge included.
  std::uint64_t displacement_sum() const;
};

// Disjoint cycles whose product (in any order) is sigma. Deterministic
// listing: cycles ordered by their smallest site, each orbit starting at
// its smallest site.
std::vector<Cycle> cycle_decomposition(const SitePermutation& sigma);

// Random permutation moving at most max_moved sites of [lo, hi]: picks that
// many distinct sites and shuffles the images among them. Fixed points left
// by the shuffle are stripped, so the support may come out smaller.
SitePermutation random_site_permutation(SplitMix64& rng, Site lo, Site hi,
                                        std::size_t max_moved);

}  // namespace mixer
