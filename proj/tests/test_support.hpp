#pragma once

#include <string>
#include <vector>

#include "mixer/element.hpp"
#include "mixer/rng.hpp"
#include "mixer/site_permutation.hpp"

namespace mixer::testing {

inline SitePermutation perm(std::vector<std::pair<Site, Site>> pairs) {
  return SitePermutation::from_pairs(std::move(pairs));
}

inline SitePermutation cycle_perm(std::vector<Site> orbit) {
  return Cycle(std::move(orbit)).as_permutation();
}

inline MixerElement random_element(SplitMix64& rng, Site lo, Site hi,
                                   std::size_t max_moved) {
  const auto interval = static_cast<std::uint64_t>(hi - lo) + 1;
  const Site position = lo + static_cast<Site>(rng.below(interval));
  return {position, random_site_permutation(rng, lo, hi, max_moved)};
}

}  // namespace mixer::testing
