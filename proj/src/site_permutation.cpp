#include "mixer/site_permutation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mixer {

namespace {

std::string site_str(Site x) { return std::to_string(x); }

}  // namespace

SitePermutation SitePermutation::from_pairs(std::vector<Entry> pairs) {
  std::erase_if(pairs, [](const Entry& e) { return e.first == e.second; });
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      throw std::invalid_argument("duplicate site in permutation: " +
                                  site_str(pairs[i].first));
    }
  }
  // The images must be exactly the sites, each hit once.
  std::vector<Site> images;
  images.reserve(pairs.size());
  for (const Entry& e : pairs) images.push_back(e.second);
  std::sort(images.begin(), images.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (images[i] != pairs[i].first ||
        (i + 1 < images.size() && images[i] == images[i + 1])) {
      throw std::invalid_argument("pairs are not a finite-support bijection");
    }
  }
  SitePermutation out;
  out.entries_ = std::move(pairs);
  return out;
}

SitePermutation SitePermutation::transposition(Site a, Site b) {
  if (a == b) {
    throw std::invalid_argument("transposition needs two distinct sites, got " +
                                site_str(a) + " twice");
  }
  return from_pairs({{a, b}, {b, a}});
}

Site SitePermutation::operator()(Site x) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Site v) { return e.first < v; });
  if (it != entries_.end() && it->first == x) return it->second;
  return x;
}

std::vector<Site> SitePermutation::support() const {
  std::vector<Site> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.first);
  return out;
}

std::optional<Site> SitePermutation::support_min() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().first;
}

std::optional<Site> SitePermutation::support_max() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.back().first;
}

SitePermutation compose(const SitePermutation& sigma, const SitePermutation& tau) {
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(sigma.support_size() + tau.support_size());
  // supp(sigma.tau) is contained in supp(sigma) u supp(tau).
  for (const auto& [x, _] : tau.entries()) pairs.emplace_back(x, sigma(tau(x)));
  for (const auto& [x, _] : sigma.entries()) {
    if (tau(x) == x) pairs.emplace_back(x, sigma(x));
  }
  return SitePermutation::from_pairs(std::move(pairs));
}

SitePermutation invert_perm(const SitePermutation& sigma) {
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(sigma.support_size());
  for (const auto& [x, y] : sigma.entries()) pairs.emplace_back(y, x);
  return SitePermutation::from_pairs(std::move(pairs));
}

SitePermutation conjugate_by_translation(Site g, const SitePermutation& sigma) {
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(sigma.support_size());
  for (const auto& [x, y] : sigma.entries()) {
    pairs.emplace_back(checked_add(g, x), checked_add(g, y));
  }
  return SitePermutation::from_pairs(std::move(pairs));
}

std::uint64_t displacement_sum(const SitePermutation& sigma) {
  std::uint64_t total = 0;
  for (const auto& [x, y] : sigma.entries()) total += site_distance(x, y);
  return total;
}

Cycle::Cycle(std::vector<Site> orbit_in) : orbit(std::move(orbit_in)) {
  if (orbit.size() < 2) {
    throw std::invalid_argument("cycle needs at least 2 sites");
  }
  std::vector<Site> sorted = orbit;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("cycle orbit has repeated sites");
  }
}

SitePermutation Cycle::as_permutation() const {
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(orbit.size());
  for (std::size_t j = 0; j + 1 < orbit.size(); ++j) {
    pairs.emplace_back(orbit[j], orbit[j + 1]);
  }
  pairs.emplace_back(orbit.back(), orbit.front());
  return SitePermutation::from_pairs(std::move(pairs));
}

bool Cycle::contains(Site g) const {
  return std::find(orbit.begin(), orbit.end(), g) != orbit.end();
}

std::uint64_t Cycle::displacement_sum() const {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j + 1 < orbit.size(); ++j) {
    total += site_distance(orbit[j], orbit[j + 1]);
  }
  total += site_distance(orbit.back(), orbit.front());
  return total;
}

std::vector<Cycle> cycle_decomposition(const SitePermutation& sigma) {
  std::vector<Cycle> cycles;
  std::vector<Site> visited;
  // Entries are sorted by site, so scanning them in order starts every
  // cycle at its smallest site.
  for (const auto& [start, _] : sigma.entries()) {
    if (std::find(visited.begin(), visited.end(), start) != visited.end()) {
      continue;
    }
    std::vector<Site> orbit{start};
    visited.push_back(start);
    for (Site g = sigma(start); g != start; g = sigma(g)) {
      orbit.push_back(g);
      visited.push_back(g);
    }
    cycles.emplace_back(std::move(orbit));
  }
  return cycles;
}

SitePermutation random_site_permutation(SplitMix64& rng, Site lo, Site hi,
                                        std::size_t max_moved) {
  if (lo > hi) throw std::invalid_argument("random_site_permutation: lo > hi");
  const auto interval =
      static_cast<std::uint64_t>(site_distance(lo, hi)) + 1;
  std::uint64_t count = std::min<std::uint64_t>(max_moved, interval);
  if (count < 2) return {};
  // Distinct sites via partial Fisher-Yates over the interval offsets.
  std::vector<Site> sites;
  sites.reserve(count);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> swapped;  // sparse view
  auto offset_at = [&](std::uint64_t i) {
    for (const auto& [k, v] : swapped) {
      if (k == i) return v;
    }
    return i;
  };
  for (std::uint64_t j = 0; j < count; ++j) {
    const std::uint64_t pick = j + rng.below(interval - j);
    const std::uint64_t value = offset_at(pick);
    swapped.emplace_back(pick, offset_at(j));
    sites.push_back(lo + static_cast<Site>(value));
  }
  // Shuffle the images among the chosen sites.
  std::vector<Site> images = sites;
  for (std::uint64_t j = count - 1; j > 0; --j) {
    std::swap(images[j], images[rng.below(j + 1)]);
  }
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) pairs.emplace_back(sites[j], images[j]);
  return SitePermutation::from_pairs(std::move(pairs));
}

}  // namespace mixer
