#include "mixer/words.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace mixer {

MixerElement GeneratorWord::evaluate_from(const MixerElement& start) const {
  MixerElement e = start;
  for (Generator u : letters) e = apply_generator(e, u);
  return e;
}

void GeneratorWord::append_moves(Site from, Site to) {
  const Generator step = move_generator(to >= from ? +1 : -1);
  for (std::uint64_t i = 0, n = site_distance(from, to); i < n; ++i) {
    letters.push_back(step);
  }
}

std::string GeneratorWord::str() const {
  std::string out;
  for (Generator u : letters) {
    if (!out.empty()) out.push_back(' ');
    out += to_string(u);
  }
  return out;
}

bool is_generator_simple_path(std::span<const int> steps) {
  // Work right to left: every suffix sum must be nonzero.
  long long suffix = 0;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (*it != 1 && *it != -1) return false;
    suffix += *it;
    if (suffix == 0) return false;
  }
  return !steps.empty();
}

GeneratorWord transposition_word(Site h) {
  if (h == 0) {
    throw std::invalid_argument("transposition_word: h must be nonzero");
  }
  const int u = h > 0 ? +1 : -1;
  const std::uint64_t k = site_distance(h, 0);
  // Monotone path of k copies of u; trivially generator-simple.
  assert(is_generator_simple_path(std::vector<int>(k, u)));
  GeneratorWord w;
  w.letters.reserve(4 * k - 3);
  for (std::uint64_t j = 0; j + 1 < k; ++j) {
    w.append(swap_generator(u));
    w.append(move_generator(u));
  }
  w.append(swap_generator(u));
  for (std::uint64_t j = 0; j + 1 < k; ++j) {
    w.append(swap_generator(-u));
    w.append(move_generator(-u));
  }
  return w;
}

namespace {

// Orbit of c rotated so that g_start comes first.
std::vector<Site> rotated_orbit(Site g_start, const Cycle& c) {
  auto it = std::find(c.orbit.begin(), c.orbit.end(), g_start);
  if (it == c.orbit.end()) {
    throw std::invalid_argument("cycle_word: start site " +
                                std::to_string(g_start) +
                                " is not in the orbit");
  }
  std::vector<Site> orbit(it, c.orbit.end());
  orbit.insert(orbit.end(), c.orbit.begin(), it);
  return orbit;
}

}  // namespace

std::uint64_t cycle_word_length_bound(Site g_start, const Cycle& c) {
  const std::vector<Site> orbit = rotated_orbit(g_start, c);
  std::uint64_t bound = 0;
  for (std::size_t j = 0; j + 1 < orbit.size(); ++j) {
    bound += 5 * site_distance(orbit[j], orbit[j + 1]);
  }
  return bound + site_distance(orbit.back(), orbit.front());
}

GeneratorWord cycle_word(Site g_start, const Cycle& c) {
  const std::vector<Site> orbit = rotated_orbit(g_start, c);
  const std::size_t n = orbit.size();
  // <g_1,...,g_n> = <g_1,g_2><g_2,g_3>...<g_{n-1},g_n>. Realize the
  // transpositions right to left; each left-multiplies onto the current
  // permutation when its word is appended at position g_m.
  GeneratorWord w;
  Site at = orbit.front();
  for (std::size_t m = n - 1; m >= 1; --m) {
    const Site anchor = orbit[m - 1];
    w.append_moves(at, anchor);
    w.append(transposition_word(checked_sub(orbit[m], anchor)));
    at = anchor;
  }
  // m = 1 left the walker at orbit.front() = g_start.
  return w;
}

std::uint64_t covering_number(Site g, const SitePermutation& sigma) {
  if (sigma.is_identity()) return 0;
  const Site a = std::min(g, *sigma.support_min());
  const Site b = std::max(g, *sigma.support_max());
  return site_distance(a, b) + std::min(site_distance(g, a), site_distance(b, g));
}

CoverPath covering_path(Site g, const SitePermutation& sigma) {
  CoverPath path;
  path.sites.push_back(g);
  if (sigma.is_identity()) return path;
  const Site a = std::min(g, *sigma.support_min());
  const Site b = std::max(g, *sigma.support_max());
  auto sweep = [&path](Site from, Site to) {
    const Site step = to >= from ? +1 : -1;
    for (Site x = from; x != to; x += step) path.sites.push_back(x + step);
  };
  if (site_distance(g, a) <= site_distance(b, g)) {
    sweep(g, a);  // ties go left
    sweep(a, b);
  } else {
    sweep(g, b);
    sweep(b, a);
  }
  return path;
}

namespace {

// Word achieving sigma along the cover path, starting and ending at
// path[from]. Walks to the first support site, realizes that site's full
// cycle there, recurses on the path suffix, then retraces.
void realize_on_path(const std::vector<Site>& path, std::size_t from,
                     const SitePermutation& sigma, GeneratorWord& w) {
  if (sigma.is_identity()) return;
  std::size_t j = from;
  while (j < path.size() && sigma(path[j]) == path[j]) ++j;
  if (j == path.size()) {
    throw std::logic_error("cover path misses part of the support");
  }
  for (std::size_t i = from; i < j; ++i) {
    w.append(move_generator(path[i + 1] >= path[i] ? +1 : -1));
  }
  const std::vector<Cycle> cycles = cycle_decomposition(sigma);
  auto hit = std::find_if(cycles.begin(), cycles.end(),
                          [&](const Cycle& c) { return c.contains(path[j]); });
  w.append(cycle_word(path[j], *hit));
  // Drop the realized cycle; disjoint supports commute.
  std::vector<SitePermutation::Entry> rest;
  for (const auto& e : sigma.entries()) {
    if (!hit->contains(e.first)) rest.push_back(e);
  }
  realize_on_path(path, j, SitePermutation::from_pairs(std::move(rest)), w);
  for (std::size_t i = j; i > from; --i) {
    w.append(move_generator(path[i - 1] >= path[i] ? +1 : -1));
  }
}

}  // namespace

GeneratorWord upper_bound_word(Site g, const SitePermutation& sigma) {
  GeneratorWord w;
  realize_on_path(covering_path(g, sigma).sites, 0, sigma, w);
  return w;
}

std::uint64_t lower_bound(const SitePermutation& sigma) {
  return (displacement_sum(sigma) + 1) / 2;
}

DistanceBounds distance_bounds(Site g, const SitePermutation& sigma) {
  DistanceBounds b;
  b.lower = lower_bound(sigma);
  b.upper = 2 * covering_number(g, sigma) + 5 * displacement_sum(sigma);
  b.witness = upper_bound_word(g, sigma);
  return b;
}

}  // namespace mixer
