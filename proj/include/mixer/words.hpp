#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mixer/element.hpp"

namespace mixer {

// A word over the 4-letter generator set, evaluated left to right by
// right-multiplication onto a start element.
struct GeneratorWord {
  std::vector<Generator> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  MixerElement evaluate_from(const MixerElement& start) const;

  void append(Generator u) { letters.push_back(u); }
  void append(const GeneratorWord& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
  }
  // |to - from| move letters walking from one site to the other.
  void append_moves(Site from, Site to);

  std::string str() const;  // e.g. "S+ M+ S+ S- M-"
};

// A generator sequence on Z none of whose suffix sums vanishes.
bool is_generator_simple_path(std::span<const int> steps);

// Word taking (0,id) to (0,<0,h>) along the monotone path of |h| unit
// steps toward h. Length exactly 4|h| - 3. Rejects h = 0.
GeneratorWord transposition_word(Site h);

// Word taking (g_start, id) to (g_start, c). The orbit is rotated so that
// g_start is its anchor; the cycle is then realized as the product of
// adjacent-in-orbit transpositions, each via transposition_word plus
// explicit relocation moves. Length <= cycle_word_length_bound(g_start, c).
// Rejects g_start outside the orbit.
GeneratorWord cycle_word(Site g_start, const Cycle& c);

// 5 * sum_{j<n} d(g'_j, g'_{j+1}) + d(g'_n, g'_1) for the orbit rotated to
// anchor at g_start. Never exceeds 5 * c.displacement_sum().
std::uint64_t cycle_word_length_bound(Site g_start, const Cycle& c);

// Nearest-neighbor path on Z; sites consecutive, front() is the start.
struct CoverPath {
  std::vector<Site> sites;

  std::size_t length() const { return sites.empty() ? 0 : sites.size() - 1; }
};

// Minimal length of a path from g visiting all of supp(sigma). On Z this
// is (b - a) + min(g - a, b - g) with a, b the extremes of supp u {g};
// 0 for the identity.
std::uint64_t covering_number(Site g, const SitePermutation& sigma);

// A witness path of length covering_number(g, sigma). Sweeps the cheaper
// end first; ties go left.
CoverPath covering_path(Site g, const SitePermutation& sigma);

// Word taking (g, id) to (g, sigma), built by walking the covering path,
// realizing each cycle in full at the first of its sites reached, and
// retracing. Length <= 2 * covering_number(g, sigma) + 5 * displacement_sum(sigma).
GeneratorWord upper_bound_word(Site g, const SitePermutation& sigma);

// ceil(displacement_sum(sigma) / 2): a lower bound on the distance from
// (g, sigma) to (g', id) for every g, g'.
std::uint64_t lower_bound(const SitePermutation& sigma);

struct DistanceBounds {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  GeneratorWord witness;  // evaluates from (g, id) to (g, sigma)
};

// lower_bound together with the constructive upper bound and its witness.
DistanceBounds distance_bounds(Site g, const SitePermutation& sigma);

}  // namespace mixer
