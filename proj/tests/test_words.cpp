#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "mixer/words.hpp"
#include "test_support.hpp"

using namespace mixer;
using mixer::testing::cycle_perm;
using mixer::testing::perm;

namespace {

MixerElement eval0(const GeneratorWord& w) {
  return w.evaluate_from(identity_element());
}

// Independent oracle for the covering number: breadth-first search over
// (position, subset-of-support-covered) states with unit steps.
std::uint64_t brute_force_cover(Site g, const SitePermutation& sigma) {
  const std::vector<Site> supp = sigma.support();
  if (supp.empty()) return 0;
  const std::size_t full = (std::size_t{1} << supp.size()) - 1;
  auto mask_at = [&](Site x) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < supp.size(); ++i) {
      if (supp[i] == x) m |= std::size_t{1} << i;
    }
    return m;
  };
  std::set<std::pair<Site, std::size_t>> seen;
  std::deque<std::tuple<Site, std::size_t, std::uint64_t>> queue;
  const std::size_t start_mask = mask_at(g);
  queue.emplace_back(g, start_mask, 0);
  seen.insert({g, start_mask});
  while (!queue.empty()) {
    auto [x, mask, steps] = queue.front();
    queue.pop_front();
    if (mask == full) return steps;
    for (Site next : {x - 1, x + 1}) {
      const std::size_t m = mask | mask_at(next);
      if (seen.insert({next, m}).second) queue.emplace_back(next, m, steps + 1);
    }
  }
  return 0;  // unreachable
}

}  // namespace

TEST_CASE("generator simple path condition") {
  CHECK(is_generator_simple_path(std::vector<int>{1}));
  CHECK(is_generator_simple_path(std::vector<int>{1, 1, 1}));
  CHECK(is_generator_simple_path(std::vector<int>{-1, -1}));
  CHECK(is_generator_simple_path(std::vector<int>{-1, 1, 1}));  // suffixes 1, 2, 1
  CHECK_FALSE(is_generator_simple_path(std::vector<int>{1, -1}));
  CHECK_FALSE(is_generator_simple_path(std::vector<int>{1, 1, -1, -1}));
  CHECK_FALSE(is_generator_simple_path(std::vector<int>{}));
  CHECK_FALSE(is_generator_simple_path(std::vector<int>{2}));
}

TEST_CASE("transposition_word") {
  CHECK_THROWS_AS(transposition_word(0), std::invalid_argument);

  const GeneratorWord one = transposition_word(1);
  CHECK(one.letters == std::vector<Generator>{Generator::SwapRight});
  CHECK(eval0(one) == MixerElement{0, SitePermutation::transposition(0, 1)});

  const GeneratorWord two = transposition_word(2);
  CHECK(two.letters ==
        std::vector<Generator>{Generator::SwapRight, Generator::MoveRight,
                               Generator::SwapRight, Generator::SwapLeft,
                               Generator::MoveLeft});
  CHECK(eval0(two) == MixerElement{0, SitePermutation::transposition(0, 2)});

  const GeneratorWord minus3 = transposition_word(-3);
  CHECK(minus3.size() == 9);
  CHECK(eval0(minus3) == MixerElement{0, SitePermutation::transposition(0, -3)});

  for (Site h = -30; h <= 30; ++h) {
    if (h == 0) continue;
    const GeneratorWord w = transposition_word(h);
    CHECK(w.size() == 4 * site_distance(h, 0) - 3);
    CHECK(eval0(w) == MixerElement{0, SitePermutation::transposition(0, h)});
  }
}

TEST_CASE("cycle_word") {
  const Cycle swap_cycle({0, 1});
  const GeneratorWord w1 = cycle_word(0, swap_cycle);
  CHECK(w1.size() <= 10);
  CHECK(w1.evaluate_from({0, {}}) == MixerElement{0, cycle_perm({0, 1})});

  const Cycle three({0, 1, 2});
  const GeneratorWord w2 = cycle_word(0, three);
  CHECK(w2.size() <= 20);
  CHECK(w2.evaluate_from({0, {}}) == MixerElement{0, cycle_perm({0, 1, 2})});

  const GeneratorWord w3 = cycle_word(2, three);
  CHECK(w3.size() <= 20);
  CHECK(w3.evaluate_from({2, {}}) == MixerElement{2, cycle_perm({0, 1, 2})});

  CHECK_THROWS_AS(cycle_word(5, three), std::invalid_argument);

  SplitMix64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const SitePermutation sigma = random_site_permutation(rng, -12, 12, 8);
    for (const Cycle& c : cycle_decomposition(sigma)) {
      const Site anchor = c.orbit[rng.below(c.orbit.size())];
      const GeneratorWord w = cycle_word(anchor, c);
      CHECK(w.evaluate_from({anchor, {}}) ==
            MixerElement{anchor, c.as_permutation()});
      CHECK(w.size() <= cycle_word_length_bound(anchor, c));
      CHECK(w.size() <= 5 * c.displacement_sum());
    }
  }
}

TEST_CASE("covering_number closed form") {
  CHECK(covering_number(0, {}) == 0);
  CHECK(covering_number(0, SitePermutation::transposition(0, 2)) == 2);
  CHECK(covering_number(0, SitePermutation::transposition(-1, 3)) == 5);

  // Exhaustive check against the path-search oracle for small supports.
  SplitMix64 rng(32);
  for (int i = 0; i < 250; ++i) {
    const SitePermutation sigma = random_site_permutation(rng, -5, 5, 5);
    const Site g = -3 + static_cast<Site>(rng.below(7));
    CHECK(covering_number(g, sigma) == brute_force_cover(g, sigma));
  }
}

TEST_CASE("covering_path") {
  CHECK(covering_path(0, {}).sites == std::vector<Site>{0});
  CHECK(covering_path(0, SitePermutation::transposition(0, 2)).sites ==
        std::vector<Site>{0, 1, 2});
  CHECK(covering_path(0, SitePermutation::transposition(-1, 3)).sites ==
        std::vector<Site>{0, -1, 0, 1, 2, 3});
  // Equal sweep costs resolve to the left.
  CHECK(covering_path(0, SitePermutation::transposition(-2, 2)).sites ==
        std::vector<Site>{0, -1, -2, -1, 0, 1, 2});

  SplitMix64 rng(33);
  for (int i = 0; i < 300; ++i) {
    const SitePermutation sigma = random_site_permutation(rng, -10, 10, 8);
    const Site g = -10 + static_cast<Site>(rng.below(21));
    const CoverPath path = covering_path(g, sigma);
    REQUIRE(!path.sites.empty());
    CHECK(path.sites.front() == g);
    CHECK(path.length() == covering_number(g, sigma));
    for (std::size_t s = 0; s + 1 < path.sites.size(); ++s) {
      CHECK(site_distance(path.sites[s], path.sites[s + 1]) == 1);
    }
    for (Site x : sigma.support()) {
      CHECK(std::count(path.sites.begin(), path.sites.end(), x) > 0);
    }
  }
}

TEST_CASE("upper_bound_word") {
  CHECK(upper_bound_word(0, {}).empty());

  const SitePermutation swap01 = SitePermutation::transposition(0, 1);
  const GeneratorWord w1 = upper_bound_word(0, swap01);
  CHECK(w1.size() <= 12);
  CHECK(w1.evaluate_from({0, {}}) == MixerElement{0, swap01});

  const SitePermutation mixed =
      compose(cycle_perm({0, 2, 1}), SitePermutation::transposition(5, 6));
  const GeneratorWord w2 = upper_bound_word(0, mixed);
  CHECK(w2.evaluate_from({0, {}}) == MixerElement{0, mixed});
  CHECK(w2.size() <= 2 * covering_number(0, mixed) + 5 * displacement_sum(mixed));

  SplitMix64 rng(34);
  for (int i = 0; i < 400; ++i) {
    const SitePermutation sigma = random_site_permutation(rng, -10, 10, 10);
    const Site g = -10 + static_cast<Site>(rng.below(21));
    const GeneratorWord w = upper_bound_word(g, sigma);
    CHECK(w.evaluate_from({g, {}}) == MixerElement{g, sigma});
    CHECK(w.size() <= 2 * covering_number(g, sigma) + 5 * displacement_sum(sigma));
  }
}

TEST_CASE("lower_bound") {
  CHECK(lower_bound({}) == 0);
  CHECK(lower_bound(SitePermutation::transposition(0, 1)) == 1);
  CHECK(lower_bound(SitePermutation::transposition(0, 2)) == 2);
}

TEST_CASE("distance_bounds") {
  SplitMix64 rng(35);
  for (int i = 0; i < 200; ++i) {
    const SitePermutation sigma = random_site_permutation(rng, -8, 8, 8);
    const Site g = -8 + static_cast<Site>(rng.below(17));
    const DistanceBounds b = distance_bounds(g, sigma);
    CHECK(b.lower <= b.upper);
    CHECK(b.witness.size() <= b.upper);
    CHECK(b.witness.evaluate_from({g, {}}) == MixerElement{g, sigma});
  }
}
