#pragma once

#include <array>
#include <string>
#include <string_view>

#include "mixer/site_permutation.hpp"

namespace mixer {

// The four generators of the walk group on Z: step along an edge, or swap
// the tiles on that edge's endpoints. Encoded as 0..3 so a uniform draw is
// two random bits.
enum class Generator : std::uint8_t {
  MoveRight = 0,
  MoveLeft = 1,
  SwapRight = 2,
  SwapLeft = 3,
};

inline constexpr std::array<Generator, 4> kAllGenerators = {
    Generator::MoveRight, Generator::MoveLeft, Generator::SwapRight,
    Generator::SwapLeft};

constexpr bool is_move(Generator u) {
  return u == Generator::MoveRight || u == Generator::MoveLeft;
}

constexpr int direction(Generator u) {
  return (u == Generator::MoveRight || u == Generator::SwapRight) ? +1 : -1;
}

constexpr Generator move_generator(int dir) {
  return dir > 0 ? Generator::MoveRight : Generator::MoveLeft;
}

constexpr Generator swap_generator(int dir) {
  return dir > 0 ? Generator::SwapRight : Generator::SwapLeft;
}

const char* to_string(Generator u);

// An element (position, permutation) of the semidirect product of Z with
// the finite-support permutations. Value type.
struct MixerElement {
  Site position = 0;
  SitePermutation perm;

  friend bool operator==(const MixerElement&, const MixerElement&) = default;
};

inline MixerElement identity_element() { return {}; }

// The group element a generator stands for: (+-1, id) or (0, <0,+-1>).
MixerElement embed(Generator u);

// (g,sigma)(h,tau) = (g + h, (g tau g^-1) . sigma). Checked arithmetic.
MixerElement mul(const MixerElement& a, const MixerElement& b);

// (g,sigma)^-1 = (-g, g^-1 sigma^-1 g).
MixerElement inverse(const MixerElement& a);

// a * embed(u): one step of the walk applied on the right.
MixerElement apply_generator(const MixerElement& a, Generator u);

// Injective byte encoding: position, support size, then (site, image)
// pairs sorted by site, every field a big-endian two's-complement int64.
// Equal elements (same position, same function on Z) get identical keys.
std::string canonical_key(const MixerElement& a);

// Inverse of canonical_key; throws std::invalid_argument on malformed input.
MixerElement element_from_key(std::string_view key);

// Lowercase hex of a canonical key, for diagnostics and failure reports.
std::string key_to_hex(std::string_view key);

}  // namespace mixer
