#include "mixer/element.hpp"

#include <cstring>
#include <stdexcept>

namespace mixer {

namespace {

void append_be64(std::string& out, Site value) {
  const auto u = static_cast<std::uint64_t>(value);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((u >> shift) & 0xff));
  }
}

Site read_be64(std::string_view key, std::size_t offset) {
  std::uint64_t u = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    u = (u << 8) | static_cast<unsigned char>(key[offset + i]);
  }
  return static_cast<Site>(u);
}

}  // namespace

const char* to_string(Generator u) {
  switch (u) {
    case Generator::MoveRight: return "M+";
    case Generator::MoveLeft: return "M-";
    case Generator::SwapRight: return "S+";
    case Generator::SwapLeft: return "S-";
  }
  return "?";
}

MixerElement embed(Generator u) {
  if (is_move(u)) return {direction(u), {}};
  return {0, SitePermutation::transposition(0, direction(u))};
}

MixerElement mul(const MixerElement& a, const MixerElement& b) {
  return {checked_add(a.position, b.position),
          compose(conjugate_by_translation(a.position, b.perm), a.perm)};
}

MixerElement inverse(const MixerElement& a) {
  const Site neg = checked_neg(a.position);
  return {neg, conjugate_by_translation(neg, invert_perm(a.perm))};
}

MixerElement apply_generator(const MixerElement& a, Generator u) {
  return mul(a, embed(u));
}

std::string canonical_key(const MixerElement& a) {
  std::string out;
  out.reserve(16 + 16 * a.perm.support_size());
  append_be64(out, a.position);
  append_be64(out, static_cast<Site>(a.perm.support_size()));
  for (const auto& [x, y] : a.perm.entries()) {
    append_be64(out, x);
    append_be64(out, y);
  }
  return out;
}

MixerElement element_from_key(std::string_view key) {
  if (key.size() < 16 || key.size() % 16 != 0) {
    throw std::invalid_argument("malformed canonical key: bad length");
  }
  const Site position = read_be64(key, 0);
  const Site count = read_be64(key, 8);
  if (count < 0 || static_cast<std::size_t>(count) != key.size() / 16 - 1) {
    throw std::invalid_argument("malformed canonical key: bad support count");
  }
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (Site i = 0; i < count; ++i) {
    const std::size_t off = 16 + 16 * static_cast<std::size_t>(i);
    pairs.emplace_back(read_be64(key, off), read_be64(key, off + 8));
  }
  return {position, SitePermutation::from_pairs(std::move(pairs))};
}

std::string key_to_hex(std::string_view key) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * key.size());
  for (unsigned char c : key) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

}  // namespace mixer
