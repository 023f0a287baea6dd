#include "mixer/chain.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mixer {

MixerElement mirror(const MixerElement& e) {
  std::vector<SitePermutation::Entry> pairs;
  pairs.reserve(e.perm.support_size());
  for (const auto& [x, y] : e.perm.entries()) {
    pairs.emplace_back(checked_neg(x), checked_neg(y));
  }
  return {checked_neg(e.position), SitePermutation::from_pairs(std::move(pairs))};
}

ChainState::ChainState(std::uint64_t seed, std::vector<Site> probe_sites,
                       bool record_visit_times)
    : rng_(seed),
      probe_sites_(std::move(probe_sites)),
      record_visit_times_(record_visit_times) {
  lo_ = -2;
  hi_ = 2;
  forward_.resize(5);
  inverse_.resize(5);
  for (Site x = lo_; x <= hi_; ++x) fwd(x) = inv(x) = x;
  visit_counts_.assign(probe_sites_.size(), 0);
  visit_times_.assign(probe_sites_.size(), {});
  // Time 0 counts as a visit to the tile at the start: S_0 = sigma_0(0) = 0.
  for (std::size_t i = 0; i < probe_sites_.size(); ++i) {
    if (probe_sites_[i] == 0) visit_counts_[i] = 1;
  }
}

void ChainState::ensure_coverage(Site lo, Site hi) {
  if (lo >= lo_ && hi <= hi_) return;
  const Site grow = hi_ - lo_ + 1;
  const Site new_lo = std::min(lo, lo_) - grow;
  const Site new_hi = std::max(hi, hi_) + grow;
  const auto size = static_cast<std::size_t>(new_hi - new_lo + 1);
  std::vector<Site> nf(size), ni(size);
  for (Site x = new_lo; x <= new_hi; ++x) {
    const auto j = static_cast<std::size_t>(x - new_lo);
    nf[j] = ni[j] = x;
  }
  for (Site x = lo_; x <= hi_; ++x) {
    const auto j = static_cast<std::size_t>(x - new_lo);
    nf[j] = fwd(x);
    ni[j] = inv(x);
  }
  forward_ = std::move(nf);
  inverse_ = std::move(ni);
  lo_ = new_lo;
  hi_ = new_hi;
}

void ChainState::step() {
  // Top two bits of the draw: 0 M+, 1 M-, 2 S+, 3 S-.
  apply(static_cast<Generator>(rng_.next() >> 62));
}

void ChainState::apply(Generator u) {
  if (is_move(u)) {
    position_ += direction(u);
    min_position_ = std::min(min_position_, position_);
    max_position_ = std::max(max_position_, position_);
    ensure_coverage(position_ - 1, position_ + 1);
  } else {
    const Site e1 = position_;
    const Site e2 = position_ + direction(u);
    const Site a = inv(e1);  // tile sitting on e1
    const Site b = inv(e2);
    fwd(a) = e2;
    fwd(b) = e1;
    inv(e1) = b;
    inv(e2) = a;
    displacement_ += std::abs(e2 - a) - std::abs(e1 - a);
    displacement_ += std::abs(e1 - b) - std::abs(e2 - b);
  }
  ++time_;
  if (!probe_sites_.empty()) {
    const Site visited_tile = inv(position_);  // the z with sigma_t(z) = S_t
    for (std::size_t i = 0; i < probe_sites_.size(); ++i) {
      if (probe_sites_[i] == visited_tile) {
        ++visit_counts_[i];
        if (record_visit_times_) visit_times_[i].push_back(time_);
        break;
      }
    }
  }
  if ((time_ & (time_ - 1)) == 0) check_consistency();
}

Site ChainState::tile_position(Site z) const {
  return (z >= lo_ && z <= hi_) ? fwd(z) : z;
}

Site ChainState::tile_at(Site x) const {
  return (x >= lo_ && x <= hi_) ? inv(x) : x;
}

SitePermutation ChainState::permutation() const {
  std::vector<SitePermutation::Entry> pairs;
  for (Site x = lo_; x <= hi_; ++x) {
    if (fwd(x) != x) pairs.emplace_back(x, fwd(x));
  }
  return SitePermutation::from_pairs(std::move(pairs));
}

SitePermutation ChainState::inverse_permutation() const {
  return invert_perm(permutation());
}

MixerElement ChainState::element() const { return {position_, permutation()}; }

std::size_t ChainState::probe_index(Site z) const {
  for (std::size_t i = 0; i < probe_sites_.size(); ++i) {
    if (probe_sites_[i] == z) return i;
  }
  throw std::invalid_argument("site " + std::to_string(z) +
                              " is not a probe site of this chain");
}

std::int64_t ChainState::visit_count(Site z) const {
  return visit_counts_[probe_index(z)];
}

const std::vector<std::int64_t>& ChainState::visit_times(Site z) const {
  if (!record_visit_times_) {
    throw std::logic_error("visit times were not recorded for this chain");
  }
  return visit_times_[probe_index(z)];
}

void ChainState::check_consistency() const {
  auto fail = [this](const std::string& what) {
    throw std::logic_error("chain state inconsistent at t=" +
                           std::to_string(time_) + ": " + what);
  };
  if (position_ < min_position_ || position_ > max_position_) {
    fail("position outside recorded range");
  }
  if (lo_ > min_position_ - 1 || hi_ < max_position_ + 1) {
    fail("arrays do not cover the walker range");
  }
  std::int64_t recount = 0;
  for (Site x = lo_; x <= hi_; ++x) {
    const Site y = fwd(x);
    if (y < lo_ || y > hi_ || inv(y) != x) fail("inverse does not match forward");
    if (y != x) {
      if (x < min_position_ - 1 || x > max_position_ + 1) {
        fail("support escapes [m_t - 1, M_t + 1]");
      }
      recount += std::abs(y - x);
    }
  }
  if (recount != displacement_) fail("incremental displacement diverged");
}

}  // namespace mixer
