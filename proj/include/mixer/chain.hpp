#pragma once

#include <cstdint>
#include <vector>

#include "mixer/element.hpp"
#include "mixer/rng.hpp"

namespace mixer {

// Reflection through the origin: (S, sigma) -> (-S, sigma') with
// sigma'(z) = -sigma(-z). An involution; the chain's law is invariant
// under it.
MixerElement mirror(const MixerElement& e);

// Simulation state of the mixer chain on Z, stepped in place. The
// permutation and its inverse live in dense arrays over an interval grown
// on demand around the walker's range, so every transition is O(1)
// amortized; snapshots export the exact sparse value types.
//
// Tracked online: the walker range [m_t, M_t], the total tile displacement
// X_t (updated by +-1 per tile on each swap), and for each probe site z the
// visit count V_t(z) = #{j <= t : S_j = sigma_j(z)} with, optionally, the
// visit times T_1(z) < T_2(z) < ... themselves.
//
// A full consistency audit (inverse matches forward, support containment,
// displacement recount) runs automatically whenever t is a power of two.
class ChainState {
 public:
  explicit ChainState(std::uint64_t seed, std::vector<Site> probe_sites = {},
                      bool record_visit_times = false);

  // Draws one of the 4 generators uniformly (two bits of the stream) and
  // applies it.
  void step();

  // Applies a chosen generator; same bookkeeping as step() minus the draw.
  void apply(Generator u);

  std::int64_t time() const { return time_; }
  Site position() const { return position_; }
  Site min_position() const { return min_position_; }  // m_t
  Site max_position() const { return max_position_; }  // M_t
  std::uint64_t displacement_total() const {           // X_t
    return static_cast<std::uint64_t>(displacement_);
  }

  Site tile_position(Site z) const;  // sigma_t(z)
  Site tile_at(Site x) const;        // sigma_t^{-1}(x)

  SitePermutation permutation() const;
  SitePermutation inverse_permutation() const;
  MixerElement element() const;

  const std::vector<Site>& probe_sites() const { return probe_sites_; }
  std::int64_t visit_count(Site z) const;  // V_t(z); z must be a probe site
  // T_j(z) for j >= 1; z must be a probe site and visit times recorded.
  const std::vector<std::int64_t>& visit_times(Site z) const;

  // Throws std::logic_error if any invariant is broken.
  void check_consistency() const;

 private:
  std::size_t probe_index(Site z) const;
  void ensure_coverage(Site lo, Site hi);
  Site& fwd(Site x) { return forward_[static_cast<std::size_t>(x - lo_)]; }
  Site& inv(Site x) { return inverse_[static_cast<std::size_t>(x - lo_)]; }
  Site fwd(Site x) const { return forward_[static_cast<std::size_t>(x - lo_)]; }
  Site inv(Site x) const { return inverse_[static_cast<std::size_t>(x - lo_)]; }

  SplitMix64 rng_;
  std::int64_t time_ = 0;
  Site position_ = 0;
  Site min_position_ = 0;
  Site max_position_ = 0;
  std::int64_t displacement_ = 0;
  Site lo_ = 0;  // arrays cover [lo_, hi_]
  Site hi_ = 0;
  std::vector<Site> forward_;
  std::vector<Site> inverse_;
  std::vector<Site> probe_sites_;
  std::vector<std::int64_t> visit_counts_;
  std::vector<std::vector<std::int64_t>> visit_times_;
  bool record_visit_times_ = false;
};

}  // namespace mixer
