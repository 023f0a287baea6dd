#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mixer/words.hpp"

namespace mixer {

// Guard rails for exhaustive ball searches: a hard cap on the requested
// radius and a budget on distinct states held. The node budget can be
// overridden from the CLI via the MIXERCHAIN_BFS_NODE_BUDGET environment
// variable.
struct BfsLimits {
  int radius_limit = 12;
  std::uint64_t node_budget = 10'000'000;
};

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BallEntry {
  std::string key;  // canonical_key(element)
  MixerElement element;
  int distance = 0;
};

// All elements within a given word-length distance of (0,id), in
// breadth-first discovery order (deterministic).
class Ball {
 public:
  Ball(int radius, std::vector<BallEntry> entries);

  // The index holds views into the entry keys; moving is fine (the key
  // strings are heap-backed), copying is not.
  Ball(const Ball&) = delete;
  Ball& operator=(const Ball&) = delete;
  Ball(Ball&&) = default;
  Ball& operator=(Ball&&) = default;

  int radius() const { return radius_; }
  const std::vector<BallEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const BallEntry* find(std::string_view key) const;

 private:
  int radius_;
  std::vector<BallEntry> entries_;
  std::unordered_map<std::string_view, std::size_t> index_;
};

// Exhaustive ball of the given radius around the identity, breadth-first
// over right-multiplication by the 4 generators, deduplicated by canonical
// key. Throws std::invalid_argument past the radius limit and
// BudgetExceededError past the node budget.
Ball bfs_ball(int radius, const BfsLimits& limits = {});

// Exact word-length distance from (0,id) to target if it is <= radius_cap,
// std::nullopt otherwise ("beyond cap"). Same guard rails as bfs_ball.
std::optional<int> bfs_distance(const MixerElement& target, int radius_cap,
                                const BfsLimits& limits = {});

}  // namespace mixer
