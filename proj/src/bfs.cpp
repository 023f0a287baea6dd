#include "mixer/bfs.hpp"

#include <deque>

namespace mixer {

namespace {

void check_radius(int radius, const BfsLimits& limits) {
  if (radius < 0) throw std::invalid_argument("bfs: negative radius");
  if (radius > limits.radius_limit) {
    throw std::invalid_argument("bfs: radius " + std::to_string(radius) +
                                " exceeds the safety limit " +
                                std::to_string(limits.radius_limit));
  }
}

// Shared breadth-first engine. visit() sees every distinct element once,
// in discovery order, and may stop the search by returning true.
template <typename Visit>
void breadth_first(int radius, const BfsLimits& limits, Visit visit) {
  std::unordered_map<std::string, int> seen;
  std::deque<std::pair<MixerElement, int>> queue;

  const MixerElement id = identity_element();
  seen.emplace(canonical_key(id), 0);
  if (visit(canonical_key(id), id, 0)) return;
  queue.emplace_back(id, 0);

  while (!queue.empty()) {
    auto [e, d] = std::move(queue.front());
    queue.pop_front();
    if (d == radius) continue;
    for (Generator u : kAllGenerators) {
      MixerElement next = apply_generator(e, u);
      std::string key = canonical_key(next);
      if (seen.contains(key)) continue;
      if (seen.size() >= limits.node_budget) {
        throw BudgetExceededError(
            "bfs: node budget of " + std::to_string(limits.node_budget) +
            " states exhausted at distance " + std::to_string(d + 1));
      }
      seen.emplace(key, d + 1);
      if (visit(std::move(key), next, d + 1)) return;
      queue.emplace_back(std::move(next), d + 1);
    }
  }
}

}  // namespace

Ball::Ball(int radius, std::vector<BallEntry> entries)
    : radius_(radius), entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_.emplace(entries_[i].key, i);
  }
}

const BallEntry* Ball::find(std::string_view key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Ball bfs_ball(int radius, const BfsLimits& limits) {
  check_radius(radius, limits);
  std::vector<BallEntry> entries;
  breadth_first(radius, limits,
                [&](std::string key, const MixerElement& e, int d) {
                  entries.push_back({std::move(key), e, d});
                  return false;
                });
  return Ball(radius, std::move(entries));
}

std::optional<int> bfs_distance(const MixerElement& target, int radius_cap,
                                const BfsLimits& limits) {
  check_radius(radius_cap, limits);
  const std::string target_key = canonical_key(target);
  std::optional<int> found;
  breadth_first(radius_cap, limits,
                [&](const std::string& key, const MixerElement&, int d) {
                  if (key == target_key) {
                    found = d;
                    return true;
                  }
                  return false;
                });
  return found;
}

}  // namespace mixer
