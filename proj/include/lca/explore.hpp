#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace lca {

/// Connected set of entities (vertices, hyperedges or clauses), ascending.
struct Component {
  std::vector<std::uint32_t> entities;
  /// True when every neighbor of the set outside it was found not alive.
  bool frontier_closed = true;
};

/**
 * Breadth-first closure of `start` under `neighbors`, restricted to entities
 * for which `alive` holds. Start entities are taken as members without
 * consulting `alive`. Returns std::nullopt (too large) as soon as more than
 * `cap` entities have been collected.
 *
 * `alive(id) -> bool` is called at most once per entity per exploration and
 * may do further oracle work. `neighbors(id, visit)` must call
 * `visit(other_id)` for every neighbor of `id`.
 */
template <typename Alive, typename Neighbors>
std::optional<Component> explore_component(std::span<const std::uint32_t> start, Alive&& alive,
                                           Neighbors&& neighbors, std::size_t cap) {
  Component out;
  std::unordered_set<std::uint32_t> seen;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s : start) {
    if (!seen.insert(s).second) continue;
    out.entities.push_back(s);
    if (out.entities.size() > cap) return std::nullopt;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const std::uint32_t cur = queue.front();
    queue.pop_front();
    bool too_large = false;
    neighbors(cur, [&](std::uint32_t next) {
      if (too_large || !seen.insert(next).second) return;
      if (!alive(next)) return;
      out.entities.push_back(next);
      if (out.entities.size() > cap) {
        too_large = true;
        return;
      }
      queue.push_back(next);
    });
    if (too_large) return std::nullopt;
  }
  std::sort(out.entities.begin(), out.entities.end());
  return out;
}

}  // namespace lca
