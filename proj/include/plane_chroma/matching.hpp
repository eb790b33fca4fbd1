#pragma once

// Hopcroft-Karp maximum bipartite matching.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace plane_chroma {

struct Matching {
  static constexpr std::uint32_t unmatched = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> left_to_right;
  std::vector<std::uint32_t> right_to_left;
  std::uint32_t size = 0;

  bool saturates_left() const noexcept { return size == left_to_right.size(); }
};

inline Matching max_bipartite_matching(std::uint32_t left_count, std::uint32_t right_count,
                                       const std::vector<std::vector<std::uint32_t>>& adjacency) {
  constexpr std::uint32_t none = Matching::unmatched;
  constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
  Matching m{std::vector<std::uint32_t>(left_count, none), std::vector<std::uint32_t>(right_count, none), 0};
  std::vector<std::uint32_t> dist(left_count);
  std::vector<std::size_t> it(left_count);

  auto bfs = [&] {
    std::queue<std::uint32_t> queue;
    bool found = false;
    for (std::uint32_t u = 0; u < left_count; ++u) {
      dist[u] = m.left_to_right[u] == none ? 0 : inf;
      if (dist[u] == 0) queue.push(u);
    }
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop();
      for (auto v : adjacency[u]) {
        const auto w = m.right_to_left[v];
        if (w == none) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layered graph.
  auto augment = [&](std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const auto u = stack.back();
      if (it[u] == adjacency[u].size()) {
        dist[u] = inf;
        stack.pop_back();
        continue;
      }
      const auto v = adjacency[u][it[u]];
      const auto w = m.right_to_left[v];
      if (w == none) {
        // Flip the path recorded on the stack.
        for (std::size_t i = stack.size(); i-- > 0;) {
          const auto a = stack[i];
          const auto b = adjacency[a][it[a]];
          m.left_to_right[a] = b;
          m.right_to_left[b] = a;
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        stack.push_back(w);
      } else {
        ++it[u];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::uint32_t u = 0; u < left_count; ++u)
      if (m.left_to_right[u] == none && augment(u)) ++m.size;
  }
  return m;
}

}  // namespace plane_chroma
