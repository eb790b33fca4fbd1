#pragma once

// Exhaustive searches: difference sets in Z_v, and rainbow-free partitions
// of linear hypergraphs (the lines of a plane) into classes of prescribed
// sizes.
//
// The partition search builds one class at a time. The next class always
// contains the lowest unassigned point and its other members are added in
// increasing order, so each set partition is visited at most once and
// classes of equal size are never permuted.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "plane_chroma/coloring.hpp"
#include "plane_chroma/constructions.hpp"
#include "plane_chroma/diffset_check.hpp"
#include "plane_chroma/error.hpp"
#include "plane_chroma/plane.hpp"
#include "plane_chroma/workers.hpp"

namespace plane_chroma::search {

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0;       // 0 = unlimited

  static SearchBudget unlimited() { return {}; }
};

/// Class sizes with multiplicities, e.g. {{3, 7}, {4, 1}}.
struct ShapeSpec {
  std::map<std::uint32_t, std::uint32_t> classes;

  std::uint32_t total_points() const {
    std::uint32_t t = 0;
    for (auto [s, m] : classes) t += s * m;
    return t;
  }
  std::uint32_t num_classes() const {
    std::uint32_t t = 0;
    for (auto [_, m] : classes) t += m;
    return t;
  }
  /// K classes on n points with sizes differing by at most one.
  static ShapeSpec balanced(std::uint32_t n, std::uint32_t k) {
    if (k == 0 || k > n) fail(errc::precondition_failed, "balanced shape needs 1 <= K <= n");
    ShapeSpec s;
    const std::uint32_t base = n / k, extra = n % k;
    if (extra) s.classes[base + 1] = extra;
    if (k - extra) s.classes[base] = k - extra;
    return s;
  }
  std::string str() const {
    std::string out;
    for (auto it = classes.rbegin(); it != classes.rend(); ++it)
      out += (out.empty() ? "" : "+") + std::to_string(it->second) + "x" + std::to_string(it->first);
    return out;
  }

  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

enum class SearchStatus { sat, unsat, budget_exceeded };

inline std::string_view to_string(SearchStatus s) noexcept {
  switch (s) {
    case SearchStatus::sat: return "SAT";
    case SearchStatus::unsat: return "UNSAT";
    case SearchStatus::budget_exceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

struct SearchCertificate {
  std::uint64_t nodes = 0;   // point-to-class assignments made
  std::uint64_t leaves = 0;  // complete partitions reached
  std::map<std::string, std::uint64_t> prunes;  // reason -> count
  std::uint64_t root_tasks = 0;
  unsigned workers = 1;
  double seconds = 0;
};

struct ShapeResult {
  SearchStatus status = SearchStatus::unsat;
  ShapeSpec shape;
  std::optional<std::vector<color_id>> witness;
  SearchCertificate certificate;
};

struct ShapeSearchOptions {
  bool prune = true;          // false: plain enumeration (coverage checks)
  bool stop_at_first = true;  // false: keep counting leaves after a witness
  unsigned workers = 0;       // 0 = worker_count()
};

namespace detail {

class PartitionSearch {
 public:
  // Points are relabelled so that index order is the branching order.
  PartitionSearch(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& edges_in,
                  const std::vector<std::uint32_t>& order, const ShapeSpec& shape, const ShapeSearchOptions& opt)
      : n_(n), opt_(opt) {
    std::vector<std::uint32_t> rank(n);
    for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;
    original_ = order;
    for (const auto& e : edges_in) {
      std::vector<std::uint32_t> r;
      for (auto pt : e) r.push_back(rank[pt]);
      std::sort(r.begin(), r.end());
      edges_.push_back(std::move(r));
    }
    point_edges_.assign(n, {});
    pair_edge_.assign(std::size_t{n} * n, none);
    for (std::uint32_t l = 0; l < edges_.size(); ++l)
      for (std::size_t i = 0; i < edges_[l].size(); ++i) {
        point_edges_[edges_[l][i]].push_back(l);
        for (std::size_t j = i + 1; j < edges_[l].size(); ++j) {
          auto& slot = pair_edge_[std::size_t{edges_[l][i]} * n + edges_[l][j]];
          if (slot != none) fail(errc::precondition_failed, "hypergraph is not linear");
          slot = l;
          pair_edge_[std::size_t{edges_[l][j]} * n + edges_[l][i]] = l;
        }
      }
    for (auto [s, m] : shape.classes) sizes_.push_back({s, m});
    cls_.assign(n, none);
    unassigned_.resize(edges_.size());
    unassigned_sum_.resize(edges_.size());
    mono_.assign(edges_.size(), 0);
    for (std::uint32_t l = 0; l < edges_.size(); ++l) {
      unassigned_[l] = static_cast<std::uint32_t>(edges_[l].size());
      unassigned_sum_[l] = std::accumulate(edges_[l].begin(), edges_[l].end(), std::uint64_t{0});
    }
    future_pairs_ = 0;
    for (auto [s, m] : shape.classes) future_pairs_ += std::uint64_t{m} * s * (s - 1) / 2;
  }

  struct Shared {
    std::atomic<bool> stop{false};
    std::atomic<bool> found{false};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> budget_hit{false};
    SearchBudget budget;
    std::chrono::steady_clock::time_point start;
    std::mutex mu;
    std::vector<color_id> witness;
  };

  // The first class as a task: the lowest point plus chosen members.
  struct Task {
    std::size_t size_index;
    std::vector<std::uint32_t> members;
  };

  std::vector<Task> root_tasks() const {
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < sizes_.size(); ++si) {
      const std::uint32_t s = sizes_[si].first;
      if (s > n_) continue;
      // enumerate increasing (s-1)-subsets of 1..n-1
      std::vector<std::uint32_t> idx(s - 1);
      std::iota(idx.begin(), idx.end(), 1u);
      while (true) {
        Task t{si, {0}};
        t.members.insert(t.members.end(), idx.begin(), idx.end());
        tasks.push_back(std::move(t));
        int i = static_cast<int>(s) - 2;
        while (i >= 0 && idx[i] == n_ - (s - 1) + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return tasks;
  }

  /// Runs one root task on this (fresh) searcher.
  void run_task(const Task& task, Shared& shared) {
    shared_ = &shared;
    open_class(task.size_index);
    bool alive = true;
    for (auto u : task.members) {
      if (!assign(u)) {
        alive = false;
        break;
      }
    }
    if (alive) recurse();
    flush_nodes();
  }

  const SearchCertificate& certificate() const noexcept { return cert_; }

 private:
  static constexpr std::uint32_t none = 0xffffffffu;

  std::uint32_t n_;
  ShapeSearchOptions opt_;
  std::vector<std::uint32_t> original_;
  std::vector<std::vector<std::uint32_t>> edges_;
  std::vector<std::vector<std::uint32_t>> point_edges_;
  std::vector<std::uint32_t> pair_edge_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sizes_;  // (size, remaining)

  std::vector<std::uint32_t> cls_;
  std::vector<std::uint32_t> unassigned_;
  std::vector<std::uint64_t> unassigned_sum_;
  std::vector<std::uint32_t> mono_;
  std::uint64_t resolved_ = 0;
  std::uint64_t future_pairs_ = 0;
  std::uint32_t assigned_ = 0;

  struct Open {
    std::uint32_t id;
    std::uint32_t target;
    std::vector<std::uint32_t> members;
  };
  std::vector<Open> classes_;
  std::uint32_t lowest_ = 0;  // lowest possibly-unassigned point

  Shared* shared_ = nullptr;
  SearchCertificate cert_;
  std::uint64_t local_nodes_ = 0;

  Open& top() { return classes_.back(); }

  void open_class(std::size_t si) {
    --sizes_[si].second;
    classes_.push_back({static_cast<std::uint32_t>(classes_.size()), sizes_[si].first, {}});
  }
  void close_class_undo() {
    const auto s = classes_.back().target;
    for (auto& [size, rem] : sizes_)
      if (size == s) ++rem;
    classes_.pop_back();
  }

  // Returns false if the new state is prunable (state is still updated and
  // must be undone by the caller via unassign).
  bool assign(std::uint32_t u) {
    ++local_nodes_;
    ++cert_.nodes;
    Open& c = top();
    cls_[u] = c.id;
    ++assigned_;
    for (auto l : point_edges_[u]) {
      --unassigned_[l];
      unassigned_sum_[l] -= u;
    }
    for (auto w : c.members) {
      const auto l = pair_edge_[std::size_t{u} * n_ + w];
      if (l != none && mono_[l]++ == 0) ++resolved_;
    }
    future_pairs_ -= c.members.size();
    c.members.push_back(u);
    if (!opt_.prune) return true;
    if (edges_.size() - resolved_ > future_pairs_) {
      ++cert_.prunes["pair_bound"];
      return false;
    }
    for (auto l : point_edges_[u]) {
      if (mono_[l]) continue;
      if (unassigned_[l] == 0 || (unassigned_[l] == 1 && !can_rescue(l))) {
        ++cert_.prunes["dead_line"];
        return false;
      }
    }
    return true;
  }

  // An unresolved line with a single unassigned point w survives only if w
  // can still join the open class and that class already meets the line.
  bool can_rescue(std::uint32_t l) const {
    const auto w = static_cast<std::uint32_t>(unassigned_sum_[l]);
    const Open& c = classes_.back();
    if (c.members.size() >= c.target || w < c.members.back()) return false;
    for (auto m : c.members)
      if (pair_edge_[std::size_t{w} * n_ + m] == l) return true;
    return false;
  }

  void unassign() {
    Open& c = top();
    const auto u = c.members.back();
    c.members.pop_back();
    future_pairs_ += c.members.size();
    for (auto w : c.members) {
      const auto l = pair_edge_[std::size_t{u} * n_ + w];
      if (l != none && --mono_[l] == 0) --resolved_;
    }
    for (auto l : point_edges_[u]) {
      ++unassigned_[l];
      unassigned_sum_[l] += u;
    }
    cls_[u] = none;
    --assigned_;
  }

  void flush_nodes() {
    if (shared_ && local_nodes_) {
      shared_->nodes += local_nodes_;
      local_nodes_ = 0;
    }
  }

  bool should_stop() {
    if (local_nodes_ >= 4096) {
      flush_nodes();
      const auto& b = shared_->budget;
      if (b.max_nodes && shared_->nodes.load() >= b.max_nodes) shared_->budget_hit = true;
      if (b.max_seconds > 0) {
        const double el =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - shared_->start).count();
        if (el >= b.max_seconds) shared_->budget_hit = true;
      }
      if (shared_->budget_hit) shared_->stop = true;
    }
    return shared_->stop.load(std::memory_order_relaxed);
  }

  void leaf() {
    ++cert_.leaves;
    if (resolved_ != edges_.size()) return;
    {
      std::lock_guard lock(shared_->mu);
      if (!shared_->found) {
        shared_->witness.assign(n_, 0);
        for (std::uint32_t i = 0; i < n_; ++i) shared_->witness[original_[i]] = cls_[i];
      }
      shared_->found = true;
    }
    if (opt_.stop_at_first) shared_->stop = true;
  }

  void recurse() {
    if (should_stop()) return;
    if (assigned_ == n_) {
      leaf();
      return;
    }
    Open& c = top();
    if (c.members.size() < c.target) {
      // Next member: an unassigned point above the last member, leaving
      // enough points for the rest of the class.
      const std::uint32_t need = c.target - static_cast<std::uint32_t>(c.members.size());
      for (std::uint32_t u = c.members.back() + 1; u + need <= n_; ++u) {
        if (cls_[u] != none) continue;
        if (assign(u)) recurse();
        unassign();
        if (shared_->stop.load(std::memory_order_relaxed)) return;
      }
      return;
    }
    // Open a new class at the lowest unassigned point.
    std::uint32_t first = 0;
    while (cls_[first] != none) ++first;
    for (std::size_t si = 0; si < sizes_.size(); ++si) {
      if (sizes_[si].second == 0) continue;
      open_class(si);
      if (assign(first)) recurse();
      unassign();
      close_class_undo();
      if (shared_->stop.load(std::memory_order_relaxed)) return;
    }
  }
};

/// Static branching order: repeatedly take the point that completes the
/// most lines, then the one that meets the most partly-chosen lines.
inline std::vector<std::uint32_t> most_constrained_order(std::uint32_t n,
                                                         const std::vector<std::vector<std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> point_edges(n);
  for (std::uint32_t l = 0; l < edges.size(); ++l)
    for (auto pt : edges[l]) point_edges[pt].push_back(l);
  std::vector<std::uint32_t> remaining(edges.size());
  for (std::uint32_t l = 0; l < edges.size(); ++l) remaining[l] = static_cast<std::uint32_t>(edges[l].size());
  std::vector<char> used(n, 0);
  std::vector<std::uint32_t> order;
  for (std::uint32_t step = 0; step < n; ++step) {
    std::uint32_t best = n;
    std::pair<std::uint32_t, std::uint32_t> best_score{0, 0};
    for (std::uint32_t pt = 0; pt < n; ++pt) {
      if (used[pt]) continue;
      std::pair<std::uint32_t, std::uint32_t> score{0, 0};
      for (auto l : point_edges[pt]) {
        if (remaining[l] == 1) ++score.first;
        if (remaining[l] < edges[l].size()) ++score.second;
      }
      if (best == n || score > best_score) {
        best = pt;
        best_score = score;
      }
    }
    used[best] = 1;
    order.push_back(best);
    for (auto l : point_edges[best]) --remaining[l];
  }
  return order;
}

}  // namespace detail

/// Is there a partition of the n points into classes of the given shape in
/// which every edge contains two points of one class? The edges must form a
/// linear hypergraph (two points share at most one edge).
inline ShapeResult search_shape(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& edges,
                                const ShapeSpec& shape, const SearchBudget& budget = {},
                                const ShapeSearchOptions& opt = {}) {
  if (shape.total_points() != n)
    fail(errc::precondition_failed, "shape " + shape.str() + " does not cover " + std::to_string(n) + " points");
  for (auto [s, m] : shape.classes)
    if (s == 0 && m) fail(errc::precondition_failed, "class size 0");
  ShapeResult result;
  result.shape = shape;
  const auto t0 = std::chrono::steady_clock::now();
  const auto order = detail::most_constrained_order(n, edges);
  const detail::PartitionSearch base(n, edges, order, shape, opt);
  if (n == 0) {
    result.status = edges.empty() ? SearchStatus::sat : SearchStatus::unsat;
    return result;
  }

  detail::PartitionSearch::Shared shared;
  shared.budget = budget;
  shared.start = t0;
  const auto tasks = base.root_tasks();
  const unsigned workers =
      std::max(1u, std::min<unsigned>(opt.workers ? opt.workers : worker_count(), static_cast<unsigned>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::vector<SearchCertificate> certs(workers);
  auto work = [&](unsigned w) {
    while (!shared.stop.load()) {
      const std::size_t i = next++;
      if (i >= tasks.size()) break;
      detail::PartitionSearch s = base;
      s.run_task(tasks[i], shared);
      auto& c = certs[w];
      c.nodes += s.certificate().nodes;
      c.leaves += s.certificate().leaves;
      for (const auto& [k, v] : s.certificate().prunes) c.prunes[k] += v;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  auto& cert = result.certificate;
  for (const auto& c : certs) {
    cert.nodes += c.nodes;
    cert.leaves += c.leaves;
    for (const auto& [k, v] : c.prunes) cert.prunes[k] += v;
  }
  cert.prunes.try_emplace("pair_bound", 0);
  cert.prunes.try_emplace("dead_line", 0);
  cert.root_tasks = tasks.size();
  cert.workers = workers;
  cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (shared.found) {
    result.status = SearchStatus::sat;
    result.witness = shared.witness;
  } else {
    result.status = shared.budget_hit ? SearchStatus::budget_exceeded : SearchStatus::unsat;
  }
  return result;
}

/// Number of set partitions of n labelled points into the given shape:
/// n! / prod(s!^m * m!). Exact for results below 2^64.
inline std::uint64_t shape_partition_count(const ShapeSpec& shape) {
  // Multiply binomials class by class to stay in range.
  std::uint64_t count = 1;
  std::uint32_t left = shape.total_points();
  auto binom = [](std::uint64_t n, std::uint64_t k) {
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::uint64_t>(r);
  };
  for (auto [s, m] : shape.classes) {
    for (std::uint32_t i = 0; i < m; ++i) {
      count *= binom(left, s);
      left -= s;
    }
    std::uint64_t fact = 1;
    for (std::uint32_t i = 2; i <= m; ++i) fact *= i;
    count /= fact;
  }
  return count;
}

inline std::vector<std::vector<std::uint32_t>> edges_of(const ProjectivePlane& plane) {
  return {plane.lines().begin(), plane.lines().end()};
}

// ---------------------------------------------------------------------------
// Exact balanced upper chromatic number of tiny planes

struct ChiBResult {
  SearchStatus status = SearchStatus::unsat;
  std::uint32_t max_colors = 0;  // exact when status == sat; best-so-far otherwise
  std::optional<Coloring> witness;
  std::vector<ShapeResult> per_k;  // one entry per K tried, highest K first
};

/// Tries K = n, n-1, ... with the balanced shape for K; the first SAT K is
/// the maximum. Every larger K is certified UNSAT.
inline ChiBResult brute_force_chi_b(const ProjectivePlane& plane, const SearchBudget& budget = {},
                                    const ShapeSearchOptions& opt = {}) {
  ChiBResult out;
  const auto edges = edges_of(plane);
  const std::uint32_t n = plane.num_points();
  for (std::uint32_t k = n; k >= 1; --k) {
    auto r = search_shape(n, edges, ShapeSpec::balanced(n, k), budget, opt);
    out.per_k.push_back(r);
    if (r.status == SearchStatus::budget_exceeded) {
      out.status = SearchStatus::budget_exceeded;
      return out;
    }
    if (r.status == SearchStatus::sat) {
      out.status = SearchStatus::sat;
      out.max_colors = k;
      out.witness = Coloring::from_labels({r.witness->begin(), r.witness->end()});
      return out;
    }
  }
  return out;
}

/// Balanced rainbow-free coloring with a fixed shape on a plane.
inline ShapeResult brute_force_shape(const ProjectivePlane& plane, const ShapeSpec& shape,
                                     const SearchBudget& budget = {}, const ShapeSearchOptions& opt = {}) {
  return search_shape(plane.num_points(), edges_of(plane), shape, budget, opt);
}

// ---------------------------------------------------------------------------
// AG(2,5): no balanced rainbow-free coloring with a class of size 4

struct P5Report {
  std::vector<ShapeResult> claimed;     // shapes the nonexistence claim covers
  ShapeResult five_by_five;             // 5 classes of size 5 (expected SAT)
  bool fixture_five_classes_ok = false;  // the printed 5x5 table verifies
  bool all_unsat() const {
    return std::all_of(claimed.begin(), claimed.end(), [](const auto& r) { return r.status == SearchStatus::unsat; });
  }
  bool any_budget_exceeded() const {
    return std::any_of(claimed.begin(), claimed.end(),
                       [](const auto& r) { return r.status == SearchStatus::budget_exceeded; });
  }
};

inline std::vector<std::vector<std::uint32_t>> p5_affine_edges(const PlanarPlaneAtlas& atlas) {
  std::vector<std::vector<std::uint32_t>> edges;
  for (line_id l = 0; l < atlas.plane().num_lines(); ++l) {
    if (l == atlas.ideal_line()) continue;
    std::vector<std::uint32_t> e;
    for (auto pt : atlas.plane().line(l))
      if (atlas.is_affine(pt)) e.push_back(pt);
    edges.push_back(std::move(e));
  }
  return edges;
}

/// The balanced shapes on 25 points with a class of size 4: 7x3+1x4 and
/// 3x3+4x4 (sizes 3/4), and 5x4+1x5 (sizes 4/5).
inline std::vector<ShapeSpec> p5_shapes(bool include_four_five = true) {
  std::vector<ShapeSpec> s{ShapeSpec{{{3, 7}, {4, 1}}}, ShapeSpec{{{3, 3}, {4, 4}}}};
  if (include_four_five) s.push_back(ShapeSpec{{{4, 5}, {5, 1}}});
  return s;
}

inline P5Report p5_nonexistence(const SearchBudget& budget = {}, const ShapeSearchOptions& opt = {},
                                bool include_four_five = true) {
  const auto atlas = p5_atlas();
  const auto edges = p5_affine_edges(atlas);
  P5Report report;
  for (const auto& shape : p5_shapes(include_four_five)) report.claimed.push_back(search_shape(25, edges, shape, budget, opt));
  report.five_by_five = search_shape(25, edges, ShapeSpec{{{5, 5}}}, budget, opt);
  report.fixture_five_classes_ok = affine_rainbow_lines(atlas, table_colors(atlas, fixture_p5().five_classes)).empty();
  return report;
}

// ---------------------------------------------------------------------------
// Planar difference sets by lexicographic backtracking

/// First planar (v, k, 1) difference set containing 0 in lexicographic
/// order, or nullopt if none exists.
inline std::optional<DifferenceSet> find_difference_set(std::uint32_t v, std::uint32_t k,
                                                        const SearchBudget& budget = {}) {
  if (v < 1 || k < 1) fail(errc::precondition_failed, "v and k must be positive");
  if (std::uint64_t{k} * (k - 1) != v - 1) return std::nullopt;
  if (k == 1) return DifferenceSet{v, {0}};
  std::vector<std::uint32_t> chosen{0};
  std::vector<char> used(v, 0);
  std::uint64_t nodes = 0;
  const auto t0 = std::chrono::steady_clock::now();

  auto check_budget = [&] {
    if (budget.max_nodes && nodes > budget.max_nodes) fail(errc::budget_exceeded, "difference set search node limit");
    if (budget.max_seconds > 0 && (nodes & 1023) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > budget.max_seconds)
      fail(errc::budget_exceeded, "difference set search time limit");
  };

  // Adding x marks x - d and d - x for every chosen d; fails on a repeat.
  auto try_add = [&](std::uint32_t x, std::vector<std::uint32_t>& marked) {
    for (auto d : chosen) {
      for (auto diff : {(x + v - d) % v, (d + v - x) % v}) {
        if (used[diff]) return false;
        used[diff] = 1;
        marked.push_back(diff);
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::uint32_t from) -> bool {
    if (chosen.size() == k) return true;
    for (std::uint32_t x = from; x + (k - chosen.size()) <= v; ++x) {
      ++nodes;
      check_budget();
      std::vector<std::uint32_t> marked;
      const bool ok = try_add(x, marked);
      if (ok) {
        chosen.push_back(x);
        if (self(self, x + 1)) return true;
        chosen.pop_back();
      }
      for (auto m : marked) used[m] = 0;
    }
    return false;
  };
  if (!rec(rec, 1)) return std::nullopt;
  DifferenceSet ds{v, chosen};
  if (!is_planar_difference_set(ds.elements, v))
    fail(errc::construction_failed, "search returned an uncertified set");
  return ds;
}

}  // namespace plane_chroma::search
