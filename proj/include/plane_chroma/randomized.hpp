#pragma once

// Las Vegas balanced coloring of an arbitrary projective plane with classes
// of size s and s+1 (s = 10, or 11 in remark mode), plus the analytic
// quantities used to argue that an attempt succeeds.
//
// One attempt:
//   1. pick t = ceil(cq) lines through an anchor Q and a random pair on
//      each of them (one new class per pair);
//   2. deal the rest of U = (union of those lines) \ Q into the classes so
//      that all have size b, except r of size b+1 (tq = b*S + r);
//   3. match every unresolved line avoiding Q to a distinct uncolored point
//      on it, plus two points for each unresolved line through Q; then
//      give each line's point a color already on that line, no color twice;
//   4. pair up the points assigned to lines through Q five lines at a time
//      into new classes, then top up small classes and split the leftovers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "plane_chroma/coloring.hpp"
#include "plane_chroma/constructions.hpp"
#include "plane_chroma/error.hpp"
#include "plane_chroma/matching.hpp"
#include "plane_chroma/plane.hpp"

namespace plane_chroma::randomized {

// ---------------------------------------------------------------------------
// Analytic helpers

/// prod_{i=1}^{k} (1 - i/n)
inline double a_n_k(double n, std::int64_t k) {
  if (k < 0 || !(n > static_cast<double>(k))) fail(errc::domain_error, "A_n(k) needs n > k >= 0");
  double prod = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) prod *= 1.0 - static_cast<double>(i) / n;
  return prod;
}

inline double delta_error(double n, std::int64_t k) {
  if (k < 0 || !(n > static_cast<double>(k) + 1)) fail(errc::domain_error, "Delta(n, k) needs n > k + 1");
  const double kk = static_cast<double>(k);
  const double f1 = std::sqrt((n - 1) / (n - kk - 1));
  const double f2 = std::pow(1 + kk * kk / (12 * (n - kk - 1) * (n - kk - 1)), kk);
  const double f3 = std::pow(1 - (kk + 2) * (kk + 2) / (12 * n * n), kk * (kk + 2) / (2 * n - kk - 2));
  return f1 * f2 * f3;
}

/// exp(-k(k+2)/(2n-k-2)) * Delta(n, k), the claimed upper bound on A_n(k).
inline double a_n_k_bound(double n, std::int64_t k) {
  const double kk = static_cast<double>(k);
  return std::exp(-kk * (kk + 2) / (2 * n - kk - 2)) * delta_error(n, k);
}

/// Point-line incidence bound min(P sqrt(L) + L, L sqrt(P) + P).
inline double incidence_bound(double points, double lines) {
  return std::min(points * std::sqrt(lines) + lines, lines * std::sqrt(points) + points);
}

struct Feasibility {
  bool cond1 = false;  // distinct uncolored points can be assigned
  bool cond2 = false;  // distinct colors can be chosen for them
  double expected_unresolved = 0;
};

inline Feasibility feasibility(double q, double c) {
  Feasibility f;
  f.expected_unresolved = q * q * std::exp(-4 * c);
  const double x = f.expected_unresolved;
  f.cond1 = x + 2 * (1 - c) * q < q * q * (1 - c) * (1 - c) - 2 * (1 - c) * q;
  const double gap = c * q - 10;
  f.cond2 = gap > 0 && x < gap * gap / 10;
  return f;
}

// ---------------------------------------------------------------------------
// The algorithm

enum class Mode { thm4, remark };

inline std::string_view to_string(Mode m) noexcept { return m == Mode::thm4 ? "thm4" : "remark"; }

struct RandomizedParams {
  double c = 0.77;
  Mode mode = Mode::thm4;
  std::uint64_t seed = 1;
  std::uint32_t max_retries = 20;
  point_id anchor = 0;

  std::uint32_t base_size() const noexcept { return mode == Mode::thm4 ? 9 : 10; }
  std::uint32_t final_size() const noexcept { return base_size() + 1; }
  // Most classes of size s+1 the count bound tolerates: (v - E) / s must
  // stay at least the promised number of colors.
  std::uint32_t max_large_classes() const noexcept { return mode == Mode::thm4 ? 17 : 19; }
};

inline std::uint32_t lines_through_anchor(std::uint32_t q, double c) {
  return static_cast<std::uint32_t>(std::ceil(c * q - 1e-9));
}

inline std::int64_t promised_colors(std::int64_t q, Mode mode) {
  return mode == Mode::thm4 ? (q * q + q - 16) / 10 : (q * q + q - 18) / 11;
}

struct AttemptStats {
  std::uint64_t seed = 0;
  std::uint32_t unresolved_off_anchor = 0;  // after Step 2
  std::uint32_t unresolved_through_anchor = 0;
  std::string failure;  // empty on success
};

struct RandomizedResult {
  Coloring coloring;
  Verdict verdict;
  std::uint32_t attempts = 0;
  std::uint32_t t = 0;
  std::vector<AttemptStats> history;
  bool delegated_to_pigeonhole = false;
};

/// Mutable state of one attempt, exposed so each step can be inspected.
class ResolutionState {
 public:
  static constexpr color_id uncolored = Matching::unmatched;

  ResolutionState(const ProjectivePlane& plane, const std::vector<std::vector<line_id>>& through,
                  const RandomizedParams& params, std::uint64_t seed)
      : plane_(plane), through_(through), params_(params), rng_(seed) {
    q_ = plane.order();
    t_ = lines_through_anchor(q_, params.c);
    if (t_ == 0 || t_ > q_ + 1) fail(errc::precondition_failed, "t = ceil(cq) must be in [1, q+1]");
    if (params.anchor >= plane.num_points()) fail(errc::precondition_failed, "anchor out of range");
    colors_.assign(plane.num_points(), uncolored);
    mono_.assign(plane.num_lines(), 0);
  }

  const ProjectivePlane& plane() const noexcept { return plane_; }
  point_id anchor() const noexcept { return params_.anchor; }
  std::uint32_t t() const noexcept { return t_; }
  const std::vector<line_id>& chosen_lines() const noexcept { return chosen_; }
  const std::vector<color_id>& colors() const noexcept { return colors_; }
  const std::vector<std::uint32_t>& class_sizes() const noexcept { return sizes_; }
  std::uint32_t remainder() const noexcept { return r_; }
  bool resolved(line_id l) const { return mono_.at(l) > 0; }
  const std::vector<std::pair<line_id, point_id>>& assigned() const noexcept { return assigned_; }

  std::vector<line_id> unresolved_lines(bool through_anchor) const {
    std::vector<line_id> out;
    const auto& a = through_[params_.anchor];
    for (line_id l = 0; l < plane_.num_lines(); ++l) {
      if (mono_[l]) continue;
      if (std::binary_search(a.begin(), a.end(), l) == through_anchor) out.push_back(l);
    }
    return out;
  }

  void step1() {
    std::vector<line_id> lines = through_[params_.anchor];
    std::shuffle(lines.begin(), lines.end(), rng_);
    chosen_.assign(lines.begin(), lines.begin() + t_);
    std::sort(chosen_.begin(), chosen_.end());
    for (auto l : chosen_) {
      std::vector<point_id> pts;
      for (auto pt : plane_.line(l))
        if (pt != params_.anchor) pts.push_back(pt);
      std::shuffle(pts.begin(), pts.end(), rng_);
      const color_id c = new_class();
      paint(pts[0], c);
      paint(pts[1], c);
    }
  }

  /// Deals the uncolored points of U into the Step 1 classes and fresh ones.
  /// Throws RandomizedFailure on infeasible arithmetic.
  void step2() {
    const std::uint32_t b = params_.base_size();
    const std::uint64_t tq = std::uint64_t{t_} * q_;
    const auto s = static_cast<std::uint32_t>(tq / b);
    r_ = static_cast<std::uint32_t>(tq % b);
    if (s < t_) fail(errc::randomized_failure, "fewer classes than chosen lines");
    while (sizes_.size() < s) new_class();
    std::vector<std::uint32_t> target(s, b);
    std::vector<std::uint32_t> ids(s);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), rng_);
    for (std::uint32_t i = 0; i < r_; ++i) ++target[ids[i]];

    std::vector<point_id> pool;
    for (auto l : chosen_)
      for (auto pt : plane_.line(l))
        if (pt != params_.anchor && colors_[pt] == uncolored) pool.push_back(pt);
    std::shuffle(pool.begin(), pool.end(), rng_);
    std::size_t next = 0;
    for (color_id c = 0; c < s; ++c)
      while (sizes_[c] < target[c]) paint(pool.at(next++), c);
    if (next != pool.size()) fail(errc::randomized_failure, "step 2 class arithmetic does not cover U");
  }

  /// Hall steps. Throws RandomizedFailure when a matching is not saturating.
  void step3() {
    const auto x1 = unresolved_lines(false);
    const auto x2 = unresolved_lines(true);
    // Left: X1 lines, then two copies of each X2 line. Right: uncolored
    // points other than Q, compacted.
    std::vector<std::uint32_t> right_id(plane_.num_points(), Matching::unmatched);
    std::vector<point_id> right_pt;
    for (point_id pt = 0; pt < plane_.num_points(); ++pt)
      if (colors_[pt] == uncolored && pt != params_.anchor) {
        right_id[pt] = static_cast<std::uint32_t>(right_pt.size());
        right_pt.push_back(pt);
      }
    std::vector<line_id> left_line;
    for (auto l : x1) left_line.push_back(l);
    for (auto l : x2) {
      left_line.push_back(l);
      left_line.push_back(l);
    }
    std::vector<std::vector<std::uint32_t>> adj(left_line.size());
    for (std::size_t i = 0; i < left_line.size(); ++i)
      for (auto pt : plane_.line(left_line[i]))
        if (right_id[pt] != Matching::unmatched) adj[i].push_back(right_id[pt]);
    const auto m = max_bipartite_matching(static_cast<std::uint32_t>(left_line.size()),
                                          static_cast<std::uint32_t>(right_pt.size()), adj);
    if (!m.saturates_left())
      fail(errc::randomized_failure, "point assignment unsaturated (" + std::to_string(m.size) + " of " +
                                         std::to_string(left_line.size()) + ")");
    assigned_.clear();
    for (std::size_t i = 0; i < left_line.size(); ++i) assigned_.push_back({left_line[i], right_pt[m.left_to_right[i]]});

    // Colors for the X1 points: one color per line from those on the line.
    std::vector<std::vector<std::uint32_t>> cadj(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
      for (auto pt : plane_.line(x1[i]))
        if (colors_[pt] != uncolored) cadj[i].push_back(colors_[pt]);
      std::sort(cadj[i].begin(), cadj[i].end());
      cadj[i].erase(std::unique(cadj[i].begin(), cadj[i].end()), cadj[i].end());
    }
    const auto cm = max_bipartite_matching(static_cast<std::uint32_t>(x1.size()),
                                           static_cast<std::uint32_t>(sizes_.size()), cadj);
    if (!cm.saturates_left())
      fail(errc::randomized_failure, "color choice unsaturated (" + std::to_string(cm.size) + " of " +
                                         std::to_string(x1.size()) + ")");
    for (std::size_t i = 0; i < x1.size(); ++i) paint(assigned_[i].second, cm.left_to_right[i]);
    through_anchor_assigned_.assign(assigned_.begin() + static_cast<std::ptrdiff_t>(x1.size()), assigned_.end());
  }

  /// Resolves the lines through Q, then balances. Throws RandomizedFailure
  /// on infeasible arithmetic.
  void step4() {
    const std::uint32_t s = params_.final_size();
    // Points assigned to X2 lines, grouped by line (two per line).
    std::vector<point_id> pending;
    for (const auto& [_, pt] : through_anchor_assigned_) pending.push_back(pt);
    const std::size_t per_group = 10;  // five lines, two points each
    std::vector<color_id> step4_classes;
    for (std::size_t i = 0; i < pending.size(); i += per_group) {
      const color_id c = new_class();
      step4_classes.push_back(c);
      for (std::size_t j = i; j < std::min(pending.size(), i + per_group); ++j) paint(pending[j], c);
    }

    // Top up: smallest class first, uncolored points in index order.
    std::vector<point_id> free_pts;
    for (point_id pt = 0; pt < plane_.num_points(); ++pt)
      if (colors_[pt] == uncolored) free_pts.push_back(pt);
    std::size_t next = 0;
    std::vector<color_id> order(sizes_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](color_id a, color_id b) { return sizes_[a] < sizes_[b]; });
    for (auto c : order) {
      if (sizes_[c] > s + 1) fail(errc::randomized_failure, "class larger than s + 1");
      while (sizes_[c] < s) {
        if (next == free_pts.size()) fail(errc::randomized_failure, "not enough uncolored points to top up classes");
        paint(free_pts[next++], c);
      }
    }
    // Fresh classes of size s, the remainder spread over size-s classes.
    while (free_pts.size() - next >= s) {
      const color_id c = new_class();
      for (std::uint32_t i = 0; i < s; ++i) paint(free_pts[next++], c);
    }
    for (color_id c = 0; c < sizes_.size() && next < free_pts.size(); ++c)
      if (sizes_[c] == s) paint(free_pts[next++], c);
    if (next != free_pts.size()) fail(errc::randomized_failure, "leftover points exceed classes of size s");
    const auto large = static_cast<std::uint32_t>(std::count(sizes_.begin(), sizes_.end(), s + 1));
    if (large > params_.max_large_classes())
      fail(errc::randomized_failure, std::to_string(large) + " classes of size s+1 exceed the cap of " +
                                         std::to_string(params_.max_large_classes()));
  }

 private:
  const ProjectivePlane& plane_;
  const std::vector<std::vector<line_id>>& through_;
  RandomizedParams params_;
  std::mt19937_64 rng_;
  std::uint32_t q_ = 0, t_ = 0, r_ = 0;
  std::vector<line_id> chosen_;
  std::vector<color_id> colors_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint32_t> mono_;  // monochromatic pairs per line
  std::vector<std::pair<line_id, point_id>> assigned_;
  std::vector<std::pair<line_id, point_id>> through_anchor_assigned_;

  color_id new_class() {
    sizes_.push_back(0);
    return static_cast<color_id>(sizes_.size() - 1);
  }

  void paint(point_id pt, color_id c) {
    if (colors_[pt] != uncolored) fail(errc::randomized_failure, "point painted twice");
    colors_[pt] = c;
    ++sizes_[c];
    for (auto l : through_[pt]) {
      for (auto other : plane_.line(l))
        if (other != pt && colors_[other] == c) {
          ++mono_[l];
          break;
        }
    }
  }
};

inline void check_mode(std::uint32_t q, Mode mode) {
  if (mode == Mode::thm4 && q <= 133)
    fail(errc::out_of_hypothesis, "theorem mode needs q > 133, got q = " + std::to_string(q));
  if (mode == Mode::remark && q < 11) fail(errc::out_of_hypothesis, "remark mode needs q >= 11");
}

/// Number of unresolved lines avoiding Q after Steps 1-2 for one seed.
inline std::uint32_t sample_unresolved(const ProjectivePlane& plane, const std::vector<std::vector<line_id>>& through,
                                       const RandomizedParams& params, std::uint64_t seed) {
  ResolutionState st(plane, through, params, seed);
  st.step1();
  st.step2();
  return static_cast<std::uint32_t>(st.unresolved_lines(false).size());
}

/// Retries with seeds seed, seed+1, ... until an attempt verifies. Planes
/// of order at most 10 are colored by pigeonhole instead.
inline RandomizedResult randomized_balanced_coloring(const ProjectivePlane& plane, const RandomizedParams& params) {
  const std::uint32_t q = plane.order();
  if (!(params.c > 0 && params.c < 1)) fail(errc::precondition_failed, "c must lie in (0, 1)");
  RandomizedResult result;
  if (q <= 10) {
    result.coloring = color_pigeonhole_small(plane);
    result.verdict = verify(plane, result.coloring);
    result.delegated_to_pigeonhole = true;
    return result;
  }
  check_mode(q, params.mode);
  const auto through = lines_through_points(plane);
  result.t = lines_through_anchor(q, params.c);
  const std::uint32_t s = params.final_size();
  for (std::uint32_t attempt = 0; attempt < params.max_retries; ++attempt) {
    AttemptStats stats;
    stats.seed = params.seed + attempt;
    ++result.attempts;
    try {
      ResolutionState st(plane, through, params, stats.seed);
      st.step1();
      st.step2();
      stats.unresolved_off_anchor = static_cast<std::uint32_t>(st.unresolved_lines(false).size());
      stats.unresolved_through_anchor = static_cast<std::uint32_t>(st.unresolved_lines(true).size());
      st.step3();
      st.step4();
      Coloring coloring(st.colors());
      Verdict v = verify(plane, coloring);
      if (!v.ok()) fail(errc::randomized_failure, "final coloring did not verify");
      if (v.min_class_size != s || v.max_class_size > s + 1) fail(errc::randomized_failure, "class sizes out of range");
      if (static_cast<std::int64_t>(v.num_colors) < promised_colors(q, params.mode))
        fail(errc::randomized_failure, "fewer colors than promised");
      result.history.push_back(stats);
      result.coloring = std::move(coloring);
      result.verdict = std::move(v);
      return result;
    } catch (const error& e) {
      if (e.code() != errc::randomized_failure) throw;
      stats.failure = e.what();
      result.history.push_back(stats);
    }
  }
  std::string diag;
  for (const auto& h : result.history) diag += " " + std::to_string(h.unresolved_off_anchor);
  fail(errc::randomized_failure, std::to_string(params.max_retries) +
                                     " attempts failed; unresolved lines off the anchor per attempt:" + diag);
}

}  // namespace plane_chroma::randomized
