#pragma once

// Finite projective planes as explicit incidence structures, built from
// cyclic difference sets, affine difference sets, or planar functions.
//
// Point indexing conventions:
//   cyclic:      points are Z_v, line g is D + g.
//   affine DS:   group elements 0 .. q^2-2, then O = q^2-1, then one ideal
//                point per parallel class (q^2 .. q^2+q), in order of the
//                class's first line.
//   planar:      affine (x, y) is x.code * q + y.code, then the vertical
//                ideal point q^2, then the translate-class ideal points
//                q^2 + 1 + a.code. Lines: vertical x = c is line c,
//                translate L_{a,b} is line q + a.code * q + b.code, the
//                ideal line is last.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "plane_chroma/diffset_check.hpp"
#include "plane_chroma/error.hpp"
#include "plane_chroma/gf.hpp"
#include "plane_chroma/workers.hpp"

namespace plane_chroma {

using point_id = std::uint32_t;
using line_id = std::uint32_t;

constexpr std::uint64_t plane_size(std::uint64_t q) { return q * q + q + 1; }

class ProjectivePlane {
 public:
  ProjectivePlane() = default;

  /// Lines are sorted on construction. Point ids must be < num_points; the
  /// remaining axioms are checked by verify_axioms, not here.
  ProjectivePlane(std::uint32_t order, std::uint32_t num_points, std::vector<std::vector<point_id>> lines,
                  std::map<point_id, std::string> labels = {})
      : order_(order), num_points_(num_points), lines_(std::move(lines)), labels_(std::move(labels)) {
    for (auto& l : lines_) {
      std::sort(l.begin(), l.end());
      for (auto pt : l)
        if (pt >= num_points_) fail(errc::domain_error, "point " + std::to_string(pt) + " out of range");
    }
    for (const auto& [pt, _] : labels_)
      if (pt >= num_points_) fail(errc::domain_error, "label for point " + std::to_string(pt) + " out of range");
  }

  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t num_points() const noexcept { return num_points_; }
  std::uint32_t num_lines() const noexcept { return static_cast<std::uint32_t>(lines_.size()); }
  const std::vector<std::vector<point_id>>& lines() const noexcept { return lines_; }
  const std::vector<point_id>& line(line_id l) const { return lines_.at(l); }
  const std::map<point_id, std::string>& labels() const noexcept { return labels_; }

  std::optional<std::string> label(point_id pt) const {
    if (auto it = labels_.find(pt); it != labels_.end()) return it->second;
    return std::nullopt;
  }

  std::optional<point_id> find_label(const std::string& text) const {
    for (const auto& [pt, lab] : labels_)
      if (lab == text) return pt;
    return std::nullopt;
  }

  friend bool operator==(const ProjectivePlane&, const ProjectivePlane&) = default;

 private:
  std::uint32_t order_ = 0;
  std::uint32_t num_points_ = 0;
  std::vector<std::vector<point_id>> lines_;
  std::map<point_id, std::string> labels_;
};

/// For each point, the ids of the lines through it (ascending).
inline std::vector<std::vector<line_id>> lines_through_points(const ProjectivePlane& plane) {
  std::vector<std::vector<line_id>> through(plane.num_points());
  for (line_id l = 0; l < plane.num_lines(); ++l)
    for (auto pt : plane.line(l)) through[pt].push_back(l);
  return through;
}

// ---------------------------------------------------------------------------
// Axiom verification

enum class axiom_violation_kind { point_count, line_count, line_size, duplicate_point, point_degree, pair_multiplicity };

struct AxiomViolation {
  axiom_violation_kind kind;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  std::uint64_t pair_violations = 0;  // total, even beyond the listed ones

  bool ok() const noexcept { return violations.empty(); }

  std::size_t count(axiom_violation_kind kind) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [&](const auto& v) { return v.kind == kind; }));
  }
};

/// Checks counts, line sizes, point degrees and that every pair of distinct
/// points lies on exactly one common line. Empty report = valid plane.
inline AxiomReport verify_axioms(const ProjectivePlane& plane, std::size_t max_listed_pairs = 32) {
  AxiomReport report;
  const std::uint64_t q = plane.order();
  const std::uint64_t n = plane_size(q);
  auto add = [&](axiom_violation_kind k, std::string d) { report.violations.push_back({k, std::move(d)}); };

  if (q < 2) add(axiom_violation_kind::point_count, "order " + std::to_string(q) + " < 2");
  if (plane.num_points() != n)
    add(axiom_violation_kind::point_count,
        "expected " + std::to_string(n) + " points, found " + std::to_string(plane.num_points()));
  if (plane.num_lines() != n)
    add(axiom_violation_kind::line_count,
        "expected " + std::to_string(n) + " lines, found " + std::to_string(plane.num_lines()));
  for (line_id l = 0; l < plane.num_lines(); ++l) {
    const auto& pts = plane.line(l);
    if (pts.size() != q + 1)
      add(axiom_violation_kind::line_size,
          "line " + std::to_string(l) + " has " + std::to_string(pts.size()) + " points");
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      add(axiom_violation_kind::duplicate_point, "line " + std::to_string(l) + " repeats a point");
  }
  const auto through = lines_through_points(plane);
  for (point_id pt = 0; pt < plane.num_points(); ++pt)
    if (through[pt].size() != q + 1)
      add(axiom_violation_kind::point_degree,
          "point " + std::to_string(pt) + " lies on " + std::to_string(through[pt].size()) + " lines");

  // Pair check: for each point P, every other point must be seen exactly
  // once across the lines through P. Points are split across workers.
  const std::uint32_t np = plane.num_points();
  const unsigned workers = std::min<unsigned>(worker_count(), std::max<std::uint32_t>(1, np / 256));
  struct Partial {
    std::uint64_t bad = 0;
    std::vector<std::string> listed;
  };
  std::vector<Partial> partials(workers);
  auto scan = [&](unsigned w) {
    std::vector<std::uint32_t> seen(np, 0);
    std::vector<std::uint32_t> stamp(np, 0);
    auto& out = partials[w];
    for (point_id a = w; a < np; a += workers) {
      const std::uint32_t tag = a + 1;
      for (auto l : through[a])
        for (auto b : plane.line(l)) {
          if (b == a) continue;
          if (stamp[b] != tag) {
            stamp[b] = tag;
            seen[b] = 0;
          }
          ++seen[b];
        }
      for (point_id b = a + 1; b < np; ++b) {
        const std::uint32_t count = stamp[b] == tag ? seen[b] : 0;
        if (count != 1) {
          ++out.bad;
          if (out.listed.size() < max_listed_pairs)
            out.listed.push_back("points " + std::to_string(a) + "," + std::to_string(b) + " share " +
                                 std::to_string(count) + " lines");
        }
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  for (auto& part : partials) {
    report.pair_violations += part.bad;
    for (auto& s : part.listed)
      if (report.count(axiom_violation_kind::pair_multiplicity) < max_listed_pairs)
        add(axiom_violation_kind::pair_multiplicity, std::move(s));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cyclic difference sets

struct DifferenceSet {
  std::uint32_t v = 0;
  std::vector<std::uint32_t> elements;  // sorted

  std::uint32_t order() const noexcept { return elements.empty() ? 0 : static_cast<std::uint32_t>(elements.size() - 1); }
  bool contains(std::uint32_t x) const { return std::binary_search(elements.begin(), elements.end(), x); }

  friend bool operator==(const DifferenceSet&, const DifferenceSet&) = default;
};

/// Exponents i in [0, q^2+q] for which x^i, reduced mod the first primitive
/// x^3 - bx - c, has zero x^2 coefficient. Always contains 0, 1 and 3.
inline DifferenceSet singer_difference_set(std::uint32_t q) {
  const gf::Field field = gf::field_of_order(q);
  const gf::CubicTower tower(field, gf::find_primitive_cubic(field));
  const auto v = static_cast<std::uint32_t>(plane_size(q));
  DifferenceSet ds{v, {}};
  auto power = tower.one();
  for (std::uint32_t i = 0; i < v; ++i) {
    if (power[2] == field.zero()) ds.elements.push_back(i);
    power = tower.times_x(power);
  }
  if (ds.elements.size() != q + 1 || !search::is_planar_difference_set(ds.elements, v))
    fail(errc::construction_failed, "Singer set for q=" + std::to_string(q) + " failed certification");
  return ds;
}

inline ProjectivePlane plane_from_cyclic_difference_set(const DifferenceSet& ds) {
  if (ds.elements.size() < 3) fail(errc::degenerate_order, "difference set of order < 2");
  if (!search::is_planar_difference_set(ds.elements, ds.v))
    fail(errc::not_a_difference_set, "not a planar difference set mod " + std::to_string(ds.v));
  const std::uint32_t q = ds.order();
  if (plane_size(q) != ds.v) fail(errc::not_a_difference_set, "group order is not q^2+q+1");
  std::vector<std::vector<point_id>> lines(ds.v);
  for (std::uint32_t g = 0; g < ds.v; ++g) {
    auto& line = lines[g];
    line.reserve(ds.elements.size());
    for (auto d : ds.elements) line.push_back((d + g) % ds.v);
  }
  return ProjectivePlane(q, ds.v, std::move(lines));
}

// ---------------------------------------------------------------------------
// Affine difference sets (cyclic model Z_{q^2-1}, N = (q+1) Z)

struct AffineDifferenceSet {
  std::uint32_t q = 0;
  std::vector<std::uint32_t> elements;  // sorted q-subset of Z_{q^2-1}

  std::uint32_t v() const noexcept { return q * q - 1; }

  /// N: the multiples of q+1, a subgroup of order q-1.
  std::vector<std::uint32_t> subgroup() const {
    std::vector<std::uint32_t> n;
    for (std::uint32_t x = 0; x < v(); x += q + 1) n.push_back(x);
    return n;
  }

  friend bool operator==(const AffineDifferenceSet&, const AffineDifferenceSet&) = default;
};

/// D = { i : Tr(w^i) = 1 } for the generator w of GF(q^2); the trace-one line
/// never passes through 0.
inline AffineDifferenceSet bose_affine_difference_set(std::uint32_t q) {
  const auto pp = gf::as_prime_power(q);
  if (!pp) fail(errc::invalid_characteristic, std::to_string(q) + " is not a prime power");
  const gf::Field big = gf::field_make(pp->p, 2 * pp->h);
  AffineDifferenceSet ads{q, {}};
  for (std::uint32_t i = 0; i < ads.v(); ++i) {
    const auto x = big.exp(i);
    if (big.add(x, big.pow(x, q)) == big.one()) ads.elements.push_back(i);
  }
  const auto n = ads.subgroup();
  if (ads.elements.size() != q || !search::is_affine_difference_set(ads.elements, ads.v(), n))
    fail(errc::construction_failed, "Bose affine difference set for q=" + std::to_string(q) + " failed certification");
  return ads;
}

/// Position of the special points in a plane built from an affine difference set.
struct AffineDsLayout {
  std::uint32_t q = 0;
  point_id origin = 0;
  std::vector<point_id> ideal_points;  // one per parallel class
  line_id ideal_line = 0;
  std::vector<line_id> lines_through_origin;
};

inline ProjectivePlane plane_from_affine_difference_set(const AffineDifferenceSet& ads) {
  const std::uint32_t q = ads.q;
  if (q < 2) fail(errc::degenerate_order, "order < 2");
  const std::uint32_t v = ads.v();
  if (!search::is_affine_difference_set(ads.elements, v, ads.subgroup()))
    fail(errc::not_a_difference_set, "not an affine difference set of order " + std::to_string(q));
  const point_id origin = v;
  const std::uint32_t affine_points = v + 1;  // = q^2

  std::vector<std::vector<point_id>> affine_lines;
  affine_lines.reserve(q * q + q);
  for (std::uint32_t g = 0; g <= q; ++g) {
    std::vector<point_id> line{origin};
    for (std::uint32_t x = g; x < v; x += q + 1) line.push_back(x);
    affine_lines.push_back(std::move(line));
  }
  for (std::uint32_t g = 0; g < v; ++g) {
    std::vector<point_id> line;
    for (auto d : ads.elements) line.push_back((d + g) % v);
    affine_lines.push_back(std::move(line));
  }

  // Parallel classes: in an affine plane "equal or disjoint" is an
  // equivalence relation, so each class is a line plus everything disjoint
  // from it.
  const std::size_t nl = affine_lines.size();
  std::vector<int> klass(nl, -1);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<char> member(affine_points);
  for (std::size_t i = 0; i < nl; ++i) {
    if (klass[i] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    classes.push_back({i});
    klass[i] = id;
    std::fill(member.begin(), member.end(), 0);
    for (auto pt : affine_lines[i]) member[pt] = 1;
    for (std::size_t j = i + 1; j < nl; ++j) {
      if (klass[j] >= 0) continue;
      const bool disjoint =
          std::none_of(affine_lines[j].begin(), affine_lines[j].end(), [&](point_id pt) { return member[pt] != 0; });
      if (disjoint) {
        klass[j] = id;
        classes.back().push_back(j);
      }
    }
  }
  if (classes.size() != q + 1) fail(errc::construction_failed, "parallel classes do not partition the lines");
  for (const auto& cls : classes) {
    if (cls.size() != q) fail(errc::construction_failed, "parallel class of wrong size");
    std::vector<char> cover(affine_points, 0);
    for (auto li : cls)
      for (auto pt : affine_lines[li]) {
        if (cover[pt]) fail(errc::construction_failed, "parallel class lines intersect");
        cover[pt] = 1;
      }
  }

  const std::uint32_t np = static_cast<std::uint32_t>(plane_size(q));
  std::vector<std::vector<point_id>> lines = std::move(affine_lines);
  std::vector<point_id> ideal_line;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const point_id ideal = affine_points + static_cast<point_id>(c);
    ideal_line.push_back(ideal);
    for (auto li : classes[c]) lines[li].push_back(ideal);
  }
  lines.push_back(std::move(ideal_line));

  std::map<point_id, std::string> labels;
  for (point_id g = 0; g < v; ++g) labels[g] = "g:" + std::to_string(g);
  labels[origin] = "O";
  for (std::uint32_t c = 0; c <= q; ++c) labels[affine_points + c] = "inf:" + std::to_string(c);
  return ProjectivePlane(q, np, std::move(lines), std::move(labels));
}

/// Recovers the affine-difference-set layout from a plane's labels.
inline AffineDsLayout affine_ds_layout(const ProjectivePlane& plane) {
  const std::uint32_t q = plane.order();
  AffineDsLayout layout{q, q * q - 1, {}, 0, {}};
  auto expect = [&](point_id pt, const std::string& want) {
    const auto lab = plane.label(pt);
    if (!lab || *lab != want)
      fail(errc::precondition_failed, "plane is not labelled as an affine-difference-set plane (point " +
                                          std::to_string(pt) + ")");
  };
  if (q < 2 || plane.num_points() != plane_size(q)) fail(errc::precondition_failed, "plane has wrong size");
  for (point_id g = 0; g < q * q - 1; ++g) expect(g, "g:" + std::to_string(g));
  expect(layout.origin, "O");
  for (std::uint32_t c = 0; c <= q; ++c) {
    expect(q * q + c, "inf:" + std::to_string(c));
    layout.ideal_points.push_back(q * q + c);
  }
  bool found_ideal = false;
  for (line_id l = 0; l < plane.num_lines(); ++l) {
    const auto& pts = plane.line(l);
    if (std::binary_search(pts.begin(), pts.end(), layout.origin)) layout.lines_through_origin.push_back(l);
    if (pts == layout.ideal_points) {
      layout.ideal_line = l;
      found_ideal = true;
    }
  }
  if (!found_ideal || layout.lines_through_origin.size() != q + 1)
    fail(errc::precondition_failed, "affine-difference-set plane structure not found");
  return layout;
}

// ---------------------------------------------------------------------------
// Planar functions

struct PlanarFunction {
  std::shared_ptr<const gf::Field> field;
  std::vector<gf::FieldElement> table;

  gf::FieldElement operator()(gf::FieldElement x) const { return table[x.code]; }
  std::uint32_t order() const noexcept { return field->order(); }
};

inline PlanarFunction planar_monomial(std::shared_ptr<const gf::Field> field, std::uint64_t exponent) {
  PlanarFunction f{field, {}};
  f.table.reserve(field->order());
  for (std::uint32_t c = 0; c < field->order(); ++c)
    f.table.push_back(field->pow({c}, static_cast<std::int64_t>(exponent)));
  return f;
}

inline PlanarFunction planar_square(std::shared_ptr<const gf::Field> field) { return planar_monomial(std::move(field), 2); }

/// x^((3^alpha + 1) / 2) over GF(3^e); planar when alpha is odd and
/// gcd(alpha, e) = 1.
inline PlanarFunction planar_coulter_matthews(std::shared_ptr<const gf::Field> field, std::uint32_t alpha) {
  if (field->p() != 3) fail(errc::unsupported_characteristic, "Coulter-Matthews functions live in characteristic 3");
  std::uint64_t t = 1;
  for (std::uint32_t i = 0; i < alpha; ++i) t *= 3;
  return planar_monomial(std::move(field), (t + 1) / 2);
}

/// For every a != 0, x -> f(x+a) - f(x) must be a bijection. O(q^2).
inline bool is_planar(const PlanarFunction& f) {
  const gf::Field& F = *f.field;
  const std::uint32_t q = F.order();
  if (f.table.size() != q) return false;
  std::vector<std::uint32_t> stamp(q, 0);
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t x = 0; x < q; ++x) {
      const auto d = F.sub(f(F.add({x}, {a})), f({x}));
      if (stamp[d.code] == a) return false;
      stamp[d.code] = a;
    }
  }
  return true;
}

/// g(x) = f(x) - f(0) - (f(1) - f(0)) x, so g(0) = g(1) = 0; optionally
/// scaled so that g(2) = 1 (needs p >= 5).
inline PlanarFunction normalize_planar(const PlanarFunction& f, bool want_f2_one) {
  const gf::Field& F = *f.field;
  if (want_f2_one && F.p() < 5) fail(errc::unsupported_characteristic, "g(2) = 1 normalization needs p >= 5");
  const auto f0 = f(F.zero());
  const auto slope = F.sub(f(F.one()), f0);
  PlanarFunction g{f.field, std::vector<gf::FieldElement>(F.order())};
  for (std::uint32_t x = 0; x < F.order(); ++x) g.table[x] = F.sub(F.sub(f({x}), f0), F.mul(slope, {x}));
  if (want_f2_one) {
    // g(2) != 0: x -> g(x+1) - g(x) is a bijection vanishing at 0, so its
    // value at 1, which is g(2), is nonzero.
    const auto scale = F.inv(g(F.from_integer(2)));
    for (auto& y : g.table) y = F.mul(y, scale);
  }
  return g;
}

class PlanarPlaneAtlas {
 public:
  struct Affine {
    gf::FieldElement x, y;
  };
  struct VerticalIdeal {};
  struct TranslateIdeal {
    gf::FieldElement a;
  };
  using Coordinates = std::variant<Affine, VerticalIdeal, TranslateIdeal>;

  explicit PlanarPlaneAtlas(PlanarFunction f) : f_(std::move(f)) {
    const gf::Field& F = field();
    const std::uint32_t q = F.order();
    if (!is_planar(f_)) fail(errc::not_planar, "function is not planar over GF(" + std::to_string(q) + ")");
    if (f_(F.zero()) != F.zero() || f_(F.one()) != F.zero())
      fail(errc::precondition_failed, "planar function must satisfy f(0) = f(1) = 0");

    // solve_[d * q + w] = the unique t with f(t + d) - f(t) = w, for d != 0.
    solve_.assign(std::size_t{q} * q, 0);
    for (std::uint32_t d = 1; d < q; ++d)
      for (std::uint32_t t = 0; t < q; ++t) {
        const auto w = F.sub(f_(F.add({t}, {d})), f_({t}));
        solve_[std::size_t{d} * q + w.code] = t;
      }

    std::vector<std::vector<point_id>> lines(plane_size(q));
    for (std::uint32_t c = 0; c < q; ++c) {
      auto& line = lines[vertical_line({c})];
      for (std::uint32_t y = 0; y < q; ++y) line.push_back(affine_point({c}, {y}));
      line.push_back(vertical_ideal());
    }
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        auto& line = lines[translate_line({a}, {b})];
        for (std::uint32_t x = 0; x < q; ++x)
          line.push_back(affine_point({x}, F.add(f_(F.sub({x}, {a})), {b})));
        line.push_back(translate_ideal({a}));
      }
    auto& ideal = lines[ideal_line()];
    ideal.push_back(vertical_ideal());
    for (std::uint32_t a = 0; a < q; ++a) ideal.push_back(translate_ideal({a}));

    std::map<point_id, std::string> labels;
    for (std::uint32_t x = 0; x < q; ++x)
      for (std::uint32_t y = 0; y < q; ++y)
        labels[affine_point({x}, {y})] = "a:" + std::to_string(x) + "," + std::to_string(y);
    labels[vertical_ideal()] = "inf:v";
    for (std::uint32_t a = 0; a < q; ++a) labels[translate_ideal({a})] = "inf:" + std::to_string(a);
    plane_ = ProjectivePlane(q, static_cast<std::uint32_t>(plane_size(q)), std::move(lines), std::move(labels));
  }

  const ProjectivePlane& plane() const noexcept { return plane_; }
  const PlanarFunction& function() const noexcept { return f_; }
  const gf::Field& field() const noexcept { return *f_.field; }
  std::uint32_t order() const noexcept { return f_.order(); }

  point_id affine_point(gf::FieldElement x, gf::FieldElement y) const noexcept { return x.code * order() + y.code; }
  point_id vertical_ideal() const noexcept { return order() * order(); }
  point_id translate_ideal(gf::FieldElement a) const noexcept { return order() * order() + 1 + a.code; }

  line_id vertical_line(gf::FieldElement c) const noexcept { return c.code; }
  line_id translate_line(gf::FieldElement a, gf::FieldElement b) const noexcept {
    return order() + a.code * order() + b.code;
  }
  line_id ideal_line() const noexcept { return order() * order() + order(); }

  bool is_affine(point_id pt) const noexcept { return pt < order() * order(); }

  Coordinates coordinates(point_id pt) const {
    const std::uint32_t q = order();
    if (pt < q * q) return Affine{{pt / q}, {pt % q}};
    if (pt == q * q) return VerticalIdeal{};
    if (pt <= q * q + q) return TranslateIdeal{{pt - q * q - 1}};
    fail(errc::domain_error, "point out of range");
  }

  /// The ideal point on a line (the ideal line has no single one).
  point_id ideal_point_of(line_id l) const {
    const std::uint32_t q = order();
    if (l < q) return vertical_ideal();
    if (l < q + q * q) return translate_ideal({(l - q) / q});
    fail(errc::domain_error, "the ideal line has no distinguished ideal point");
  }

  /// The unique line through two distinct points.
  line_id line_through(point_id p1, point_id p2) const {
    if (p1 == p2) fail(errc::precondition_failed, "line_through needs distinct points");
    const gf::Field& F = field();
    const auto c1 = coordinates(p1), c2 = coordinates(p2);
    const auto* a1 = std::get_if<Affine>(&c1);
    const auto* a2 = std::get_if<Affine>(&c2);
    if (!a1 && !a2) return ideal_line();
    if (!a1 || !a2) {
      const Affine& pt = a1 ? *a1 : *a2;
      const Coordinates& other = a1 ? c2 : c1;
      if (std::holds_alternative<VerticalIdeal>(other)) return vertical_line(pt.x);
      const auto a = std::get<TranslateIdeal>(other).a;
      return translate_line(a, F.sub(pt.y, f_(F.sub(pt.x, a))));
    }
    if (a1->x == a2->x) return vertical_line(a1->x);
    const auto d = F.sub(a1->x, a2->x);
    const auto w = F.sub(a1->y, a2->y);
    const gf::FieldElement t{solve_[std::size_t{d.code} * order() + w.code]};
    const auto a = F.sub(a2->x, t);
    const auto b = F.sub(a2->y, f_(F.sub(a2->x, a)));
    return translate_line(a, b);
  }

 private:
  PlanarFunction f_;
  std::vector<std::uint32_t> solve_;
  ProjectivePlane plane_;
};

inline PlanarPlaneAtlas plane_from_planar_function(PlanarFunction f) { return PlanarPlaneAtlas(std::move(f)); }

/// Rebuilds the atlas for a plane written by plane_from_planar_function
/// (e.g. after a file round trip), reading f off the line through (0,0) and
/// the ideal point inf:0.
inline PlanarPlaneAtlas atlas_from_plane(const ProjectivePlane& plane) {
  const std::uint32_t q = plane.order();
  const auto field = std::make_shared<const gf::Field>(gf::field_of_order(q));
  const auto origin = plane.find_label("a:0,0");
  const auto inf0 = plane.find_label("inf:0");
  if (!origin || !inf0) fail(errc::precondition_failed, "plane is not labelled as a planar-function plane");
  std::map<point_id, std::pair<std::uint32_t, std::uint32_t>> coords;
  for (const auto& [pt, lab] : plane.labels()) {
    if (lab.rfind("a:", 0) != 0) continue;
    const auto comma = lab.find(',');
    if (comma == std::string::npos) fail(errc::precondition_failed, "bad affine label " + lab);
    coords[pt] = {static_cast<std::uint32_t>(std::stoul(lab.substr(2, comma - 2))),
                  static_cast<std::uint32_t>(std::stoul(lab.substr(comma + 1)))};
  }
  std::optional<line_id> graph;
  for (line_id l = 0; l < plane.num_lines(); ++l) {
    const auto& pts = plane.line(l);
    if (std::binary_search(pts.begin(), pts.end(), *origin) && std::binary_search(pts.begin(), pts.end(), *inf0)) {
      graph = l;
      break;
    }
  }
  if (!graph) fail(errc::precondition_failed, "no line through a:0,0 and inf:0");
  PlanarFunction f{field, std::vector<gf::FieldElement>(q)};
  std::vector<char> set(q, 0);
  for (auto pt : plane.line(*graph)) {
    auto it = coords.find(pt);
    if (it == coords.end()) continue;
    const auto [x, y] = it->second;
    if (x >= q || y >= q || set[x]) fail(errc::precondition_failed, "graph line is not a function graph");
    set[x] = 1;
    f.table[x] = {y};
  }
  if (std::count(set.begin(), set.end(), 1) != static_cast<std::ptrdiff_t>(q))
    fail(errc::precondition_failed, "graph line does not cover every x");
  PlanarPlaneAtlas atlas(std::move(f));
  if (!(atlas.plane() == plane)) fail(errc::precondition_failed, "plane does not match the planar-function atlas");
  return atlas;
}

}  // namespace plane_chroma
