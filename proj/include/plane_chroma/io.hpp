#pragma once

// Text formats.
//
//   pplane v1
//   order q
//   points N lines M
//   <M lines of q+1 ascending point indices>
//   # label idx text          (optional, any number)
//
//   coloring v1
//   points N colors K
//   <N lines "idx color">

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plane_chroma/coloring.hpp"
#include "plane_chroma/error.hpp"
#include "plane_chroma/plane.hpp"

namespace plane_chroma::io {

namespace detail {

inline std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t j = s.find(' ', i);
    const std::size_t end = j == std::string_view::npos ? s.size() : j;
    if (end > i) out.push_back(s.substr(i, end - i));
    i = end;
  }
  return out;
}

inline std::uint32_t to_u32(std::string_view tok, std::size_t line) {
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw parse_error(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }

  std::string require(const char* what) {
    std::string s;
    if (!next(s)) throw parse_error(line_ + 1, std::string("unexpected end of file, expected ") + what);
    return s;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// "key1 a key2 b ..." with fixed keys.
inline std::vector<std::uint32_t> keyed(const std::string& text, std::initializer_list<std::string_view> keys,
                                        std::size_t line) {
  const auto tok = split(text);
  if (tok.size() != 2 * keys.size()) throw parse_error(line, "malformed header '" + text + "'");
  std::vector<std::uint32_t> out;
  std::size_t i = 0;
  for (auto k : keys) {
    if (tok[i] != k) throw parse_error(line, "expected '" + std::string(k) + "', got '" + std::string(tok[i]) + "'");
    out.push_back(to_u32(tok[i + 1], line));
    i += 2;
  }
  return out;
}

}  // namespace detail

inline void write_plane(std::ostream& out, const ProjectivePlane& plane) {
  out << "pplane v1\n"
      << "order " << plane.order() << "\n"
      << "points " << plane.num_points() << " lines " << plane.num_lines() << "\n";
  for (const auto& line : plane.lines()) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? " " : "") << line[i];
    out << "\n";
  }
  for (const auto& [pt, text] : plane.labels()) out << "# label " << pt << " " << text << "\n";
}

inline ProjectivePlane read_plane(std::istream& in) {
  detail::LineReader r(in);
  if (r.require("header") != "pplane v1") throw parse_error(r.line(), "expected 'pplane v1'");
  const auto order_text = r.require("order");
  const auto order = detail::keyed(order_text, {"order"}, r.line())[0];
  const auto counts_text = r.require("counts");
  const auto counts = detail::keyed(counts_text, {"points", "lines"}, r.line());
  const std::uint32_t n = counts[0], m = counts[1];
  std::vector<std::vector<point_id>> lines;
  lines.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto text = r.require("a line of points");
    std::vector<point_id> pts;
    for (auto tok : detail::split(text)) pts.push_back(detail::to_u32(tok, r.line()));
    if (pts.size() != std::size_t{order} + 1)
      throw parse_error(r.line(), "line has " + std::to_string(pts.size()) + " points, expected " +
                                      std::to_string(order + 1));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (pts[j] >= n) throw parse_error(r.line(), "point " + std::to_string(pts[j]) + " out of range");
      if (j && pts[j] <= pts[j - 1]) throw parse_error(r.line(), "points not strictly ascending");
    }
    lines.push_back(std::move(pts));
  }
  std::map<point_id, std::string> labels;
  std::string text;
  while (r.next(text)) {
    if (text.empty()) continue;
    constexpr std::string_view prefix = "# label ";
    if (text.rfind(prefix, 0) != 0) throw parse_error(r.line(), "unexpected trailing content");
    const std::string rest = text.substr(prefix.size());
    const auto sp = rest.find(' ');
    if (sp == std::string::npos || sp + 1 >= rest.size()) throw parse_error(r.line(), "malformed label line");
    const auto pt = detail::to_u32(std::string_view(rest).substr(0, sp), r.line());
    if (pt >= n) throw parse_error(r.line(), "label for point out of range");
    if (!labels.emplace(pt, rest.substr(sp + 1)).second) throw parse_error(r.line(), "duplicate label");
  }
  return ProjectivePlane(order, n, std::move(lines), std::move(labels));
}

inline void write_coloring(std::ostream& out, const Coloring& coloring) {
  out << "coloring v1\n"
      << "points " << coloring.num_points() << " colors " << coloring.num_colors() << "\n";
  for (point_id pt = 0; pt < coloring.num_points(); ++pt) out << pt << " " << coloring[pt] << "\n";
}

inline Coloring read_coloring(std::istream& in) {
  detail::LineReader r(in);
  if (r.require("header") != "coloring v1") throw parse_error(r.line(), "expected 'coloring v1'");
  const auto counts_text = r.require("counts");
  const auto counts = detail::keyed(counts_text, {"points", "colors"}, r.line());
  const std::uint32_t n = counts[0], k = counts[1];
  std::vector<color_id> colors(n);
  std::vector<char> seen(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto tok = detail::split(r.require("a point color"));
    if (tok.size() != 2) throw parse_error(r.line(), "expected 'idx color'");
    const auto pt = detail::to_u32(tok[0], r.line());
    const auto c = detail::to_u32(tok[1], r.line());
    if (pt >= n) throw parse_error(r.line(), "point out of range");
    if (seen[pt]) throw parse_error(r.line(), "point " + std::to_string(pt) + " listed twice");
    if (c >= k) throw parse_error(r.line(), "color " + std::to_string(c) + " >= declared " + std::to_string(k));
    seen[pt] = 1;
    colors[pt] = c;
  }
  std::string text;
  while (r.next(text))
    if (!text.empty()) throw parse_error(r.line(), "unexpected trailing content");
  try {
    Coloring out(std::move(colors));
    if (out.num_colors() != k)
      throw parse_error(2, "declared " + std::to_string(k) + " colors, found " + std::to_string(out.num_colors()));
    return out;
  } catch (const parse_error&) {
    throw;
  } catch (const error& e) {
    throw parse_error(2, e.what());
  }
}

inline std::string plane_to_string(const ProjectivePlane& plane) {
  std::ostringstream s;
  write_plane(s, plane);
  return s.str();
}

inline std::string coloring_to_string(const Coloring& coloring) {
  std::ostringstream s;
  write_coloring(s, coloring);
  return s.str();
}

inline ProjectivePlane load_plane(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::precondition_failed, "cannot open " + path);
  return read_plane(in);
}

inline Coloring load_coloring(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::precondition_failed, "cannot open " + path);
  return read_coloring(in);
}

inline void save_plane(const std::string& path, const ProjectivePlane& plane) {
  std::ofstream out(path);
  if (!out) fail(errc::precondition_failed, "cannot write " + path);
  write_plane(out, plane);
}

inline void save_coloring(const std::string& path, const Coloring& coloring) {
  std::ofstream out(path);
  if (!out) fail(errc::precondition_failed, "cannot write " + path);
  write_coloring(out, coloring);
}

}  // namespace plane_chroma::io
