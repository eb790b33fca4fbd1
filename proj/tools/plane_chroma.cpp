// plane-chroma: construct planes, color them, verify colorings, print bounds.
//
// Exit codes: 0 success, 1 usage/IO/other error, 2 verification failure,
// 3 hypothesis violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plane_chroma/coloring.hpp"
#include "plane_chroma/constructions.hpp"
#include "plane_chroma/gf.hpp"
#include "plane_chroma/io.hpp"
#include "plane_chroma/manifest.hpp"
#include "plane_chroma/plane.hpp"
#include "plane_chroma/randomized.hpp"
#include "plane_chroma/report.hpp"
#include "plane_chroma/search.hpp"

namespace pc = plane_chroma;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_other = 1;
constexpr int exit_unverified = 2;
constexpr int exit_hypothesis = 3;

int exit_code_for(pc::errc code) {
  switch (code) {
    case pc::errc::out_of_hypothesis:
    case pc::errc::unsupported_characteristic:
    case pc::errc::invalid_characteristic:
    case pc::errc::no_such_polynomial:
    case pc::errc::unsupported:
    case pc::errc::degenerate_order: return exit_hypothesis;
    case pc::errc::invalid_coloring:
    case pc::errc::domain_mismatch:
    case pc::errc::not_a_difference_set:
    case pc::errc::not_planar:
    case pc::errc::extension_unverified:
    case pc::errc::randomized_failure: return exit_unverified;
    default: return exit_other;
  }
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

json verdict_json(const pc::Verdict& v) {
  return {{"balanced", v.balanced},         {"rainbow_free", v.rainbow_free},
          {"rainbow_lines", v.rainbow_lines}, {"num_colors", v.num_colors},
          {"min_class_size", v.min_class_size}, {"max_class_size", v.max_class_size},
          {"ok", v.ok()}};
}

void print_verdict(const pc::Verdict& v) {
  std::cout << "colors " << v.num_colors << ", class sizes " << v.min_class_size << ".." << v.max_class_size << "\n"
            << "balanced " << (v.balanced ? "yes" : "no") << ", rainbow lines " << v.rainbow_lines.size() << "\n";
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

struct Context {
  bool json_out = false;
  pc::RunManifest manifest;

  void emit() const {
    if (json_out) std::cout << json(manifest).dump(2) << "\n";
  }
};

// ---------------------------------------------------------------------------

int cmd_field_info(Context& ctx, std::uint32_t p, std::uint32_t h) {
  const auto field = pc::gf::field_make(p, h);
  const auto& mod = field.spec().modulus;
  std::string poly;
  for (std::size_t i = mod.size(); i-- > 0;) {
    if (mod[i] == 0) continue;
    if (!poly.empty()) poly += " + ";
    const std::string coef = (mod[i] == 1 && i > 0) ? "" : std::to_string(mod[i]);
    poly += i == 0 ? coef : coef + (i == 1 ? "x" : "x^" + std::to_string(i));
  }
  const auto g = field.primitive_element();
  const auto gc = field.coeffs(g);
  ctx.manifest.verdict = {{"order", field.order()}, {"modulus", mod}, {"primitive_element_code", g.code}, {"primitive_element_coeffs", gc}};
  if (!ctx.json_out) {
    std::cout << "GF(" << field.order() << ") = GF(" << p << ")[x] / (" << poly << ")\n"
              << "primitive element: code " << g.code << ", coefficients (x^0 first)";
    for (auto c : gc) std::cout << " " << c;
    std::cout << "\n";
  }
  ctx.emit();
  return exit_ok;
}

pc::PlanarFunction planar_from_spec(const std::string& spec, std::uint32_t q) {
  auto field = std::make_shared<const pc::gf::Field>(pc::gf::field_of_order(q));
  if (spec == "square") return pc::planar_square(field);
  if (spec == "cm") {
    if (field->p() != 3) pc::fail(pc::errc::unsupported_characteristic, "cm functions need q = 3^e");
    const std::uint32_t e = field->h();
    for (std::uint32_t alpha = 3; alpha < 64; alpha += 2)
      if (std::gcd(alpha, e) == 1) {
        auto f = pc::planar_coulter_matthews(field, alpha);
        if (pc::is_planar(f)) return f;
      }
    pc::fail(pc::errc::not_planar, "no planar x^((3^a+1)/2) found for q = " + std::to_string(q));
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) pc::fail(pc::errc::precondition_failed, "cannot open " + path);
    pc::PlanarFunction f{field, {}};
    std::uint64_t value;
    while (in >> value) {
      if (value >= q) throw pc::parse_error(f.table.size() + 1, "value out of range");
      f.table.push_back({static_cast<std::uint32_t>(value)});
    }
    if (!in.eof()) throw pc::parse_error(f.table.size() + 1, "expected an integer");
    if (f.table.size() != q)
      throw pc::parse_error(f.table.size(), "expected " + std::to_string(q) + " values, got " + std::to_string(f.table.size()));
    return f;
  }
  pc::fail(pc::errc::precondition_failed, "unknown planar function '" + spec + "'");
}

int cmd_construct(Context& ctx, const std::string& method, std::uint32_t q, const std::string& fn,
                  const std::string& out) {
  Timer timer;
  pc::ProjectivePlane plane;
  if (method == "singer") {
    plane = pc::plane_from_cyclic_difference_set(pc::singer_difference_set(q));
  } else if (method == "affine-ds") {
    plane = pc::plane_from_affine_difference_set(pc::bose_affine_difference_set(q));
  } else if (method == "planar") {
    const auto f = planar_from_spec(fn, q);
    if (!pc::is_planar(f)) pc::fail(pc::errc::not_planar, "function is not planar");
    plane = pc::PlanarPlaneAtlas(pc::normalize_planar(f, f.field->p() >= 5)).plane();
  } else {
    pc::fail(pc::errc::precondition_failed, "unknown method " + method);
  }
  const auto report = pc::verify_axioms(plane);
  ctx.manifest.timings["construct"] = timer.seconds();
  ctx.manifest.verdict = {{"axioms_ok", report.ok()}, {"points", plane.num_points()}, {"lines", plane.num_lines()}};
  if (!report.ok()) {
    if (!ctx.json_out) std::cerr << "constructed plane fails the axioms: " << report.violations.front().detail << "\n";
    ctx.emit();
    return exit_unverified;
  }
  pc::io::save_plane(out, plane);
  ctx.manifest.outputs.push_back(out);
  if (!ctx.json_out)
    std::cout << "plane of order " << q << ": " << plane.num_points() << " points, " << plane.num_lines()
              << " lines -> " << out << "\n";
  ctx.emit();
  return exit_ok;
}

pc::Coloring color_by_method(const pc::ProjectivePlane& plane, const std::string& method) {
  if (method == "triples") return pc::color_consecutive_triples(plane);
  if (method == "third-cosets") return pc::color_third_cosets(plane);
  if (method == "affine-ds") return pc::color_affine_ds(plane);
  if (method == "planar-char3") return pc::color_planar_char3(pc::atlas_from_plane(plane));
  if (method == "planar-grid") {
    const auto atlas = pc::atlas_from_plane(plane);
    return pc::color_projective_planar(atlas, pc::color_affine_planar(atlas));
  }
  if (method == "pigeonhole") return pc::color_pigeonhole_small(plane);
  pc::fail(pc::errc::precondition_failed, "unknown coloring method " + method);
}

int cmd_color(Context& ctx, const std::string& plane_path, const std::string& method, const std::string& out,
              bool unchecked) {
  Timer timer;
  const auto plane = pc::io::load_plane(plane_path);
  ctx.manifest.inputs.push_back(plane_path);
  const auto coloring = color_by_method(plane, method);
  ctx.manifest.timings["color"] = timer.seconds();
  int code = exit_ok;
  if (!unchecked) {
    const auto v = pc::verify(plane, coloring);
    ctx.manifest.verdict = verdict_json(v);
    if (!ctx.json_out) print_verdict(v);
    if (!v.ok()) code = exit_unverified;
  } else {
    ctx.manifest.verdict = {{"unchecked", true}, {"num_colors", coloring.num_colors()}};
    if (!ctx.json_out) std::cout << "colors " << coloring.num_colors() << " (unchecked)\n";
  }
  if (code == exit_ok) {
    pc::io::save_coloring(out, coloring);
    ctx.manifest.outputs.push_back(out);
  }
  ctx.emit();
  return code;
}

int cmd_verify(Context& ctx, const std::string& plane_path, const std::string& coloring_path) {
  const auto plane = pc::io::load_plane(plane_path);
  const auto coloring = pc::io::load_coloring(coloring_path);
  ctx.manifest.inputs = {plane_path, coloring_path};
  const auto v = pc::verify(plane, coloring);
  ctx.manifest.verdict = verdict_json(v);
  if (!ctx.json_out) {
    print_verdict(v);
    for (std::size_t i = 0; i < v.rainbow_lines.size() && i < 10; ++i)
      std::cout << "rainbow line " << v.rainbow_lines[i] << "\n";
    std::cout << (v.ok() ? "VERIFIED" : "NOT VERIFIED") << "\n";
  }
  ctx.emit();
  return v.ok() ? exit_ok : exit_unverified;
}

int cmd_bounds(Context& ctx, std::uint32_t q) {
  if (q < 2) pc::fail(pc::errc::out_of_hypothesis, "q must be at least 2");
  json families = json::object();
  const auto r2 = pc::lower_bound_cyclic(q);
  if (!ctx.json_out) {
    std::cout << "q = " << q << "\n"
              << "upper bound floor((q^2+q+1)/3): " << pc::upper_bound(q) << "\n"
              << "cyclic lower bound (q^2+q+1)/6: " << r2.str() << " = " << r2.value() << "\n";
  }
  for (auto f : pc::all_families()) {
    const bool ok = pc::in_hypothesis(q, f);
    families[std::string(pc::to_string(f))] = ok ? json(pc::theorem_bounds(q, f)) : json(nullptr);
    if (!ctx.json_out)
      std::cout << pc::to_string(f) << ": "
                << (ok ? std::to_string(pc::theorem_bounds(q, f)) : std::string("not applicable")) << "\n";
  }
  ctx.manifest.verdict = {{"q", q},
                          {"upper_bound", pc::upper_bound(q)},
                          {"cyclic_lower_bound", {{"num", r2.num}, {"den", r2.den}, {"value", r2.value()}}},
                          {"families", families}};
  ctx.emit();
  return exit_ok;
}

int cmd_randomized(Context& ctx, const std::string& plane_path, const pc::randomized::RandomizedParams& params,
                   const std::string& out, const std::string& stats_path) {
  Timer timer;
  const auto plane = pc::io::load_plane(plane_path);
  ctx.manifest.inputs.push_back(plane_path);
  ctx.manifest.seed = params.seed;
  const auto r = pc::randomized::randomized_balanced_coloring(plane, params);
  ctx.manifest.timings["randomized"] = timer.seconds();
  json attempts = json::array();
  for (const auto& h : r.history)
    attempts.push_back({{"seed", h.seed},
                        {"unresolved_off_anchor", h.unresolved_off_anchor},
                        {"unresolved_through_anchor", h.unresolved_through_anchor},
                        {"failure", h.failure}});
  ctx.manifest.verdict = verdict_json(r.verdict);
  ctx.manifest.verdict["attempts"] = attempts;
  ctx.manifest.verdict["t"] = r.t;
  ctx.manifest.verdict["pigeonhole"] = r.delegated_to_pigeonhole;
  ctx.manifest.verdict["promised_colors"] =
      r.delegated_to_pigeonhole ? json(nullptr) : json(pc::randomized::promised_colors(plane.order(), params.mode));
  if (!stats_path.empty()) {
    std::ofstream s(stats_path);
    if (!s) pc::fail(pc::errc::precondition_failed, "cannot write " + stats_path);
    s << json(ctx.manifest).dump(2) << "\n";
    ctx.manifest.outputs.push_back(stats_path);
  }
  if (!ctx.json_out) {
    print_verdict(r.verdict);
    std::cout << "attempts " << r.attempts << ", seed " << params.seed << "\n";
  }
  if (!r.verdict.ok()) {
    ctx.emit();
    return exit_unverified;
  }
  pc::io::save_coloring(out, r.coloring);
  ctx.manifest.outputs.push_back(out);
  ctx.emit();
  return exit_ok;
}

json certificate_json(const pc::search::ShapeResult& r) {
  const auto& c = r.certificate;
  return {{"shape", r.shape.str()},     {"status", std::string(pc::search::to_string(r.status))},
          {"nodes", c.nodes},           {"leaves", c.leaves},
          {"prunes", c.prunes},         {"root_tasks", c.root_tasks},
          {"workers", c.workers},       {"seconds", c.seconds},
          {"witness", r.witness ? json(*r.witness) : json(nullptr)}};
}

int cmd_search_diffset(Context& ctx, std::uint32_t v, std::uint32_t k, const pc::search::SearchBudget& budget) {
  const auto ds = pc::search::find_difference_set(v, k, budget);
  ctx.manifest.verdict = {{"found", ds.has_value()}, {"elements", ds ? json(ds->elements) : json(nullptr)}};
  if (!ctx.json_out) {
    if (ds) {
      std::cout << "(" << v << "," << k << ",1) difference set:";
      for (auto d : ds->elements) std::cout << " " << d;
      std::cout << "\n";
    } else {
      std::cout << "NotFound\n";
    }
  }
  ctx.emit();
  return exit_ok;
}

int cmd_search_chib(Context& ctx, const std::string& plane_path, const pc::search::SearchBudget& budget) {
  const auto plane = pc::io::load_plane(plane_path);
  ctx.manifest.inputs.push_back(plane_path);
  const auto r = pc::search::brute_force_chi_b(plane, budget);
  json per_k = json::array();
  for (const auto& s : r.per_k) per_k.push_back(certificate_json(s));
  ctx.manifest.verdict = {{"status", std::string(pc::search::to_string(r.status))},
                          {"max_colors", r.max_colors},
                          {"upper_bound", pc::upper_bound(plane.order())},
                          {"per_k", per_k}};
  if (!ctx.json_out) {
    for (const auto& s : r.per_k)
      std::cout << s.shape.str() << ": " << pc::search::to_string(s.status) << " (" << s.certificate.nodes
                << " nodes)\n";
    std::cout << "balanced upper chromatic number: " << r.max_colors
              << (r.status == pc::search::SearchStatus::sat ? "" : " (search incomplete)") << "\n";
  }
  ctx.emit();
  return r.status == pc::search::SearchStatus::budget_exceeded ? exit_unverified : exit_ok;
}

int cmd_search_p5(Context& ctx, const pc::search::SearchBudget& budget) {
  const auto rep = pc::search::p5_nonexistence(budget);
  json shapes = json::array();
  for (const auto& r : rep.claimed) shapes.push_back(certificate_json(r));
  ctx.manifest.verdict = {{"shapes", shapes},
                          {"five_by_five", certificate_json(rep.five_by_five)},
                          {"fixture_five_classes_ok", rep.fixture_five_classes_ok},
                          {"all_unsat", rep.all_unsat()}};
  if (!ctx.json_out) {
    for (const auto& r : rep.claimed) {
      std::cout << r.shape.str() << ": " << pc::search::to_string(r.status) << " (" << r.certificate.nodes
                << " nodes, " << r.certificate.prunes.at("pair_bound") << " pair-bound prunes, "
                << r.certificate.prunes.at("dead_line") << " dead-line prunes)\n";
      if (r.witness) {
        std::cout << "  counterexample (rows top to bottom):\n";
        const auto atlas = pc::p5_atlas();
        for (int y = 4; y >= 0; --y) {
          std::cout << "   ";
          for (std::uint32_t x = 0; x < 5; ++x)
            std::cout << " " << (*r.witness)[atlas.affine_point({x}, {static_cast<std::uint32_t>(y)})] + 1;
          std::cout << "\n";
        }
      }
    }
    std::cout << "5x5: " << pc::search::to_string(rep.five_by_five.status) << ", printed table "
              << (rep.fixture_five_classes_ok ? "verifies" : "does not verify") << "\n";
  }
  ctx.emit();
  if (rep.any_budget_exceeded()) return exit_unverified;
  return rep.all_unsat() ? exit_ok : exit_unverified;
}

int cmd_fixtures(Context& ctx, const std::string& which) {
  std::vector<std::string> rows;
  if (which == "fig2a" || which == "fig2b") {
    rows = pc::grid_pattern(which == "fig2a" ? 7 : 11).printed();
  } else if (which == "fig3a" || which == "fig3b") {
    const auto fx = pc::fixture_p5();
    const auto& t = which == "fig3a" ? fx.almost : fx.five_classes;
    for (int y = 4; y >= 0; --y) {
      std::string line;
      for (std::uint32_t x = 0; x < 5; ++x) line += (x ? " " : "") + std::to_string(t.cell(x, y));
      rows.push_back(line);
    }
    const auto atlas = pc::p5_atlas();
    const auto bad = pc::affine_rainbow_lines(atlas, pc::table_colors(atlas, t));
    ctx.manifest.verdict["rainbow_affine_lines"] = bad;
  } else {
    pc::fail(pc::errc::precondition_failed, "unknown fixture " + which);
  }
  ctx.manifest.verdict["rows"] = rows;
  if (!ctx.json_out)
    for (const auto& r : rows) std::cout << r << "\n";
  ctx.emit();
  return exit_ok;
}

int cmd_report(Context& ctx, std::vector<std::uint32_t> qs, std::uint64_t seed) {
  const auto rows = pc::report_table(qs, seed);
  json out = json::array();
  bool all = true;
  for (const auto& r : rows) {
    out.push_back(pc::to_json(r));
    all = all && r.verified;
  }
  ctx.manifest.verdict = {{"rows", out}, {"all_verified", all}};
  if (!ctx.json_out) {
    std::printf("%5s  %-18s %-32s %8s %8s %6s %9s\n", "q", "family", "method", "bound", "colors", "exact", "verified");
    for (const auto& r : rows)
      std::printf("%5u  %-18s %-32s %8lld %8lld %6s %9s%s%s\n", r.q, std::string(pc::to_string(r.family)).c_str(),
                  r.method.c_str(), static_cast<long long>(r.bound), static_cast<long long>(r.colors),
                  r.exact ? "yes" : "no", r.verified ? "yes" : "NO", r.note.empty() ? "" : "  ", r.note.c_str());
  }
  ctx.emit();
  return all ? exit_ok : exit_unverified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced rainbow-free colorings of finite projective planes"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_flag("--json", ctx.json_out, "Print a JSON run manifest on stdout");

  std::uint32_t p = 0, h = 1, q = 0, v = 0, k = 0;
  std::string method, fn = "square", out, plane_path, coloring_path, stats_path, which;
  bool unchecked = false;
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0;
  pc::randomized::RandomizedParams rparams;
  std::string mode = "thm4";
  std::vector<std::uint32_t> qs;
  std::uint32_t q_from = 0, q_to = 0;
  std::uint64_t seed = 1;

  auto* field_info = app.add_subcommand("field-info", "Print the modulus and a primitive element of GF(p^h)");
  field_info->set_help_flag("--help", "Print this help message and exit");
  field_info->add_option("--p", p, "Characteristic")->required();
  field_info->add_option("--h", h, "Extension degree");

  auto* construct = app.add_subcommand("construct", "Build a projective plane and write it to a file");
  construct->add_option("--method", method, "singer | affine-ds | planar")
      ->required()
      ->check(CLI::IsMember({"singer", "affine-ds", "planar"}));
  construct->add_option("--q", q, "Order")->required();
  construct->add_option("--planar-fn", fn, "square | cm | file:PATH");
  construct->add_option("--out", out, "Plane file")->required();

  auto* color = app.add_subcommand("color", "Color a plane and write the coloring");
  color->add_option("--plane", plane_path, "Plane file")->required();
  color->add_option("--method", method, "triples | third-cosets | affine-ds | planar-char3 | planar-grid | pigeonhole")
      ->required()
      ->check(CLI::IsMember({"triples", "third-cosets", "affine-ds", "planar-char3", "planar-grid", "pigeonhole"}));
  color->add_option("--out", out, "Coloring file")->required();
  color->add_flag("--unchecked", unchecked, "Write the coloring without verifying it");

  auto* verify = app.add_subcommand("verify", "Check that a coloring is balanced and rainbow-free");
  verify->add_option("--plane", plane_path, "Plane file")->required();
  verify->add_option("--coloring", coloring_path, "Coloring file")->required();

  auto* bounds = app.add_subcommand("bounds", "Print the bounds that apply to q");
  bounds->add_option("--q", q, "Order")->required();

  auto* randomized = app.add_subcommand("randomized", "Las Vegas coloring with classes of size 10/11 or 11/12");
  randomized->add_option("--plane", plane_path, "Plane file")->required();
  randomized->add_option("--c", rparams.c, "Fraction of lines through the anchor")->capture_default_str();
  randomized->add_option("--mode", mode, "thm4 | remark")->check(CLI::IsMember({"thm4", "remark"}))->capture_default_str();
  randomized->add_option("--seed", rparams.seed, "RNG seed")->capture_default_str();
  randomized->add_option("--retries", rparams.max_retries, "Attempts before giving up")->capture_default_str();
  randomized->add_option("--anchor", rparams.anchor, "Anchor point Q")->capture_default_str();
  randomized->add_option("--out", out, "Coloring file")->required();
  randomized->add_option("--stats", stats_path, "Write attempt statistics as JSON");

  auto* search = app.add_subcommand("search", "Exhaustive searches");
  search->require_subcommand(1);
  search->fallthrough();
  search->add_option("--budget-nodes", budget_nodes, "Node limit (0 = none)");
  search->add_option("--budget-secs", budget_secs, "Time limit in seconds (0 = none)");
  auto* diffset = search->add_subcommand("diffset", "First planar difference set in Z_v");
  diffset->add_option("--v", v, "Group order")->required();
  diffset->add_option("--k", k, "Set size")->required();
  auto* chib = search->add_subcommand("chib", "Exact balanced upper chromatic number of a small plane");
  chib->add_option("--plane", plane_path, "Plane file")->required();
  auto* p5 = search->add_subcommand("p5", "Colorings of AG(2,5) with a class of size 4");

  auto* fixtures = app.add_subcommand("fixtures", "Print the reference tables");
  fixtures->add_option("--which", which, "fig2a | fig2b | fig3a | fig3b")
      ->required()
      ->check(CLI::IsMember({"fig2a", "fig2b", "fig3a", "fig3b"}));

  auto* report = app.add_subcommand("report", "Construct, color and verify every applicable family per q");
  report->add_option("--q", qs, "Orders (repeatable)");
  report->add_option("--from", q_from, "First order of a range");
  report->add_option("--to", q_to, "Last order of a range");
  report->add_option("--seed", seed, "Seed for randomized rows")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  Timer total;
  try {
    int code = exit_other;
    auto& m = ctx.manifest;
    if (*field_info) {
      m.command = "field-info";
      m.parameters = {{"p", std::to_string(p)}, {"h", std::to_string(h)}};
      code = cmd_field_info(ctx, p, h);
    } else if (*construct) {
      m.command = "construct";
      m.parameters = {{"method", method}, {"q", std::to_string(q)}, {"planar_fn", fn}};
      code = cmd_construct(ctx, method, q, fn, out);
    } else if (*color) {
      m.command = "color";
      m.parameters = {{"method", method}, {"unchecked", unchecked ? "true" : "false"}};
      code = cmd_color(ctx, plane_path, method, out, unchecked);
    } else if (*verify) {
      m.command = "verify";
      code = cmd_verify(ctx, plane_path, coloring_path);
    } else if (*bounds) {
      m.command = "bounds";
      m.parameters = {{"q", std::to_string(q)}};
      code = cmd_bounds(ctx, q);
    } else if (*randomized) {
      rparams.mode = mode == "thm4" ? pc::randomized::Mode::thm4 : pc::randomized::Mode::remark;
      m.command = "randomized";
      m.parameters = {{"c", fmt_double(rparams.c)},
                      {"mode", mode},
                      {"retries", std::to_string(rparams.max_retries)},
                      {"anchor", std::to_string(rparams.anchor)}};
      code = cmd_randomized(ctx, plane_path, rparams, out, stats_path);
    } else if (*search) {
      const pc::search::SearchBudget budget{budget_nodes, budget_secs};
      m.parameters = {{"budget_nodes", std::to_string(budget_nodes)}, {"budget_secs", fmt_double(budget_secs)}};
      if (*diffset) {
        m.command = "search diffset";
        m.parameters["v"] = std::to_string(v);
        m.parameters["k"] = std::to_string(k);
        code = cmd_search_diffset(ctx, v, k, budget);
      } else if (*chib) {
        m.command = "search chib";
        code = cmd_search_chib(ctx, plane_path, budget);
      } else if (*p5) {
        m.command = "search p5";
        code = cmd_search_p5(ctx, budget);
      }
    } else if (*fixtures) {
      m.command = "fixtures";
      m.parameters = {{"which", which}};
      code = cmd_fixtures(ctx, which);
    } else if (*report) {
      if (q_to >= q_from && q_to > 0)
        for (std::uint32_t x = std::max<std::uint32_t>(2, q_from); x <= q_to; ++x) qs.push_back(x);
      if (qs.empty())
        for (std::uint32_t x = 2; x <= 32; ++x) qs.push_back(x);
      m.command = "report";
      m.seed = seed;
      code = cmd_report(ctx, qs, seed);
    }
    return code;
  } catch (const pc::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_other;
  } catch (const pc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_other;
  }
}
