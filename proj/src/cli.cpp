#include "griddraw/cli.hpp"

#include "griddraw/acceptance.hpp"
#include "griddraw/brute.hpp"
#include "griddraw/cache.hpp"
#include "griddraw/int_connectivity.hpp"
#include "griddraw/io.hpp"
#include "griddraw/max_anneal.hpp"
#include "griddraw/min_construct.hpp"
#include "griddraw/spectral.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace griddraw {

namespace {

struct Common {
  int dim = 1;
  int half_width = 0;
  bool exclude_origin = false;
  std::string classes;
  std::string graph;
  std::uint64_t seed = 0;
  unsigned chains = 4;
  unsigned threads = 0;
  std::string json;
  std::string svg;
  /// 0 picks the per-command default.
  std::uint64_t limit = 0;
  std::string cache;
  std::string input;

  [[nodiscard]] std::uint64_t coloring_limit() const { return limit ? limit : 10'000'000; }
  [[nodiscard]] std::uint64_t line_limit() const { return limit ? limit : 100'000'000; }
};

class BadArguments : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

PartitionSpec parse_classes(const std::string& text) {
  if (text.empty()) throw BadArguments("--classes is required");
  std::vector<int> sizes;
  std::istringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw BadArguments("bad class size '" + tok + "'");
    }
    if (used != tok.size() || v < 1) throw BadArguments("bad class size '" + tok + "'");
    sizes.push_back(v);
  }
  std::sort(sizes.begin(), sizes.end());
  return PartitionSpec(sizes);
}

GridSpec grid_of(const Common& c) { return GridSpec{c.dim, c.half_width, c.exclude_origin}; }

Graph graph_of(const Common& c) {
  if (c.graph.empty()) throw BadArguments("--graph is required");
  return graph_from_spec(c.graph);
}

Json read_json_input(const std::string& path) {
  if (path.empty()) throw BadArguments("--input is required");
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw BadArguments("cannot read " + path);
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw BadArguments(std::string("invalid JSON: ") + e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

/// JSON goes to --json when given; otherwise a short human-readable summary.
void emit(const Common& c, const Json& j, const std::string& summary, std::ostream& out) {
  if (!c.json.empty()) {
    write_text(c.json, j.dump(2) + "\n", out);
  } else {
    out << summary << '\n';
  }
}

void maybe_svg(const Common& c, const Coloring& col, std::ostream& out) {
  if (!c.svg.empty()) write_text(c.svg, coloring_svg(col), out);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void record_in_cache(const Common& c, const CacheKey& key, RunRecord rec, Json& j, std::ostream& err) {
  if (c.cache.empty()) return;
  ResultCache cache(c.cache, &err);
  const auto best = cache.update(key, rec);
  j["cache_best_lambda"] = to_string(best.lambda);
}

Json instance_json(const Common& c, const PartitionSpec& spec) {
  return Json{{"dim", c.dim}, {"half_width", c.half_width}, {"exclude_origin", c.exclude_origin}, {"classes", spec.sizes()}};
}

std::string lambda_summary(const Rational& q) {
  std::ostringstream ss;
  ss << to_string(q) << " (" << to_double(q) << ")";
  return ss.str();
}

int cmd_min_draw(const Common& c, const std::string& method, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = parse_classes(c.classes);
  const auto grid = grid_of(c);
  std::optional<MinResult> res;
  if (method == "ring") {
    res = ring_construction(spec, grid);
  } else if (method == "zero-sum") {
    res = zero_sum_construction(spec, grid);
  } else if (method == "exact") {
    res = exact_min_search(spec, grid, c.coloring_limit(), c.threads);
  } else if (spec.multinomial() <= c.coloring_limit()) {
    res = exact_min_search(spec, grid, c.coloring_limit(), c.threads);
  } else if (spec.all_equal()) {
    res = zero_sum_construction(spec, grid);
  } else {
    res = ring_construction(spec, grid);
  }
  Json j{{"command", "min-draw"},
         {"method", to_string(res->method)},
         {"lambda", to_string(res->lambda)},
         {"energy", edge_energy_raw(res->coloring)},
         {"second_moment", res->coloring.geometry().second_moment},
         {"lower_bound", spec.total() - spec.largest()},
         {"certified", res->certified},
         {"coloring", coloring_to_json(res->coloring)}};
  RunRecord rec{"min-draw", Json{{"method", method}, {"limit", c.coloring_limit()}}, instance_json(c, spec), res->lambda,
                j["coloring"], seconds_since(t0)};
  record_in_cache(c, coloring_key(grid, spec, Objective::minimize), rec, j, err);
  maybe_svg(c, res->coloring, out);
  emit(c, j, "lambda " + lambda_summary(res->lambda) + " via " + std::string(to_string(res->method)) +
                 (res->certified ? ", certified optimal" : ""),
       out);
  return exit_ok;
}

int cmd_max_draw(const Common& c, const std::string& method, const AnnealConfig& base, int refine, std::ostream& out,
                 std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = parse_classes(c.classes);
  const auto grid = grid_of(c);
  AnnealConfig cfg = base;
  cfg.seed = c.seed;
  cfg.chains = c.chains;
  cfg.threads = c.threads;
  Json config{{"method", method}};
  std::optional<Coloring> col;
  if (method == "exact" || (method == "auto" && spec.multinomial() <= c.coloring_limit())) {
    col = exact_max_search(spec, grid, c.coloring_limit(), c.threads).coloring;
    config["method"] = "exact";
    config["limit"] = c.coloring_limit();
  } else if (method == "anneal" || method == "auto") {
    col = anneal_max(spec, grid, cfg).coloring;
    config["method"] = "anneal";
    config["initial_temperature"] = cfg.initial_temperature;
    config["cooling_factor"] = cfg.cooling_factor;
    config["steps_per_temperature"] = cfg.steps_per_temperature;
    config["minimum_temperature"] = cfg.minimum_temperature;
    config["chains"] = cfg.chains;
    config["seed"] = cfg.seed;
  } else {
    throw BadArguments("unknown method " + method);
  }
  if (refine > 0) {
    col = lloyd_refine(*col, refine);
    config["refine_rounds"] = refine;
  }
  const auto lambda = lambda_raw(*col);
  const auto rep = voronoi_check(*col);
  Json j{{"command", "max-draw"},
         {"method", config["method"]},
         {"lambda", to_string(lambda)},
         {"energy", edge_energy_raw(*col)},
         {"second_moment", col->geometry().second_moment},
         {"upper_bound", spec.total()},
         {"voronoi_violations", rep.violations.size()},
         {"voronoi_weights", to_string(rep.rule)},
         {"scatter", rep.scatter},
         {"config", config},
         {"coloring", coloring_to_json(*col)}};
  RunRecord rec{"max-draw", config, instance_json(c, spec), lambda, j["coloring"], seconds_since(t0)};
  record_in_cache(c, coloring_key(grid, spec, Objective::maximize), rec, j, err);
  maybe_svg(c, *col, out);
  emit(c, j, "lambda " + lambda_summary(lambda) + ", " + std::to_string(rep.violations.size()) + " Voronoi violations",
       out);
  return exit_ok;
}

int cmd_lambda(const Common& c, std::ostream& out) {
  const auto col = coloring_from_json(read_json_input(c.input));
  const auto raw = lambda_raw(col);
  const auto& p = col.partition();
  Json j{{"command", "lambda"},
         {"lambda", to_string(raw)},
         {"lambda_closed_form", to_string(lambda_closed_form(col))},
         {"energy", edge_energy_raw(col)},
         {"second_moment", col.geometry().second_moment},
         {"lower_bound", p.total() - p.largest()},
         {"upper_bound", p.total()}};
  emit(c, j, "lambda " + lambda_summary(raw), out);
  return exit_ok;
}

int cmd_spectrum(const Common& c, std::ostream& out) {
  Json j{{"command", "spectrum"}};
  std::ostringstream summary;
  if (!c.classes.empty()) {
    const auto spec = parse_classes(c.classes);
    const auto s = multipartite_spectrum(spec);
    // the closed form is integral
    std::vector<std::int64_t> ev;
    for (Index i = 0; i < s.size(); ++i) ev.push_back(std::llround(s.eigenvalues(i)));
    j["method"] = "closed_form";
    j["eigenvalues"] = ev;
    for (const auto v : ev) summary << v << ' ';
  } else {
    const auto s = graph_spectrum(graph_of(c));
    std::vector<double> ev(s.eigenvalues.begin(), s.eigenvalues.end());
    j["method"] = "jacobi";
    j["eigenvalues"] = ev;
    for (const auto v : ev) summary << v << ' ';
  }
  emit(c, j, summary.str(), out);
  return exit_ok;
}

int cmd_intconn(const Common& c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = graph_of(c);
  const auto res = lambda2_int(g, c.line_limit(), c.threads);
  const double l2 = graph_spectrum(g).algebraic_connectivity();
  Json j{{"command", "intconn"},
         {"lambda2_int", to_string(res.value)},
         {"energy", res.energy},
         {"second_moment", res.second_moment},
         {"lambda2", l2},
         {"equals_lambda2", std::abs(to_double(res.value) - l2) <= 1e-8},
         {"drawing", line_drawing_to_json(res.witness)}};
  RunRecord rec{"intconn", Json{{"limit", c.line_limit()}}, Json{{"graph", c.graph}}, res.value, j["drawing"],
                seconds_since(t0)};
  record_in_cache(c, graph_key(g), rec, j, err);
  emit(c, j, "lambda2_int " + lambda_summary(res.value) + ", lambda2 " + std::to_string(l2), out);
  return exit_ok;
}

int cmd_minpsum(const Common& c, const std::string& p_text, std::ostream& out) {
  double p = 0.0;
  if (p_text == "inf" || p_text == "infinity") {
    p = std::numeric_limits<double>::infinity();
  } else {
    try {
      p = std::stod(p_text);
    } catch (const std::exception&) {
      throw BadArguments("bad p '" + p_text + "'");
    }
    if (!(p > 0.0)) throw BadArguments("p must be positive");
  }
  const auto res = min_p_sum(graph_of(c), p, c.line_limit(), c.threads);
  Json j{{"command", "minpsum"}, {"p", p_text}, {"value", res.value}, {"mapping", res.mapping}};
  if (res.sigma2_squared) j["sigma2_squared"] = *res.sigma2_squared;
  if (res.bandwidth) j["bandwidth"] = *res.bandwidth;
  emit(c, j, "sigma_" + p_text + " = " + std::to_string(res.value), out);
  return exit_ok;
}

int cmd_brute(const Common& c, std::ostream& out) {
  EnumerationOptions opts;
  opts.threads = c.threads;
  opts.witness_cap = 1;
  Json j{{"command", "brute"}};
  std::int64_t s = 0;
  std::uint64_t visited = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  if (!c.classes.empty()) {
    const auto spec = parse_classes(c.classes);
    opts.limit = c.coloring_limit();
    const auto stats = enumerate_coloring_energies(spec, grid_of(c), opts);
    s = grid_second_moment(grid_of(c));
    j["kind"] = "colorings";
    j["argmin_count"] = stats.argmin_count;
    j["argmax_count"] = stats.argmax_count;
    visited = stats.visited;
    lo = stats.min_metric;
    hi = stats.max_metric;
  } else {
    const auto g = graph_of(c);
    const auto pts = line_points(g.vertex_count());
    opts.limit = c.line_limit();
    const auto stats = enumerate_bijections(
        g, pts, [&g](std::span<const std::int64_t> pos) { return line_energy(g, pos); }, opts);
    for (const auto x : pts) s += x * x;
    j["kind"] = "bijections";
    j["argmin_count"] = stats.argmin_count;
    j["argmax_count"] = stats.argmax_count;
    visited = stats.visited;
    lo = stats.min_metric;
    hi = stats.max_metric;
  }
  if (s == 0) throw std::domain_error("degenerate instance: S = 0");
  j["visited"] = visited;
  j["second_moment"] = s;
  j["min_lambda"] = to_string(Rational(lo, s));
  j["max_lambda"] = to_string(Rational(hi, s));
  emit(c, j,
       std::to_string(visited) + " states, lambda in [" + to_string(Rational(lo, s)) + ", " +
           to_string(Rational(hi, s)) + "]",
       out);
  return exit_ok;
}

int cmd_cartesian(const Common& c, const std::string& g_spec, const std::string& h_spec, const std::string& layout,
                  std::ostream& out) {
  const auto g = lambda2_int(graph_from_spec(g_spec), c.line_limit(), c.threads);
  const auto h = lambda2_int(graph_from_spec(h_spec), c.line_limit(), c.threads);
  ProductLayout lay = ProductLayout::g_blocks;
  if (layout == "h-blocks") {
    lay = ProductLayout::h_blocks;
  } else if (layout != "g-blocks") {
    throw BadArguments("layout must be g-blocks or h-blocks");
  }
  const auto d = cartesian_drawing(g.witness, h.witness, lay);
  Json j{{"command", "cartesian-draw"},
         {"lambda", to_string(d.lambda)},
         {"bound", to_string(d.bound)},
         {"within_bound", d.lambda <= d.bound},
         {"lambda2_int_g", to_string(g.value)},
         {"lambda2_int_h", to_string(h.value)},
         {"drawing", line_drawing_to_json(d.drawing)}};
  emit(c, j, "lambda " + lambda_summary(d.lambda) + ", bound " + lambda_summary(d.bound), out);
  return exit_ok;
}

int cmd_hypercube(const Common& c, int k, std::ostream& out) {
  const auto d = hypercube_drawing(k);
  const auto l = lambda_of_line_drawing(d);
  Json j{{"command", "hypercube-draw"}, {"k", k}, {"lambda", to_string(l)}, {"drawing", line_drawing_to_json(d)}};
  emit(c, j, "lambda " + lambda_summary(l), out);
  return exit_ok;
}

int cmd_render(const Common& c, std::ostream& out) {
  if (c.svg.empty()) throw BadArguments("--svg is required");
  const auto col = coloring_from_json(read_json_input(c.input));
  write_text(c.svg, coloring_svg(col), out);
  return exit_ok;
}

int cmd_verify(const Common& c, bool figures, const std::vector<int>& only, const std::string& svg_dir,
               std::ostream& out) {
  AcceptanceOptions opts;
  opts.figures = figures;
  opts.only = only;
  opts.threads = c.threads;
  if (c.seed != 0) opts.seed = c.seed;
  if (!svg_dir.empty()) opts.svg_dir = svg_dir;
  for (const int id : only)
    if (id < 1 || id > criterion_count) throw BadArguments("no acceptance criterion " + std::to_string(id));
  const bool to_stdout = c.json == "-";
  const auto results = run_acceptance(opts, to_stdout ? nullptr : &out);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                       {"budget_seconds", r.budget_seconds}, {"detail", r.detail}});
  }
  if (!c.json.empty()) write_text(c.json, Json{{"command", "verify-paper"}, {"criteria", arr}}.dump(2) + "\n", out);
  return all ? exit_ok : exit_infeasible;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal grid drawings of complete multipartite graphs and integer algebraic connectivity"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Common c;

  auto add_grid = [&](CLI::App* s) {
    s->add_option("--dim", c.dim, "grid dimension d")->check(CLI::PositiveNumber);
    s->add_option("--half-width", c.half_width, "grid half-width M")->check(CLI::NonNegativeNumber);
    s->add_flag("--exclude-origin", c.exclude_origin, "drop the origin from the grid");
    s->add_option("--classes", c.classes, "class sizes n1,n2,...");
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--json", c.json, "write JSON output to a file, '-' for stdout");
    s->add_option("--limit", c.limit, "state limit for exhaustive searches (default 1e7, 1e8 for line drawings)");
    s->add_option("--threads", c.threads, "worker threads, 0 for all cores");
  };

  auto* min_draw = app.add_subcommand("min-draw", "drawing that minimizes lambda");
  std::string min_method = "auto";
  add_grid(min_draw);
  add_common(min_draw);
  min_draw->add_option("--method", min_method, "auto, ring, zero-sum or exact")
      ->check(CLI::IsMember({"auto", "ring", "zero-sum", "exact"}));
  min_draw->add_option("--svg", c.svg, "SVG output for d = 2");
  min_draw->add_option("--cache", c.cache, "JSON-lines best-result cache");

  auto* max_draw = app.add_subcommand("max-draw", "drawing that maximizes lambda");
  std::string max_method = "anneal";
  AnnealConfig anneal_cfg;
  int refine = 0;
  add_grid(max_draw);
  add_common(max_draw);
  max_draw->add_option("--method", max_method, "anneal, exact or auto")
      ->check(CLI::IsMember({"anneal", "exact", "auto"}));
  max_draw->add_option("--seed", c.seed, "random seed");
  max_draw->add_option("--chains", c.chains, "independent annealing chains")->check(CLI::PositiveNumber);
  max_draw->add_option("--t0", anneal_cfg.initial_temperature, "initial temperature");
  max_draw->add_option("--cooling", anneal_cfg.cooling_factor, "geometric cooling factor");
  max_draw->add_option("--steps", anneal_cfg.steps_per_temperature, "steps per temperature, 0 for 200N");
  max_draw->add_option("--tmin", anneal_cfg.minimum_temperature, "final temperature");
  max_draw->add_option("--refine", refine, "Lloyd refinement rounds after annealing")->check(CLI::NonNegativeNumber);
  max_draw->add_option("--svg", c.svg, "SVG output for d = 2");
  max_draw->add_option("--cache", c.cache, "JSON-lines best-result cache");

  auto* lambda = app.add_subcommand("lambda", "evaluate lambda of a coloring document");
  lambda->add_option("--input", c.input, "coloring JSON, '-' for stdin")->required();
  lambda->add_option("--json", c.json, "write JSON output to a file, '-' for stdout");

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum");
  spectrum->add_option("--classes", c.classes, "class sizes of a complete multipartite graph");
  spectrum->add_option("--graph", c.graph, "edge-list file or generator spec");
  spectrum->add_option("--json", c.json, "write JSON output to a file, '-' for stdout");

  auto* intconn = app.add_subcommand("intconn", "integer algebraic connectivity by exhaustive search");
  intconn->add_option("--graph", c.graph, "edge-list file or generator spec")->required();
  intconn->add_option("--cache", c.cache, "JSON-lines best-result cache");
  add_common(intconn);

  auto* minpsum = app.add_subcommand("minpsum", "minimum p-sum over orderings");
  std::string p_text = "2";
  minpsum->add_option("--graph", c.graph, "edge-list file or generator spec")->required();
  minpsum->add_option("--p", p_text, "exponent, or inf for the bandwidth");
  add_common(minpsum);

  auto* brute = app.add_subcommand("brute", "exhaustive enumeration statistics");
  add_grid(brute);
  add_common(brute);
  brute->add_option("--graph", c.graph, "enumerate line drawings of a graph instead");

  auto* cart = app.add_subcommand("cartesian-draw", "block drawing of a Cartesian product");
  std::string g_spec;
  std::string h_spec;
  std::string layout = "g-blocks";
  cart->add_option("--factor-g", g_spec, "first factor G (graph spec)")->required();
  cart->add_option("--factor-h", h_spec, "second factor H (graph spec)")->required();
  cart->add_option("--layout", layout, "g-blocks or h-blocks");
  add_common(cart);

  auto* hyper = app.add_subcommand("hypercube-draw", "recursive drawing of the hypercube");
  int k = 3;
  hyper->add_option("--k", k, "dimension of the hypercube, 1..4")->check(CLI::Range(1, 4));
  hyper->add_option("--json", c.json, "write JSON output to a file, '-' for stdout");

  auto* render = app.add_subcommand("render", "SVG of a 2-D coloring document");
  render->add_option("--input", c.input, "coloring JSON, '-' for stdin")->required();
  render->add_option("--svg", c.svg, "output file, '-' for stdout")->required();

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite");
  bool figures = false;
  std::vector<int> only;
  std::string svg_dir;
  verify->add_flag("--figures", figures, "include the large-grid annealing criterion");
  verify->add_option("--only", only, "criterion ids")->delimiter(',');
  verify->add_option("--svg-dir", svg_dir, "where the large-grid SVGs go");
  verify->add_option("--seed", c.seed, "seed for the randomized criteria");
  verify->add_option("--json", c.json, "write JSON output to a file, '-' for stdout");
  verify->add_option("--threads", c.threads, "worker threads, 0 for all cores");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_arguments;
  }

  try {
    if (*min_draw) return cmd_min_draw(c, min_method, out, err);
    if (*max_draw) return cmd_max_draw(c, max_method, anneal_cfg, refine, out, err);
    if (*lambda) return cmd_lambda(c, out);
    if (*spectrum) return cmd_spectrum(c, out);
    if (*intconn) return cmd_intconn(c, out, err);
    if (*minpsum) return cmd_minpsum(c, p_text, out);
    if (*brute) return cmd_brute(c, out);
    if (*cart) return cmd_cartesian(c, g_spec, h_spec, layout, out);
    if (*hyper) return cmd_hypercube(c, k, out);
    if (*render) return cmd_render(c, out);
    if (*verify) return cmd_verify(c, figures, only, svg_dir, out);
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return exit_infeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_arguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_infeasible;
  }
  return exit_bad_arguments;
}

}  // namespace griddraw
