#include "griddraw/io.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace griddraw {

Json coloring_to_json(const Coloring& c) {
  Json j;
  j["dim"] = c.grid().dim;
  j["half_width"] = c.grid().half_width;
  if (c.grid().exclude_origin) j["exclude_origin"] = true;
  Json classes = Json::array();
  for (const auto& pts : c.classes()) {
    Json cls = Json::array();
    for (Index p = 0; p < pts.cols(); ++p) {
      Json point = Json::array();
      for (Index k = 0; k < pts.rows(); ++k) point.push_back(pts(k, p));
      cls.push_back(std::move(point));
    }
    classes.push_back(std::move(cls));
  }
  j["classes"] = std::move(classes);
  return j;
}

Coloring coloring_from_json(const Json& j) {
  try {
    GridSpec grid;
    grid.dim = j.at("dim").get<int>();
    grid.half_width = j.at("half_width").get<int>();
    grid.exclude_origin = j.value("exclude_origin", false);
    std::vector<PointSet> classes;
    for (const auto& cls : j.at("classes")) {
      PointSet pts(grid.dim, static_cast<Index>(cls.size()));
      for (std::size_t p = 0; p < cls.size(); ++p) {
        const auto& point = cls[p];
        if (!point.is_array() || static_cast<int>(point.size()) != grid.dim) {
          throw std::invalid_argument("point has the wrong dimension");
        }
        for (int k = 0; k < grid.dim; ++k) pts(k, static_cast<Index>(p)) = point[static_cast<std::size_t>(k)].get<std::int64_t>();
      }
      classes.push_back(std::move(pts));
    }
    return Coloring::from_classes(grid, classes);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed coloring document: ") + e.what());
  }
}

Json line_drawing_to_json(const LineDrawing& d) {
  Json j;
  j["vertex_count"] = d.graph.vertex_count();
  Json edges = Json::array();
  for (const auto& [u, v] : d.graph.edges()) edges.push_back({u + 1, v + 1});
  j["edges"] = std::move(edges);
  j["positions"] = d.positions;
  if (!d.graph.label().empty()) j["label"] = d.graph.label();
  return j;
}

LineDrawing line_drawing_from_json(const Json& j) {
  try {
    const int n = j.at("vertex_count").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    LineDrawing d{Graph(n, std::move(edges), j.value("label", std::string{})),
                  j.at("positions").get<std::vector<std::int64_t>>()};
    d.validate();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed line drawing document: ") + e.what());
  }
}

Json to_json(const RunRecord& r) {
  return Json{{"command", r.command},
              {"config", r.config},
              {"instance", r.instance},
              {"lambda", to_string(r.lambda)},
              {"witness", r.witness},
              {"wall_seconds", r.wall_seconds},
              {"version", r.version}};
}

RunRecord run_record_from_json(const Json& j) {
  try {
    RunRecord r;
    r.command = j.at("command").get<std::string>();
    r.config = j.value("config", Json::object());
    r.instance = j.value("instance", Json::object());
    r.lambda = parse_rational(j.at("lambda").get<std::string>());
    r.witness = j.at("witness");
    r.wall_seconds = j.value("wall_seconds", 0.0);
    r.version = j.value("version", std::string{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed run record: ") + e.what());
  }
}

Rational reevaluate(const RunRecord& r) {
  if (r.witness.contains("classes")) return lambda_raw(coloring_from_json(r.witness));
  if (r.witness.contains("positions")) return lambda_of_line_drawing(line_drawing_from_json(r.witness));
  throw std::invalid_argument("run record witness is neither a coloring nor a line drawing");
}

namespace {

constexpr std::array<std::string_view, 12> palette = {
    "#e6194b", "#4363d8", "#3cb44b", "#ffe119", "#911eb4", "#f58231",
    "#46f0f0", "#f032e6", "#bcf60c", "#008080", "#9a6324", "#800000",
};

}  // namespace

void render_coloring_svg(const Coloring& c, std::ostream& out) {
  if (c.grid().dim != 2) throw std::invalid_argument("SVG rendering needs a 2-D grid");
  const auto& geo = c.geometry();
  const int m = c.grid().half_width;
  const int side = 2 * m + 1;
  constexpr int cell = 10;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side * cell << "\" height=\"" << side * cell
      << "\" viewBox=\"0 0 " << side << ' ' << side << "\" shape-rendering=\"crispEdges\">\n";
  out << "<rect width=\"" << side << "\" height=\"" << side << "\" fill=\"#ffffff\"/>\n";
  for (Index p = 0; p < geo.size(); ++p) {
    // first coordinate is x, second grows upwards
    const auto x = geo.points(0, p) + m;
    const auto y = m - geo.points(1, p);
    const auto color = palette[static_cast<std::size_t>(c.label(p)) % palette.size()];
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"1\" height=\"1\" fill=\"" << color << "\"/>\n";
  }
  out << "</svg>\n";
}

std::string coloring_svg(const Coloring& c) {
  std::ostringstream ss;
  render_coloring_svg(c, ss);
  return ss.str();
}

}  // namespace griddraw
