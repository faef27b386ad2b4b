#pragma once

#include "griddraw/coloring.hpp"
#include "griddraw/int_connectivity.hpp"
#include "griddraw/rational.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace griddraw {

using Json = nlohmann::json;

inline constexpr std::string_view artifact_version = "0.1.0";

/// {"dim", "half_width", "exclude_origin" (only when set), "classes": [[[x1..xd], ...], ...]},
/// classes in size order, points within a class in canonical order.
Json coloring_to_json(const Coloring& c);
/// Throws std::invalid_argument for a malformed document or a coloring that does not cover the grid.
Coloring coloring_from_json(const Json& j);

/// {"vertex_count", "edges": [[u, v], ...] (1-based), "positions": [...] by vertex}.
Json line_drawing_to_json(const LineDrawing& d);
LineDrawing line_drawing_from_json(const Json& j);

/// Reproducible description of one solver run.
struct RunRecord {
  std::string command;
  Json config = Json::object();
  Json instance = Json::object();
  Rational lambda;
  /// A coloring document or a line-drawing document.
  Json witness;
  double wall_seconds = 0.0;
  std::string version{artifact_version};
};

Json to_json(const RunRecord& r);
RunRecord run_record_from_json(const Json& j);

/// Recomputes λ from the witness. Colorings carry a "classes" key, line drawings a "positions" key.
Rational reevaluate(const RunRecord& r);

/// One unit square per grid point, filled with the class color from a fixed
/// 12-color palette. Output depends only on the coloring. Throws std::invalid_argument unless d = 2.
void render_coloring_svg(const Coloring& c, std::ostream& out);
std::string coloring_svg(const Coloring& c);

}  // namespace griddraw
