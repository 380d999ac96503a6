#ifndef LIESURF_IO_HPP
#define LIESURF_IO_HPP

// JSON and CSV serialization of determining systems, surfaces and curvature
// reports. Floats use nlohmann's shortest round-trip formatting and keys are
// emitted in a fixed order, so identical inputs give byte-identical files.

#include <string>

#include <json.hpp>

#include "liesurf/expr.hpp"
#include "liesurf/geometry.hpp"
#include "liesurf/symmetry.hpp"

namespace liesurf::io {

using Json = nlohmann::ordered_json;

/// {op: add|mul|pow|const|symbol|sin|cos, ...}
Json expression_tree(const Expression& e);

Json equation_list(const std::vector<DeterminingEquation>& equations);

/// {raw: [...], reduced: {forced_zero: [...], equations: [...]}}
Json determining_system_json(const DeterminingSystem& raw, const ReducedSystem& reduced);

Json vector_field_json(const VectorField& v);

/// Grid values with NaN written as null.
Json grid_json(const geom::Grid2& g);

/// Mesh document; `report` adds u, K_intrinsic and K_extrinsic grids.
Json surface_json(const geom::TranslationSurface& surf, const geom::CurvatureReport* report = nullptr);

/// Throws InputError on malformed documents.
geom::TranslationSurface surface_from_json(const Json& doc);

Json report_json(const geom::CurvatureReport& report);

/// Header s,t,f0,f1,f2,f3,u,K_int,K_ext; f3 is blank below four dimensions.
std::string surface_csv(const geom::TranslationSurface& surf, const geom::CurvatureReport& report);

/// Pretty documents are indented by two spaces; compact ones are one line.
std::string dump(const Json& doc, bool pretty = true);

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace liesurf::io

#endif  // LIESURF_IO_HPP
