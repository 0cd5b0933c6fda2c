#pragma once

// JSON forms shared by the CLI: integer matrices with decimal-string entries,
// model-tagged points, and SPD matrices.

#include "hyperword/exact_matrix.hpp"
#include "hyperword/models.hpp"
#include "hyperword/spd.hpp"

#include "json.hpp"

namespace hyperword {

using json = nlohmann::json;

// {"dim": d, "entries": [["-12", "5"], ...]}. Integers are also accepted on input.
json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const json& j);

enum class Model { H, D, B, U };
Model parse_model(const std::string& tag);
std::string model_tag(Model m);

// Converts coordinates between models through the hyperboloid.
Vec<double> convert_point(Model from, Model to, const Vec<double>& coords);
// Throws std::domain_error when coords are not a point of the model.
void validate_point(Model model, const Vec<double>& coords);

// {"model": "U", "coords": [0, 2]}
json point_to_json(Model model, const Vec<double>& coords);
Vec<double> coords_from_json(const json& j);

// {"dim": n, "entries": [[...], ...]} with float entries.
json spd_to_json(const SpdPoint<double>& s);
SpdPoint<double> spd_from_json(const json& j);

}  // namespace hyperword
