#pragma once

// Shared JSON encoding. Matrices: {"rows": n, "cols": n, "re": [...], "im": [...]},
// row-major. Complex vectors: {"re": [...], "im": [...]} or a plain array of reals.

#include <json.hpp>

#include "ybmaps/matrix_core.hpp"

namespace ybmaps {

using Json = nlohmann::json;

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json complex_to_json(Complex z);

}  // namespace ybmaps
