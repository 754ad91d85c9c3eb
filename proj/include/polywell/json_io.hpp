#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polywell/certify.hpp"
#include "polywell/decompose.hpp"
#include "polywell/energy.hpp"
#include "polywell/fem.hpp"
#include "polywell/identities.hpp"
#include "polywell/matrix.hpp"
#include "polywell/minimize.hpp"

namespace polywell::io {

using json = nlohmann::ordered_json;

// Matrix wire form: {"n": 2, "entries": [[...],[...]]}, row-major.
json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& where);

// DoubleWell wire form: {"X1": <Matrix>, "X2": <Matrix>}.
json to_json(const DoubleWell& dw);
DoubleWell wells_from_json(const nlohmann::json& j);

// Certificate wire form:
//   {"verdict": "polyconvex", "a": ..., "Q": <Matrix>, "B": <Matrix>,
//    "sigma_spread": ...}
// or
//   {"verdict": "not_polyconvex", "u": [...], "v": [...], "value": ...,
//    "sigma": [...]}
// with "witness": "none-at-zero" replacing u/v/value when the zero-point
// construction yields no witness.
json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

// Certificate fields plus "null_coeff".
json to_json(const Decomposition& dec, const Certificate& cert);

// Mesh wire form: {"nodes": [[x,y],...], "triangles": [[i,j,k],...],
// "boundary": [...]}.
json to_json(const Mesh2& mesh);
Mesh2 mesh_from_json(const nlohmann::json& j);

json to_json(const std::vector<IdentityResult>& results, std::uint64_t seed);

// File helpers. Parse failures surface as ParseError naming the file and,
// where known, the offending field.
nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

// Field dump: header `node_index,x,y,y1,y2`, one row per node, doubles
// printed so they parse back to the same bits.
void write_field_csv(const std::string& path, const Mesh2& mesh, const VectorField& y);

// Reads a field dump back against a mesh; every node index must appear
// exactly once and coordinates must match the mesh.
VectorField read_field_csv(const std::string& path, const Mesh2& mesh);

// Convergence history: header `iter,I_C,grad_norm,step`.
void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history);

// %.17g: parses back to the same bits.
std::string format_double(double x);

} // namespace polywell::io
