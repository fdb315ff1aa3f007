#pragma once

#include "compvar/complex.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace compvar::io {

using json = nlohmann::json;

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
/// Parses JSON text, reporting the byte offset of a syntax error.
json parse_json(const std::string& text, const std::string& origin = "input");

Field parse_field(const json& j);
json field_to_json(const Field& f);

/// Either the structure-constant form (1-based indices, identity at
/// "identity_index") or the quiver form. The result is validated.
AlgebraPtr parse_algebra(const json& j);
/// Always the structure-constant form, with idempotents when known.
json algebra_to_json(const FDAlgebra& a);

/// {"dim": d, "action": [s matrices]}; validated against the algebra.
ModuleRep parse_module(const json& j, const AlgebraPtr& a);
json module_to_json(const ModuleRep& m);

/// {"m": m, "dims": [d_m..d_0], "modules": [...], "differentials": [∂_m..∂_1]}.
/// Shapes are checked; the point conditions are checked by the caller.
ChainComplex parse_complex(const json& j, const AlgebraPtr& a);
json complex_to_json(const ChainComplex& x);

Matrix parse_matrix(const json& j, const Field& f, std::size_t rows, std::size_t cols);
json matrix_to_json(const Matrix& m);
Scalar parse_scalar(const json& j, const Field& f);
json scalar_to_json(const Scalar& s, const Field& f);

}  // namespace compvar::io
