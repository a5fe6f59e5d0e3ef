#pragma once

#include "psplit/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace psplit::io {

/// Reads a Matrix Market matrix (array or coordinate; real, integer or
/// complex field; general, symmetric, skew-symmetric or hermitian).
/// Throws Error(ParseError) on malformed input.
ComplexMatrix read_matrix_market(std::istream& in);
ComplexMatrix read_matrix_market_file(const std::filesystem::path& path);

/// Writes `%%MatrixMarket matrix array complex general` with 17 significant digits.
void write_matrix_market(std::ostream& out, const ComplexMatrix& a);

/// {"rows": m, "cols": n, "re": [...], "im": [...]} with row-major entries;
/// "im" may be omitted for real data.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& a);

/// A matrix source inside a manifest: an inline JSON matrix, or a string
/// path (relative to `base_dir`) to a .mtx or .json file.
ComplexMatrix load_matrix(const nlohmann::json& source, const std::filesystem::path& base_dir);

/// Deterministic JSON text: object keys sorted, doubles printed with 17
/// significant digits, two-space indentation.
std::string serialize(const nlohmann::json& j);

}  // namespace psplit::io
