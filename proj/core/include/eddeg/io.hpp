#pragma once

// Matrix exchange format: JSON objects {"rows": n, "cols": k, "data": [...]}
// with row-major data. Writing uses 17-significant-digit formatting so equal
// matrices serialize to identical bytes.

#include <string>

#include "eddeg/matrix.hpp"

namespace edd::io {

using core::Matrix;

// Parse a matrix file. Throws IoError on unreadable/invalid JSON and
// ShapeMismatch when rows*cols does not match the data length.
Matrix read_matrix_json(const std::string& path);

// Serialize in the exchange format (single line, no trailing newline).
std::string matrix_to_json(const Matrix& m);

// Write matrix_to_json(m) plus a trailing newline to `path`.
void write_matrix_json(const std::string& path, const Matrix& m);

// Shortest-width formatting with up to 17 significant digits ("%.17g"):
// round-trips doubles exactly and is byte-stable across runs.
std::string format_double(double x);

}  // namespace edd::io
