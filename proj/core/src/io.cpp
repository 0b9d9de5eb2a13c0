#include "eddeg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eddeg/errors.hpp"

namespace edd::io {

using core::Matrix;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Matrix read_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw core::IoError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw core::IoError("invalid JSON in " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw core::IoError("matrix JSON in " + path +
                        " must be an object with rows, cols, data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw core::IoError("matrix JSON in " + path +
                        ": rows and cols must be integers");
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  if (rows < 0 || cols < 0)
    throw core::IoError("matrix JSON in " + path +
                        ": rows and cols must be nonnegative");
  const auto& data = j["data"];
  if (!data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols))
    throw core::IoError("matrix JSON in " + path +
                        ": data must be a flat row-major array of length "
                        "rows*cols");
  Matrix m(rows, cols);
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) {
      const auto& v = data[static_cast<std::size_t>(r * cols + c)];
      if (!v.is_number())
        throw core::IoError("matrix JSON in " + path +
                            ": data entries must be numbers");
      m(r, c) = v.get<double>();
    }
  return m;
}

std::string matrix_to_json(const Matrix& m) {
  std::ostringstream out;
  out << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols()
      << ", \"data\": [";
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != 0 || c != 0) out << ", ";
      out << format_double(m(r, c));
    }
  out << "]}";
  return out.str();
}

void write_matrix_json(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw core::IoError("cannot open file for writing: " + path);
  out << matrix_to_json(m) << "\n";
  if (!out) throw core::IoError("write failed: " + path);
}

}  // namespace edd::io
