#include "holo/matrix_io.hpp"

#include <fstream>

namespace holo {

namespace {

void require_shape(const Json& j, const char* what) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw InvalidInputError(std::string(what) +
                            ": expected {rows, cols, entries}");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw InvalidInputError(std::string(what) + ": rows/cols must be integers");
  const auto rows = j["rows"].get<std::int64_t>();
  const auto cols = j["cols"].get<std::int64_t>();
  if (rows < 0 || cols < 0 || rows > 4096 || cols > 4096)
    throw InvalidInputError(std::string(what) + ": rows/cols out of range");
  if (!j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(rows * cols))
    throw InvalidInputError(std::string(what) +
                            ": entry count must equal rows*cols");
}

double number_or_throw(const Json& v, const char* what) {
  if (!v.is_number())
    throw InvalidInputError(std::string(what) + ": entry is not a number");
  return v.get<double>();
}

}  // namespace

Json complex_matrix_to_json(const MatrixXcd& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  j["entries"] = std::move(entries);
  return j;
}

MatrixXcd complex_matrix_from_json(const Json& j) {
  require_shape(j, "complex matrix");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  MatrixXcd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const Json& e = j["entries"][k];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && (e.size() == 1 || e.size() == 2)) {
        const double re = number_or_throw(e[0], "complex matrix");
        const double im =
            e.size() == 2 ? number_or_throw(e[1], "complex matrix") : 0.0;
        m(r, c) = Complex(re, im);
      } else {
        throw InvalidInputError(
            "complex matrix: entries must be numbers or [re, im] pairs");
      }
    }
  if (!all_finite(m))
    throw InvalidInputError("complex matrix: non-finite entries");
  return m;
}

Json integer_matrix_to_json(const IntMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  j["entries"] = std::move(entries);
  return j;
}

IntMatrix integer_matrix_from_json(const Json& j) {
  require_shape(j, "integer matrix");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  IntMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const Json& e = j["entries"][k];
      if (!e.is_number_integer())
        throw InvalidInputError("integer matrix: entries must be integers");
      m(r, c) = e.get<std::int64_t>();
    }
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInputError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw InvalidInputError("write failed: " + path);
}

MatrixXcd read_complex_matrix(const std::string& path) {
  return complex_matrix_from_json(read_json_file(path));
}

void write_complex_matrix(const std::string& path, const MatrixXcd& m) {
  write_json_file(path, complex_matrix_to_json(m));
}

IntMatrix read_integer_matrix(const std::string& path) {
  return integer_matrix_from_json(read_json_file(path));
}

void write_integer_matrix(const std::string& path, const IntMatrix& m) {
  write_json_file(path, integer_matrix_to_json(m));
}

}  // namespace holo
