#ifndef HOLO_MATRIX_IO_HPP
#define HOLO_MATRIX_IO_HPP

#include <string>

#include <json.hpp>

#include "holo/common.hpp"

namespace holo {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major.
Json complex_matrix_to_json(const MatrixXcd& m);
MatrixXcd complex_matrix_from_json(const Json& j);

/// Integer variant with bare integer entries.
Json integer_matrix_to_json(const IntMatrix& m);
IntMatrix integer_matrix_from_json(const Json& j);

MatrixXcd read_complex_matrix(const std::string& path);
void write_complex_matrix(const std::string& path, const MatrixXcd& m);

IntMatrix read_integer_matrix(const std::string& path);
void write_integer_matrix(const std::string& path, const IntMatrix& m);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace holo

#endif
