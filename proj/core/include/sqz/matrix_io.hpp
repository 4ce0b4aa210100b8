#pragma once

#include <filesystem>
#include <iosfwd>

#include "sqz/bogoliubov.hpp"

// Plain-text square complex matrix files: first line "N", then N rows of N
// whitespace-separated "re,im" pairs. Values round-trip exactly.

namespace sqz::bogoliubov {

void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);

void write_matrix_file(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_file(const std::filesystem::path& path);

}  // namespace sqz::bogoliubov
