#include "sqz/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace sqz::bogoliubov {

void write_matrix(std::ostream& out, const Matrix& m) {
  if (m.rows() != m.cols())
    throw DomainError("write_matrix: matrix must be square");
  out << m.rows() << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      out << buf << (j + 1 < m.cols() ? " " : "");
    }
    out << "\n";
  }
}

Matrix read_matrix(std::istream& in) {
  Eigen::Index n = 0;
  if (!(in >> n) || n < 0) throw DomainError("read_matrix: bad dimension line");
  Matrix m(n, n);
  std::string cell;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(in >> cell)) throw DomainError("read_matrix: truncated matrix body");
      double re = 0.0, im = 0.0;
      if (std::sscanf(cell.c_str(), "%lg,%lg", &re, &im) != 2)
        throw DomainError("read_matrix: malformed entry '" + cell + "'");
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_file: cannot open " + path.string());
  write_matrix(out, m);
  if (!out) throw std::runtime_error("write_matrix_file: write failed on " + path.string());
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_matrix_file: cannot open " + path.string());
  return read_matrix(in);
}

}  // namespace sqz::bogoliubov
