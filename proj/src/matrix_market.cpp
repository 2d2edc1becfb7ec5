#include "pencileig/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace pencileig {

namespace {

enum class Format { Coordinate, Array };
enum class Field { Real, Complex, Integer, Pattern };
enum class Symmetry { General, Symmetric, Hermitian, SkewSymmetric };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, "Matrix Market: " + msg); }

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return true;
  }
  return false;
}

double parse_double(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') fail("bad number '" + token + "'");
  return v;
}

Index parse_index(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0') fail("bad integer '" + token + "'");
  if (errno == ERANGE || v < 0 || v > std::numeric_limits<int>::max()) fail("dimension overflow '" + token + "'");
  return static_cast<Index>(v);
}

Complex read_value(std::istringstream& ss, Field field) {
  std::string re, im;
  switch (field) {
    case Field::Pattern:
      return {1.0, 0.0};
    case Field::Real:
    case Field::Integer:
      if (!(ss >> re)) fail("missing value");
      return {parse_double(re), 0.0};
    case Field::Complex:
      if (!(ss >> re >> im)) fail("missing complex value");
      return {parse_double(re), parse_double(im)};
  }
  return {};
}

Complex mirrored(Complex v, Symmetry sym) {
  switch (sym) {
    case Symmetry::Hermitian: return std::conj(v);
    case Symmetry::SkewSymmetric: return -v;
    default: return v;
  }
}

}  // namespace

ComplexMatrix read_matrix_market(std::istream& in) {
  std::string banner;
  if (!std::getline(in, banner)) fail("empty input");
  std::istringstream bs(banner);
  std::string tag, object, format_s, field_s, sym_s;
  bs >> tag >> object >> format_s >> field_s >> sym_s;
  if (tag != "%%MatrixMarket") fail("missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail("unsupported object '" + object + "'");

  Format format;
  if (lower(format_s) == "coordinate") format = Format::Coordinate;
  else if (lower(format_s) == "array") format = Format::Array;
  else fail("unsupported format '" + format_s + "'");

  Field field;
  const std::string f = lower(field_s);
  if (f == "real" || f == "double") field = Field::Real;
  else if (f == "complex") field = Field::Complex;
  else if (f == "integer") field = Field::Integer;
  else if (f == "pattern") field = Field::Pattern;
  else fail("unsupported field '" + field_s + "'");
  if (format == Format::Array && field == Field::Pattern) fail("pattern field requires coordinate format");

  Symmetry sym;
  const std::string s = lower(sym_s);
  if (s == "general") sym = Symmetry::General;
  else if (s == "symmetric") sym = Symmetry::Symmetric;
  else if (s == "hermitian") sym = Symmetry::Hermitian;
  else if (s == "skew-symmetric") sym = Symmetry::SkewSymmetric;
  else fail("unsupported symmetry '" + sym_s + "'");

  std::string line;
  if (!next_data_line(in, line)) fail("missing size line");
  std::istringstream size_line(line);
  std::string rs, cs, ns;
  if (!(size_line >> rs >> cs)) fail("bad size line");
  const Index rows = parse_index(rs);
  const Index cols = parse_index(cs);
  if (sym != Symmetry::General && rows != cols) fail("symmetric storage requires a square matrix");

  if (format == Format::Coordinate) {
    if (!(size_line >> ns)) fail("bad size line");
    const Index nnz = parse_index(ns);
    std::vector<Eigen::Triplet<Complex, Index>> entries;
    entries.reserve(static_cast<std::size_t>(nnz) * (sym == Symmetry::General ? 1 : 2));
    for (Index k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line)) fail("expected " + std::to_string(nnz) + " entries, got " + std::to_string(k));
      std::istringstream es(line);
      std::string is, js;
      if (!(es >> is >> js)) fail("bad entry line");
      const Index i = parse_index(is);
      const Index j = parse_index(js);
      if (i < 1 || i > rows || j < 1 || j > cols) fail("entry index out of range");
      const Complex v = read_value(es, field);
      entries.emplace_back(i - 1, j - 1, v);
      if (sym != Symmetry::General && i != j) entries.emplace_back(j - 1, i - 1, mirrored(v, sym));
    }
    return ComplexMatrix::from_triplets(rows, cols, entries);
  }

  DenseMatrix dense = DenseMatrix::Zero(rows, cols);
  // column-major; symmetric variants store the lower triangle only
  for (Index j = 0; j < cols; ++j) {
    const Index start = sym == Symmetry::General ? 0 : (sym == Symmetry::SkewSymmetric ? j + 1 : j);
    for (Index i = start; i < rows; ++i) {
      if (!next_data_line(in, line)) fail("array data ended early");
      std::istringstream es(line);
      const Complex v = read_value(es, field);
      dense(i, j) = v;
      if (sym != Symmetry::General && i != j) dense(j, i) = mirrored(v, sym);
    }
  }
  return ComplexMatrix(std::move(dense));
}

ComplexMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& m) {
  const SparseMatrix s = m.to_sparse();
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << s.rows() << ' ' << s.cols() << ' ' << s.nonZeros() << '\n';
  char buf[96];
  for (Index j = 0; j < s.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(s, j); it; ++it) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g", it.value().real(), it.value().imag());
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_matrix_market(out, m);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace pencileig
