#include <filesystem>
#include <sstream>

#include "pencileig/matrix_market.hpp"
#include "test_util.hpp"

using namespace pencileig;
using namespace pencileig::testing;

namespace {

ComplexMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

}  // namespace

TEST(MatrixMarket, CoordinateComplexGeneral) {
  const ComplexMatrix m = parse(
      "%%MatrixMarket matrix coordinate complex general\n"
      "% a comment\n"
      "2 3 2\n"
      "1 1 1.5 -2\n"
      "2 3 0 1e-3\n");
  ASSERT_TRUE(m.is_sparse());
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m.cols(), 3);
  const DenseMatrix d = m.to_dense();
  EXPECT_EQ(d(0, 0), Complex(1.5, -2.0));
  EXPECT_EQ(d(1, 2), Complex(0.0, 1e-3));
  EXPECT_EQ(d(1, 0), Complex(0.0));
}

TEST(MatrixMarket, ArrayIdentity) {
  const ComplexMatrix m = parse("%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n");
  EXPECT_FALSE(m.is_sparse());
  EXPECT_EQ(m.to_dense(), DenseMatrix(DenseMatrix::Identity(2, 2)));
}

TEST(MatrixMarket, RealAndPatternPromoted) {
  const DenseMatrix r = parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n2 1 -4.25\n").to_dense();
  EXPECT_EQ(r(1, 0), Complex(-4.25, 0.0));
  const DenseMatrix p = parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n").to_dense();
  EXPECT_EQ(p(0, 1), Complex(1.0));
  const DenseMatrix i = parse("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 7\n").to_dense();
  EXPECT_EQ(i(0, 0), Complex(7.0));
}

TEST(MatrixMarket, SymmetricStorageExpanded) {
  const DenseMatrix s = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 3\n2 1 5\n").to_dense();
  EXPECT_EQ(s(0, 1), Complex(5.0));
  EXPECT_EQ(s(1, 0), Complex(5.0));
  const DenseMatrix h =
      parse("%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n2 1 1 2\n").to_dense();
  EXPECT_EQ(h(1, 0), Complex(1.0, 2.0));
  EXPECT_EQ(h(0, 1), Complex(1.0, -2.0));
  const DenseMatrix k = parse("%%MatrixMarket matrix array real skew-symmetric\n3 3\n1\n2\n3\n").to_dense();
  EXPECT_EQ(k(1, 0), Complex(1.0));
  EXPECT_EQ(k(0, 1), Complex(-1.0));
  EXPECT_EQ(k(2, 1), Complex(3.0));
  EXPECT_EQ(k(1, 2), Complex(-3.0));
  EXPECT_EQ(k(0, 0), Complex(0.0));
}

TEST(MatrixMarket, RoundTripIsExact) {
  Rng rng(12, Stream::User);
  std::vector<Eigen::Triplet<Complex, Index>> t;
  for (int k = 0; k < 400; ++k)
    t.emplace_back(rng.uniform_int(0, 99), rng.uniform_int(0, 79), rng.complex_normal() * 1e-7);
  const ComplexMatrix m = ComplexMatrix::from_triplets(100, 80, t);
  std::stringstream buf;
  write_matrix_market(buf, m);
  const ComplexMatrix back = read_matrix_market(buf);
  EXPECT_EQ(back.rows(), 100);
  EXPECT_EQ(back.cols(), 80);
  EXPECT_EQ(back.to_dense(), m.to_dense());
}

TEST(MatrixMarket, DenseInputWrittenAsCoordinate) {
  Rng rng(13, Stream::User);
  const ComplexMatrix m{rng.complex_normal_matrix(4, 3)};
  std::stringstream buf;
  write_matrix_market(buf, m);
  EXPECT_EQ(buf.str().rfind("%%MatrixMarket matrix coordinate complex general", 0), 0u);
  EXPECT_EQ(read_matrix_market(buf).to_dense(), m.to_dense());
}

TEST(MatrixMarket, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "pencileig_mm_roundtrip.mtx";
  const ComplexMatrix m{diag({Complex(1, 2), 3.0})};
  write_matrix_market(path, m);
  EXPECT_EQ(read_matrix_market(path).to_dense(), m.to_dense());
  std::filesystem::remove(path);
  EXPECT_ERROR_CODE(read_matrix_market(path), ErrorCode::IoError);
}

TEST(MatrixMarket, MalformedInputRejected) {
  EXPECT_ERROR_CODE(parse(""), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%MatrixMarket matrix coordinate real general\n1 1 0\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket vector coordinate real general\n1 1 0\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate quaternion general\n1 1 0\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real symmetric\n2 3 0\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix array pattern general\n1 1\n"), ErrorCode::ParseError);
}

TEST(MatrixMarket, DimensionOverflowRejected) {
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real general\n99999999999999999999 2 0\n"),
                    ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real general\n-1 2 0\n"), ErrorCode::ParseError);
}

TEST(MatrixMarket, NonFiniteValuesRejected) {
  EXPECT_ERROR_CODE(parse("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 nan\n"), ErrorCode::NonFinite);
}
