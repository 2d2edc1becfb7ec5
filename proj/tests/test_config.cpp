#include <sstream>

#include "pencileig/config.hpp"
#include "test_util.hpp"

using namespace pencileig;
using namespace pencileig::testing;

namespace {

KeyValues kv_from(const std::string& text) {
  std::istringstream in(text);
  return read_key_values(in);
}

}  // namespace

TEST(ParseComplex, AcceptedForms) {
  EXPECT_EQ(parse_complex("1+1i"), Complex(1, 1));
  EXPECT_EQ(parse_complex("-2.5"), Complex(-2.5, 0));
  EXPECT_EQ(parse_complex("3i"), Complex(0, 3));
  EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("+2-i"), Complex(2, -1));
  EXPECT_EQ(parse_complex("1e-3-2E+1i"), Complex(1e-3, -20));
  EXPECT_EQ(parse_complex(" 0.5 + 0.25 j "), Complex(0.5, 0.25));
}

TEST(ParseComplex, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1+", "1++2i", "1+2k", "nan", "1e999"})
    EXPECT_ERROR_CODE(parse_complex(bad), ErrorCode::ParseError);
}

TEST(ParseSweep, Ranges) {
  EXPECT_EQ(parse_sweep("8:48:8"), (std::vector<Index>{8, 16, 24, 32, 40, 48}));
  EXPECT_EQ(parse_sweep("4:10:4"), (std::vector<Index>{4, 8}));
  EXPECT_EQ(parse_sweep("5:5:1"), (std::vector<Index>{5}));
  for (const char* bad : {"1:8:1", "8:4:1", "4:8:0", "4:8", "a:b:c"})
    EXPECT_ERROR_CODE(parse_sweep(bad), ErrorCode::ParseError);
}

TEST(KeyValuesTest, CommentsAndWhitespace) {
  const KeyValues kv = kv_from("# header\n  eta = 10  \n\nrho=4 # trailing\n");
  EXPECT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("eta"), "10");
  EXPECT_EQ(kv.at("rho"), "4");
}

TEST(KeyValuesTest, Errors) {
  EXPECT_ERROR_CODE(kv_from("eta = 1\neta = 2\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(kv_from("just text\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(kv_from(" = 3\n"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(read_key_values_file("/nonexistent/spec.cfg"), ErrorCode::IoError);
}

TEST(KroneckerSpecParse, SampledDeskScale) {
  const KroneckerSpec spec = parse_kronecker_spec(kv_from("eta=10\nrho=10\nq=80\nr=10\nseed=3\nm=30\nn=100\n"));
  EXPECT_EQ(spec.eta(), 10);
  EXPECT_EQ(spec.rho(), 10);
  EXPECT_EQ(spec.rows(), 30);
  EXPECT_EQ(spec.cols(), 100);
  EXPECT_EQ(spec.seed, 3u);
  EXPECT_EQ(spec.embed.kind, EmbeddingKind::DenseGaussian);
  const KroneckerSpec direct = KroneckerSpec::sampled(10, 10, 80, 10, 0, {}, 3);
  ASSERT_EQ(spec.finite_eigs.size(), direct.finite_eigs.size());
  for (std::size_t i = 0; i < spec.finite_eigs.size(); ++i)
    EXPECT_EQ(spec.finite_eigs[i].value, direct.finite_eigs[i].value);
  EXPECT_EQ(spec.nilpotent_sizes, direct.nilpotent_sizes);
  EXPECT_EQ(*spec.expected_rows, 30);
}

TEST(KroneckerSpecParse, ExplicitBlocks) {
  const KroneckerSpec spec =
      parse_kronecker_spec(kv_from("eigenvalues = 0.5+0.1i, 2:3, -i\nnilpotent = 2, 1\nq = 1\nembed = givens\n"
                                   "density = 0.25\n"));
  ASSERT_EQ(spec.finite_eigs.size(), 3u);
  EXPECT_EQ(spec.finite_eigs[0].value, Complex(0.5, 0.1));
  EXPECT_EQ(spec.finite_eigs[1].value, Complex(2.0, 0.0));
  EXPECT_EQ(spec.finite_eigs[1].jordan_size, 3);
  EXPECT_EQ(spec.finite_eigs[2].value, Complex(0.0, -1.0));
  EXPECT_EQ(spec.nilpotent_sizes, (std::vector<Index>{2, 1}));
  EXPECT_EQ(spec.eta(), 5);
  EXPECT_EQ(spec.embed.kind, EmbeddingKind::GivensSparse);
  EXPECT_DOUBLE_EQ(spec.embed.density, 0.25);
  EXPECT_EQ(parse_kronecker_spec(kv_from("eta=1\nembed=identity\n")).embed.kind, EmbeddingKind::Identity);
  EXPECT_EQ(parse_kronecker_spec(kv_from("eta=1\nnu=4\n")).nu, 4);
}

TEST(KroneckerSpecParse, Errors) {
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("eta=1\ncolour=red\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("eta=1\neigenvalues=2\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("rho=1\nnilpotent=2\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("eta=-1\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("q=-2\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("eigenvalues=1:0\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("nilpotent=0\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("eigenvalues=1,,2\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("embed=fancy\n")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_kronecker_spec(kv_from("eta=ten\n")), ErrorCode::ParseError);
}

TEST(RunConfigTest, Validation) {
  RunConfig rc;
  EXPECT_ERROR_CODE(rc.validate(), ErrorCode::InvalidArgument);
  rc.generate = KroneckerSpec::sampled(1, 1, 1, 1, 0, {}, 0);
  EXPECT_NO_THROW(rc.validate());
  rc.files = std::make_pair(std::string("a.mtx"), std::string("b.mtx"));
  EXPECT_ERROR_CODE(rc.validate(), ErrorCode::InvalidArgument);
  rc.generate.reset();
  rc.sweep = std::vector<Index>{8, 16};
  EXPECT_ERROR_CODE(rc.validate(), ErrorCode::InvalidArgument);
  rc.sweep.reset();
  rc.vectors = true;
  EXPECT_ERROR_CODE(rc.validate(), ErrorCode::InvalidArgument);
  rc.out_path = "out.json";
  EXPECT_NO_THROW(rc.validate());
}
