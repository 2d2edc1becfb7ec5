#include <limits>
#include <sstream>

#include <json.hpp>

#include "pencileig/report.hpp"
#include "test_util.hpp"

using namespace pencileig;

namespace {

SolveResult sample_result() {
  SolveResult r;
  r.tau = 3;
  r.warnings = {"something odd"};
  EigenPair in;
  in.lambda = Complex(1.25, -0.5);
  in.x = DenseVector::Ones(2) / std::sqrt(2.0);
  in.rrn = 3e-16;
  in.in_region = true;
  EigenPair spurious = in;
  spurious.lambda = Complex(0.75, 1.0);
  spurious.rrn = 1e-3;
  spurious.in_region = false;
  spurious.spurious = true;
  EigenPair inf;
  inf.lambda = Complex(std::numeric_limits<double>::infinity(), 0.0);
  inf.finite = false;
  inf.rrn = 1e-15;
  r.pairs = {in, spurious, inf};
  r.timings.step[1] = 0.9;
  r.timings.step[2] = 0.1;
  return r;
}

}  // namespace

TEST(ReportJson, Fields) {
  std::ostringstream out;
  write_results_json(out, sample_result(), {"res.x0.mtx", "", ""}, true);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["schema_version"], kResultSchemaVersion);
  EXPECT_EQ(doc["tau"], 3);
  EXPECT_EQ(doc["warnings"][0], "something odd");
  ASSERT_EQ(doc["pairs"].size(), 3u);
  const auto& p0 = doc["pairs"][0];
  EXPECT_EQ(p0["lambda_re"].get<double>(), 1.25);
  EXPECT_EQ(p0["lambda_im"].get<double>(), -0.5);
  EXPECT_EQ(p0["rrn"].get<double>(), 3e-16);
  EXPECT_TRUE(p0["in_region"].get<bool>());
  EXPECT_TRUE(p0["finite"].get<bool>());
  EXPECT_FALSE(p0["spurious"].get<bool>());
  EXPECT_EQ(p0["vector_path"], "res.x0.mtx");
  EXPECT_FALSE(doc["pairs"][1].contains("vector_path"));
  EXPECT_TRUE(doc["pairs"][1]["spurious"].get<bool>());
  EXPECT_TRUE(doc["pairs"][2]["lambda_re"].is_null());
  EXPECT_FALSE(doc["pairs"][2]["finite"].get<bool>());
  ASSERT_TRUE(doc.contains("timings"));
  EXPECT_EQ(doc["timings"]["steps"].size(), 5u);
  EXPECT_DOUBLE_EQ(doc["timings"]["total"].get<double>(), 1.0);
}

TEST(ReportJson, TimingsOptional) {
  std::ostringstream out;
  write_results_json(out, sample_result(), {}, false);
  EXPECT_FALSE(nlohmann::json::parse(out.str()).contains("timings"));
}

TEST(ReportJson, DoublesRoundTrip) {
  SolveResult r = sample_result();
  r.pairs[0].lambda = Complex(0.1 + 0.2, 1.0 / 3.0);
  std::ostringstream out;
  write_results_json(out, r, {}, false);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["pairs"][0]["lambda_re"].get<double>(), 0.1 + 0.2);
  EXPECT_EQ(doc["pairs"][0]["lambda_im"].get<double>(), 1.0 / 3.0);
}

TEST(ReportCsv, ResultsHeaderAndRows) {
  std::ostringstream out;
  write_results_csv(out, sample_result(), {"v0", "", ""});
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "lambda_re,lambda_im,rrn,in_region,finite,spurious,vector_path");
  std::getline(in, line);
  EXPECT_EQ(line, "1.25,-0.5,2.9999999999999999e-16,1,1,0,v0");
  std::getline(in, line);
  EXPECT_EQ(line.substr(line.size() - 6), "0,1,1,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 8), "inf,inf,");
}

TEST(ReportCsv, SweepAndComparison) {
  std::ostringstream sweep;
  write_sweep_csv(sweep, {SweepRow{8, 1e-3, 1e-4, 0.5, 2}, SweepRow{16, std::nullopt, 1e-9, 1.0, 3}});
  EXPECT_EQ(sweep.str(), "N,max_rerr,max_rrn,seconds\n8,0.001,0.0001,0.5\n16,,1.0000000000000001e-09,1\n");
  std::ostringstream cmp;
  ComparisonRow a{"proposed", 4, 4, 1e-15, 0.0, 0.25};
  ComparisonRow b{"f1", 3, std::nullopt, 2.0, std::numeric_limits<double>::infinity(), 0.5};
  b.max_rerr.reset();
  write_comparison_csv(cmp, {a, b});
  EXPECT_EQ(cmp.str(),
            "method,found,expected,max_rerr,max_rrn,seconds\nproposed,4,4,0,1.0000000000000001e-15,0.25\n"
            "f1,3,,,2,0.5\n");
}

TEST(ReportTiming, TableHasFiveStepsAndShares) {
  std::ostringstream out;
  write_timing_table(out, sample_result().timings);
  const std::string s = out.str();
  EXPECT_NE(s.find("2 moments (LS solves)"), std::string::npos);
  EXPECT_NE(s.find("90.00%"), std::string::npos);
  EXPECT_NE(s.find("total"), std::string::npos);
}

TEST(ReportFormat, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}
