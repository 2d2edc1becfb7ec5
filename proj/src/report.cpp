#include "pencileig/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace pencileig {

namespace {

const std::string& path_at(const std::vector<std::string>& paths, std::size_t i) {
  static const std::string empty;
  return i < paths.size() ? paths[i] : empty;
}

// Infinite or NaN values have no JSON number form.
nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : (std::isnan(v) ? "nan" : "inf"); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_results_json(std::ostream& out, const SolveResult& result, const std::vector<std::string>& vector_paths,
                        bool with_timings) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kResultSchemaVersion;
  doc["tau"] = result.tau;
  doc["warnings"] = result.warnings;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.pairs.size(); ++i) {
    const EigenPair& e = result.pairs[i];
    nlohmann::ordered_json item;
    item["lambda_re"] = e.finite ? number_or_null(e.lambda.real()) : nullptr;
    item["lambda_im"] = e.finite ? number_or_null(e.lambda.imag()) : nullptr;
    item["rrn"] = number_or_null(e.rrn);
    item["in_region"] = e.in_region;
    item["finite"] = e.finite;
    item["spurious"] = e.spurious;
    if (const std::string& path = path_at(vector_paths, i); !path.empty()) item["vector_path"] = path;
    pairs.push_back(std::move(item));
  }
  doc["pairs"] = std::move(pairs);
  if (with_timings) {
    nlohmann::ordered_json t;
    t["steps"] = std::vector<double>(std::begin(result.timings.step), std::end(result.timings.step));
    t["total"] = result.timings.total();
    doc["timings"] = std::move(t);
  }
  out << doc.dump(2) << '\n';
}

void write_results_csv(std::ostream& out, const SolveResult& result, const std::vector<std::string>& vector_paths) {
  out << "lambda_re,lambda_im,rrn,in_region,finite,spurious,vector_path\n";
  for (std::size_t i = 0; i < result.pairs.size(); ++i) {
    const EigenPair& e = result.pairs[i];
    out << (e.finite ? csv_number(e.lambda.real()) : "inf") << ',' << (e.finite ? csv_number(e.lambda.imag()) : "inf")
        << ',' << csv_number(e.rrn) << ',' << (e.in_region ? 1 : 0) << ',' << (e.finite ? 1 : 0) << ','
        << (e.spurious ? 1 : 0) << ',' << path_at(vector_paths, i) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "N,max_rerr,max_rrn,seconds\n";
  for (const SweepRow& r : rows)
    out << r.num_quad << ',' << (r.max_rerr ? csv_number(*r.max_rerr) : "") << ',' << csv_number(r.max_rrn) << ','
        << csv_number(r.seconds) << '\n';
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << "method,found,expected,max_rerr,max_rrn,seconds\n";
  for (const ComparisonRow& r : rows)
    out << r.method << ',' << r.found << ',' << (r.expected ? std::to_string(*r.expected) : "") << ','
        << (r.max_rerr ? csv_number(*r.max_rerr) : "") << ',' << csv_number(r.max_rrn) << ',' << csv_number(r.seconds)
        << '\n';
}

void write_timing_table(std::ostream& out, const StepTimings& timings) {
  static const char* names[5] = {"1 probes", "2 moments (LS solves)", "3 truncated SVD", "4 reduced eigenproblem",
                                 "5 Ritz vectors"};
  const double total = timings.total();
  out << std::left << std::setw(26) << "step" << std::right << std::setw(14) << "seconds" << std::setw(10) << "share"
      << '\n';
  const auto flags = out.flags();
  for (int i = 0; i < 5; ++i) {
    const double share = total > 0.0 ? 100.0 * timings.step[i] / total : 0.0;
    out << std::left << std::setw(26) << names[i] << std::right << std::setw(14) << std::scientific
        << std::setprecision(4) << timings.step[i] << std::setw(9) << std::fixed << std::setprecision(2) << share
        << "%\n";
  }
  out << std::left << std::setw(26) << "total" << std::right << std::setw(14) << std::scientific
      << std::setprecision(4) << total << '\n';
  out.flags(flags);
}

}  // namespace pencileig
