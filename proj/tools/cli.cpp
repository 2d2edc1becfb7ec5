#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pencileig/config.hpp"
#include "pencileig/kronecker.hpp"
#include "pencileig/matrix_market.hpp"
#include "pencileig/report.hpp"

namespace pencileig {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

bool is_solver_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::SvdFailure:
    case ErrorCode::QzFailure:
    case ErrorCode::TooManyFailedNodes:
    case ErrorCode::EmptySubspace:
    case ErrorCode::EigenvalueOnContour:
      return true;
    default:
      return false;
  }
}

struct SolveFlags {
  std::string matrix_a, matrix_b, generate;
  std::string center = "1+1i";
  double radius = 1.0;
  Index num_quad = 48, probes = 4, moments = 2;
  std::string solver = "auto";
  double tol = 1e-14;
  Index max_iters = 0;
  std::uint64_t seed = 0;
  std::string sweep;
  std::vector<std::string> baselines;
  bool timing = false, vectors = false;
  std::string out, format = "json";
  int threads = 0;
  double residual_tol = 1e-8;
};

struct GenerateFlags {
  std::string spec, out_a, out_b, truth;
};

RunConfig build_run_config(const SolveFlags& f) {
  RunConfig rc;
  if (!f.generate.empty()) rc.generate = parse_kronecker_spec(read_key_values_file(f.generate));
  if (!f.matrix_a.empty() || !f.matrix_b.empty()) {
    if (f.matrix_a.empty() || f.matrix_b.empty())
      throw Error(ErrorCode::InvalidArgument, "--matrix-a and --matrix-b go together");
    rc.files = std::make_pair(f.matrix_a, f.matrix_b);
  }
  ContourConfig& c = rc.contour;
  c.center = parse_complex(f.center);
  c.radius = f.radius;
  c.num_quad = f.num_quad;
  c.probes = f.probes;
  c.moments = f.moments;
  c.seed = f.seed;
  c.threads = f.threads;
  c.residual_tol = f.residual_tol;
  c.lsq.method = parse_lsq_method(f.solver);
  c.lsq.rel_tol = f.tol;
  if (f.max_iters > 0) c.lsq.max_iters = f.max_iters;
  for (const std::string& name : f.baselines) {
    BaselineRequest req{};
    req.kind = parse_baseline(name, req.contour);
    rc.baselines.push_back(req);
  }
  if (f.format == "json") rc.format = OutputFormat::Json;
  else if (f.format == "csv") rc.format = OutputFormat::Csv;
  else throw Error(ErrorCode::InvalidArgument, "--format must be json or csv");
  rc.out_path = f.out;
  if (!f.sweep.empty()) rc.sweep = parse_sweep(f.sweep);
  rc.timing = f.timing;
  rc.vectors = f.vectors;
  rc.validate();
  return rc;
}

// Writes to the --out path, or to `fallback` when none was given.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  fn(file);
  if (!file) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::vector<std::string> write_vectors(const SolveResult& res, const std::string& out_path) {
  std::vector<std::string> paths(res.pairs.size());
  for (std::size_t i = 0; i < res.pairs.size(); ++i) {
    if (!res.pairs[i].in_region) continue;
    paths[i] = out_path + ".x" + std::to_string(i) + ".mtx";
    write_matrix_market(paths[i], ComplexMatrix(DenseMatrix(res.pairs[i].x)));
  }
  return paths;
}

int run_solve(const SolveFlags& flags, std::ostream& out) {
  const RunConfig rc = build_run_config(flags);
  std::optional<GroundTruth> truth;
  std::optional<MatrixPencil> pencil;
  if (rc.generate) {
    GeneratedPencil g = make_kronecker_pencil(*rc.generate);
    pencil.emplace(std::move(g.pencil));
    truth.emplace(std::move(g.truth));
  } else {
    pencil.emplace(read_matrix_market(rc.files->first), read_matrix_market(rc.files->second));
  }
  const MatrixPencil& p = *pencil;
  const ContourConfig& cfg = rc.contour;
  std::optional<std::vector<Complex>> reference;
  if (truth) reference = truth->eigs_in_disk(cfg.center, cfg.radius);

  if (rc.sweep) {
    const auto rows = convergence_sweep(p, cfg, *rc.sweep, reference);
    emit(rc.out_path, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
    return kExitOk;
  }

  const SolveResult res = solve(p, cfg);
  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << '\n';
  const std::vector<std::string> vector_paths = rc.vectors ? write_vectors(res, rc.out_path) : std::vector<std::string>{};
  emit(rc.out_path, out, [&](std::ostream& os) {
    if (rc.format == OutputFormat::Json) write_results_json(os, res, vector_paths, rc.timing);
    else write_results_csv(os, res, vector_paths);
  });

  std::ostream& side = rc.out_path.empty() ? std::cerr : out;
  if (rc.timing) write_timing_table(side, res.timings);

  if (!rc.baselines.empty()) {
    std::vector<ComparisonRow> rows;
    auto row_for = [&](const std::string& name, const std::vector<Complex>& found, double max_rrn, double seconds) {
      ComparisonRow r;
      r.method = name;
      r.found = static_cast<Index>(found.size());
      r.max_rrn = max_rrn;
      r.seconds = seconds;
      if (reference) {
        r.expected = static_cast<Index>(reference->size());
        r.max_rerr = max_relative_error(found, *reference);
      }
      return r;
    };
    rows.push_back(row_for("proposed", res.in_region_eigenvalues(), res.max_in_region_rrn(), res.timings.total()));
    const Region region{cfg.center, cfg.radius};
    for (const BaselineRequest& req : rc.baselines) {
      const BaselineResult b =
          req.contour ? run_baseline_contour(p, req.kind, cfg) : run_baseline(p, req.kind, region, cfg.seed);
      rows.push_back(row_for(b.name, b.in_region_eigenvalues(), b.max_in_region_rrn(), b.seconds));
    }
    if (rc.out_path.empty()) {
      write_comparison_csv(std::cerr, rows);
    } else {
      emit(rc.out_path + ".baselines.csv", out, [&](std::ostream& os) { write_comparison_csv(os, rows); });
    }
  }
  return kExitOk;
}

int run_generate(const GenerateFlags& flags) {
  const KroneckerSpec spec = parse_kronecker_spec(read_key_values_file(flags.spec));
  const GeneratedPencil g = make_kronecker_pencil(spec);
  write_matrix_market(flags.out_a, g.pencil.a());
  write_matrix_market(flags.out_b, g.pencil.b());
  if (!flags.truth.empty()) {
    emit(flags.truth, std::cout, [&](std::ostream& os) {
      os << "lambda_re,lambda_im\n";
      for (const Complex& l : g.truth.finite_eigs) os << format_double(l.real()) << ',' << format_double(l.imag()) << '\n';
    });
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite eigenvalues of rectangular and singular pencils z B - A inside a circle"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file with default option values");

  SolveFlags sf;
  CLI::App* solve_cmd = app.add_subcommand("solve", "contour-integral eigensolver");
  solve_cmd->add_option("--matrix-a", sf.matrix_a, "Matrix Market file for A");
  solve_cmd->add_option("--matrix-b", sf.matrix_b, "Matrix Market file for B");
  solve_cmd->add_option("--generate", sf.generate, "key = value generator spec");
  solve_cmd->add_option("--center", sf.center, "circle center, e.g. 1+1i")->capture_default_str();
  solve_cmd->add_option("--radius", sf.radius, "circle radius")->capture_default_str();
  solve_cmd->add_option("-N,--num-quad", sf.num_quad, "quadrature points")->capture_default_str();
  solve_cmd->add_option("-L,--probes", sf.probes, "probe columns")->capture_default_str();
  solve_cmd->add_option("-M,--moments", sf.moments, "moment order")->capture_default_str();
  solve_cmd->add_option("--solver", sf.solver, "auto|dense-pinv|cgls|lsqr|global-cgls")->capture_default_str();
  solve_cmd->add_option("--tol", sf.tol, "iterative solver tolerance")->capture_default_str();
  solve_cmd->add_option("--max-iters", sf.max_iters, "iteration cap (default min(m, n))");
  solve_cmd->add_option("--seed", sf.seed, "seed for probes and test matrix")->capture_default_str();
  solve_cmd->add_option("--sweep", sf.sweep, "quadrature sweep a:b:step (CSV output)");
  solve_cmd->add_option("--baselines", sf.baselines, "f1,f2,f3,f4,f1p,f3p")->delimiter(',');
  solve_cmd->add_flag("--timing", sf.timing, "print per-step wall times");
  solve_cmd->add_flag("--vectors", sf.vectors, "write in-region eigenvectors next to --out");
  solve_cmd->add_option("--out", sf.out, "output path (stdout if omitted)");
  solve_cmd->add_option("--format", sf.format, "json|csv")->capture_default_str();
  solve_cmd->add_option("--threads", sf.threads, "OpenMP threads for the node loop (0 = default)");
  solve_cmd->add_option("--residual-tol", sf.residual_tol, "largest RRN accepted for in-region pairs")
      ->capture_default_str();

  GenerateFlags gf;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write a generated test pencil as Matrix Market files");
  gen_cmd->add_option("spec", gf.spec, "key = value generator spec")->required();
  gen_cmd->add_option("--out-a", gf.out_a, "output file for A")->required();
  gen_cmd->add_option("--out-b", gf.out_b, "output file for B")->required();
  gen_cmd->add_option("--truth", gf.truth, "CSV of the finite eigenvalues");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(sf, out);
    return run_generate(gf);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_solver_failure(e.code()) ? kExitSolver : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace pencileig
