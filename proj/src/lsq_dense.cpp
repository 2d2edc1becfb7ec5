#include <algorithm>

#include "pencileig/dense.hpp"
#include "pencileig/lsq.hpp"

namespace pencileig {

const char* to_string(LsqMethod method) {
  switch (method) {
    case LsqMethod::Auto: return "auto";
    case LsqMethod::DensePinv: return "dense-pinv";
    case LsqMethod::Cgls: return "cgls";
    case LsqMethod::Lsqr: return "lsqr";
    case LsqMethod::GlobalCgls: return "global-cgls";
  }
  return "?";
}

LsqMethod parse_lsq_method(const std::string& name) {
  for (LsqMethod m : {LsqMethod::Auto, LsqMethod::DensePinv, LsqMethod::Cgls, LsqMethod::Lsqr, LsqMethod::GlobalCgls})
    if (name == to_string(m)) return m;
  throw Error(ErrorCode::ParseError, "unknown solver '" + name + "'");
}

void LsqConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must lie in (0, 1)");
  if (max_iters && *max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
  if (size_crossover < 1) throw Error(ErrorCode::InvalidArgument, "size_crossover must be >= 1");
  if (stagnation_window < 1) throw Error(ErrorCode::InvalidArgument, "stagnation_window must be >= 1");
}

Index LsqConfig::iteration_limit(Index m, Index n) const { return max_iters.value_or(std::min(m, n)); }

LsqMethod LsqConfig::resolve(Index m, Index n) const {
  if (method != LsqMethod::Auto) return method;
  return std::min(m, n) < size_crossover ? LsqMethod::DensePinv : LsqMethod::GlobalCgls;
}

LsqReport merge_reports(const std::vector<LsqReport>& reports) {
  LsqReport out;
  out.converged = true;
  for (const auto& r : reports) {
    out.iterations = std::max(out.iterations, r.iterations);
    out.final_rel_residual = std::max(out.final_rel_residual, r.final_rel_residual);
    out.converged = out.converged && r.converged;
    out.stagnated = out.stagnated || r.stagnated;
  }
  return out;
}

LsqSolution<DenseMatrix> pinv_apply_dense(const MatrixPencil& p, Complex z, const DenseMatrix& rhs) {
  if (rhs.rows() != p.rows()) throw Error(ErrorCode::DimensionMismatch, "pinv_apply_dense: rhs has wrong rows");
  const DenseMatrix op = p.materialize(z);
  const dense::Svd svd = dense::thin_svd(op);
  const double sigma_max = svd.sigma.size() > 0 ? svd.sigma(0) : 0.0;
  const double cutoff = kUnitRoundoff * static_cast<double>(std::max(p.rows(), p.cols())) * sigma_max;
  Index rank = 0;
  while (rank < svd.sigma.size() && svd.sigma(rank) > cutoff) ++rank;

  DenseMatrix coeffs = svd.u.leftCols(rank).adjoint() * rhs;
  for (Index i = 0; i < rank; ++i) coeffs.row(i) /= svd.sigma(i);
  LsqSolution<DenseMatrix> out{svd.v.leftCols(rank) * coeffs, {}};

  const double normal0 = (op.adjoint() * rhs).norm();
  const double normal = (op.adjoint() * (rhs - op * out.x)).norm();
  out.report.final_rel_residual = normal0 > 0.0 ? normal / normal0 : 0.0;
  out.report.converged = true;
  return out;
}

LsqSolution<DenseMatrix> apply_pseudoinverse(const MatrixPencil& p, Complex z, const DenseMatrix& rhs,
                                             const LsqConfig& cfg) {
  switch (cfg.resolve(p.rows(), p.cols())) {
    case LsqMethod::DensePinv:
      return pinv_apply_dense(p, z, rhs);
    case LsqMethod::GlobalCgls:
      return global_cgls_solve(p, z, rhs, cfg);
    case LsqMethod::Cgls:
    case LsqMethod::Lsqr: {
      const bool use_lsqr = cfg.resolve(p.rows(), p.cols()) == LsqMethod::Lsqr;
      LsqSolution<DenseMatrix> out{DenseMatrix(p.cols(), rhs.cols()), {}};
      std::vector<LsqReport> reports;
      for (Index j = 0; j < rhs.cols(); ++j) {
        auto col = use_lsqr ? lsqr_solve(p, z, rhs.col(j), cfg) : cgls_solve(p, z, rhs.col(j), cfg);
        out.x.col(j) = col.x;
        reports.push_back(std::move(col.report));
      }
      out.report = merge_reports(reports);
      return out;
    }
    case LsqMethod::Auto:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "unresolved least-squares method");
}

}  // namespace pencileig
