#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "pencileig/dense.hpp"

#include <algorithm>

namespace pencileig::dense {

Svd thin_svd(const DenseMatrix& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Svd out;
  out.sigma.resize(k);
  if (k == 0) {
    out.u.resize(m, 0);
    out.v.resize(n, 0);
    return out;
  }
  DenseMatrix work = a;
  DenseMatrix u(m, k);
  DenseMatrix vt(k, n);
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, out.sigma.data(), u.data(), m,
                                   vt.data(), k);
  if (info > 0) {
    work = a;
    Eigen::VectorXd superb(std::max<lapack_int>(1, k - 1));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, work.data(), m, out.sigma.data(), u.data(), m,
                          vt.data(), k, superb.data());
  }
  if (info != 0) throw Error(ErrorCode::SvdFailure, "zgesdd/zgesvd info = " + std::to_string(info));
  out.u = std::move(u);
  out.v = vt.adjoint();
  return out;
}

Eigen::VectorXd singular_values(const DenseMatrix& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Eigen::VectorXd sigma(k);
  if (k == 0) return sigma;
  DenseMatrix work = a;
  lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, sigma.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw Error(ErrorCode::SvdFailure, "zgesdd info = " + std::to_string(info));
  return sigma;
}

GeneralizedEig qz(const DenseMatrix& a, const DenseMatrix& b, bool want_vectors) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "qz needs two square matrices of equal size");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  GeneralizedEig out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) return out;
  DenseMatrix aw = a;
  DenseMatrix bw = b;
  DenseMatrix vr = want_vectors ? DenseMatrix(n, n) : DenseMatrix(1, 1);
  Complex dummy;
  const lapack_int info =
      LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, aw.data(), n, bw.data(), n,
                    out.alpha.data(), out.beta.data(), &dummy, 1, vr.data(), want_vectors ? n : 1);
  if (info != 0) throw Error(ErrorCode::QzFailure, "zggev info = " + std::to_string(info));
  if (want_vectors) out.vectors = std::move(vr);
  return out;
}

}  // namespace pencileig::dense
