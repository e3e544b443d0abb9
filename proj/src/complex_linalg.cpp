#include "edgecert/complex_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "edgecert/error.hpp"

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace edgecert {

namespace {

void require_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) throw_invalid("matrix has non-finite entries");
}

}  // namespace

double hermitian_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw_invalid("Hermitian matrix must be square");
  if (m_.rows() < 1) throw_invalid("Hermitian matrix must have dim >= 1");
  require_finite(m_);
  const double defect = hermitian_defect(m_);
  if (defect > tolerance)
    throw_invalid("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
}

HermitianMatrix HermitianMatrix::identity(int dim) { return HermitianMatrix(ComplexMatrix::Identity(dim, dim)); }

HermitianMatrix HermitianMatrix::zero(int dim) { return HermitianMatrix(ComplexMatrix::Zero(dim, dim)); }

double HermitianMatrix::spectral_norm_bound() const { return m_.norm(); }

EigenDecomposition eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw_invalid("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw_invalid("eigensolver did not converge");
  return solver.eigenvalues();
}

EigenDecomposition lowest_eigenpairs(const HermitianMatrix& m, int count, bool with_vectors) {
  const int n = m.dim();
  if (count < 1 || count > n) throw_invalid("lowest_eigenpairs: count out of range");
  ComplexMatrix a = m.matrix();  // overwritten by LAPACK
  std::vector<double> values(n);
  ComplexMatrix z(n, with_vectors ? count : 1);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_zheevr(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, count, 0.0,
                     &found, values.data(), z.data(), n, support.data());
  if (info != 0 || found != count) throw_invalid("eigensolver did not converge (zheevr info " + std::to_string(info) + ")");
  EigenDecomposition out;
  out.values = Eigen::Map<RealVector>(values.data(), count);
  if (with_vectors) out.vectors = std::move(z);
  return out;
}

double row_sum_norm(const ComplexMatrix& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

KernelReport classify_spectrum(const RealVector& ascending, double spectral_norm, KernelTolerance tol) {
  if (!(tol.kernel_threshold > 0.0)) throw_invalid("kernel_threshold must be positive");
  KernelReport report;
  report.threshold = tol.kernel_threshold * std::max(1.0, spectral_norm);
  const double thr = report.threshold;
  double largest_below = 0.0;
  double smallest_above = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < ascending.size(); ++k) {
    const double lam = ascending[k];
    const double mag = std::abs(lam);
    if (mag <= thr) {
      ++report.corank;
      largest_below = std::max(largest_below, mag);
    } else {
      smallest_above = std::min(smallest_above, mag);
      if (mag < 10.0 * thr) report.ambiguous = true;
    }
    if (lam < -thr) report.not_psd = true;
  }
  report.eigen_gap = smallest_above - largest_below;
  report.min_eigenvalue = ascending.size() > 0 ? ascending[0] : 0.0;
  return report;
}

KernelReport kernel_report(const HermitianMatrix& m, KernelTolerance tol) {
  const EigenDecomposition eig = eigh(m);
  const double norm = eig.values.cwiseAbs().maxCoeff();
  KernelReport report = classify_spectrum(eig.values, norm, tol);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (std::abs(eig.values[k]) <= report.threshold) report.kernel_basis.emplace_back(eig.vectors.col(k));
  return report;
}

HermitianMatrix partial_transpose(const HermitianMatrix& m, int n) {
  if (n < 1 || static_cast<long>(n) * n != m.dim())
    throw_invalid("partial_transpose: dimension " + std::to_string(m.dim()) + " is not n^2 for n=" +
                  std::to_string(n));
  const ComplexMatrix& src = m.matrix();
  ComplexMatrix out(m.dim(), m.dim());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) out(a * n + b, c * n + d) = src(c * n + b, a * n + d);
  return HermitianMatrix(std::move(out));
}

HermitianMatrix principal_submatrix(const HermitianMatrix& m, int n, std::span<const BasisLabel> labels) {
  if (static_cast<long>(n) * n != m.dim()) throw_invalid("principal_submatrix: dimension is not n^2");
  if (labels.empty()) throw_invalid("principal_submatrix: empty label list");
  std::set<BasisLabel> seen;
  std::vector<int> idx;
  idx.reserve(labels.size());
  for (const BasisLabel& l : labels) {
    if (l.row < 1 || l.row > n || l.col < 1 || l.col > n)
      throw_invalid("principal_submatrix: label out of range");
    if (!seen.insert(l).second) throw_invalid("principal_submatrix: duplicate label");
    idx.push_back(l.flat(n));
  }
  const int k = static_cast<int>(idx.size());
  ComplexMatrix out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = m.matrix()(idx[i], idx[j]);
  return HermitianMatrix(std::move(out));
}

}  // namespace edgecert
