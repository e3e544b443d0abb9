#pragma once

#include <complex>
#include <compare>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace edgecert {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// e_{ij} = e_i (x) e_j with 1-based factors. Lexicographic order is the
/// row/column order of an n^2 x n^2 matrix.
struct BasisLabel {
  int row = 1;
  int col = 1;

  auto operator<=>(const BasisLabel&) const = default;

  /// 0-based position in the lexicographic basis of C^n (x) C^n.
  int flat(int n) const { return (row - 1) * n + (col - 1); }
  static BasisLabel from_flat(int index, int n) { return {index / n + 1, index % n + 1}; }
};

/// A square complex matrix that equals its conjugate transpose.
///
/// Construction checks the symmetry; the default tolerance is zero because every
/// matrix assembled in this project is built symmetric entry by entry.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m, double tolerance = 0.0);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double spectral_norm_bound() const;  // Frobenius norm, an upper bound on ||M||_2

 private:
  ComplexMatrix m_;
};

/// Max |M_ij - conj(M_ji)|.
double hermitian_defect(const ComplexMatrix& m);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // column k pairs with values[k]
};

EigenDecomposition eigh(const HermitianMatrix& m);
RealVector eigvalsh(const HermitianMatrix& m);

/// The `count` smallest eigenpairs (LAPACK zheevr, index range), ascending.
/// Vectors are computed only when `with_vectors` is set.
EigenDecomposition lowest_eigenpairs(const HermitianMatrix& m, int count, bool with_vectors = true);

/// Max absolute row sum, an upper bound on ||M||_2.
double row_sum_norm(const ComplexMatrix& m);

struct KernelTolerance {
  double kernel_threshold = 1e-9;
};

struct KernelReport {
  int corank = 0;
  std::vector<ComplexVector> kernel_basis;
  double eigen_gap = 0.0;
  double threshold = 0.0;
  bool ambiguous = false;
  bool not_psd = false;
  double min_eigenvalue = 0.0;
};

/// Corank and orthonormal kernel basis. The threshold is
/// kernel_threshold * max(1, ||M||_2); eigenvalues with |lambda| in
/// (threshold, 10 threshold) mark the report ambiguous, and any eigenvalue
/// below -threshold marks it not PSD.
KernelReport kernel_report(const HermitianMatrix& m, KernelTolerance tol = {});

/// Same classification from a precomputed ascending spectrum (no basis).
KernelReport classify_spectrum(const RealVector& ascending, double spectral_norm,
                               KernelTolerance tol = {});

/// Block-wise transpose: out[(a,b),(c,d)] = m[(c,b),(a,d)].
HermitianMatrix partial_transpose(const HermitianMatrix& m, int n);

/// Rows/columns restricted to `labels`, in the given order.
HermitianMatrix principal_submatrix(const HermitianMatrix& m, int n, std::span<const BasisLabel> labels);

}  // namespace edgecert
