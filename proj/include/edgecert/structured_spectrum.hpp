#pragma once

#include <vector>

#include "edgecert/complex_linalg.hpp"

namespace edgecert {

/// Hermitian matrix [[T, c], [c^*, delta]] with T tridiagonal. With an empty
/// border it is just T. The cyclic P_d blocks fit this shape with the last
/// index as border (c carries the corner entry and the last superdiagonal).
struct BorderedTridiagonal {
  std::vector<double> diag;   // T diagonal, size m
  std::vector<cplx> super;    // T(k, k+1), size m-1
  std::vector<cplx> border;   // c, size m or empty
  double border_diag = 0.0;   // delta

  int dim() const { return static_cast<int>(diag.size()) + (border.empty() ? 0 : 1); }
  bool has_border() const { return !border.empty(); }

  /// Gershgorin bound on the spectral radius.
  double norm_bound() const;
  ComplexMatrix dense() const;
};

/// Number of eigenvalues strictly below sigma, by LDL^* inertia of
/// T - sigma I plus the sign of the Schur complement of the border.
int count_eigenvalues_below(const BorderedTridiagonal& m, double sigma);

/// k-th smallest eigenvalue (0-based) by bisection on the inertia count.
double kth_eigenvalue(const BorderedTridiagonal& m, int k, double abs_tol = 0.0);

struct StructuredKernelReport {
  int corank = 0;
  double threshold = 0.0;
  double eigen_gap_lower = 0.0;  // certified lower bound on the eigen gap
  bool ambiguous = false;
  bool not_psd = false;
};

/// Corank classification with the same threshold rule as kernel_report, in
/// O(dim) per inertia evaluation.
StructuredKernelReport structured_kernel_report(const BorderedTridiagonal& m, KernelTolerance tol = {});

}  // namespace edgecert
