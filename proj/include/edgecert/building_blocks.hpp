#pragma once

#include <span>
#include <vector>

#include "edgecert/complex_linalg.hpp"
#include "edgecert/structured_spectrum.hpp"

namespace edgecert {

/// Unit-modulus parameters z_2, ..., z_d stored as angles, so |z| = 1 holds by
/// construction. Subscripts start at 2: `value(2)` is angles[0].
class UnitComplexList {
 public:
  UnitComplexList() = default;
  explicit UnitComplexList(std::vector<double> angles);

  /// Rejects values whose modulus differs from 1 by more than `tol`.
  static UnitComplexList from_values(std::span<const cplx> values, double tol = 1e-12);
  static UnitComplexList ones(int count) { return UnitComplexList(std::vector<double>(count, 0.0)); }

  int size() const { return static_cast<int>(angles_.size()); }
  const std::vector<double>& angles() const { return angles_; }

  double angle(int subscript) const { return angles_.at(subscript - 2); }
  cplx value(int subscript) const;

 private:
  std::vector<double> angles_;
};

cplx unit(double angle);

/// d x d cycle matrix (d = z.size() + 1, even, >= 4): diagonal 2, superdiagonal
/// z_2, z_3 z_2^{-1}, ..., z_d z_{d-1}^{-1}, corner (1,d) = z_d. PSD of corank one,
/// diagonally unitarily similar to the affine Cartan matrix of the d-cycle.
HermitianMatrix cycle_block(const UnitComplexList& z);

/// [[1, z], [z^{-1}, 1]], PSD of corank one.
HermitianMatrix pair_block(double z_angle);

/// (1, -z_2^{-1}, z_3^{-1}, ..., -z_d^{-1}); spans the kernel of cycle_block(z).
ComplexVector cycle_block_kernel(const UnitComplexList& z);

/// (1, -z^{-1}); spans the kernel of pair_block(z).
ComplexVector pair_block_kernel(double z_angle);

/// m x m tridiagonal path matrix (m = z.size() + 1): diagonal 2, superdiagonal
/// z_2, ..., z_m. Positive definite with determinant m + 1.
HermitianMatrix path_block(const UnitComplexList& z);

/// Same matrices in the O(d) inertia form used by the fast corank kernels.
/// `scale` multiplies every entry.
BorderedTridiagonal cycle_block_structure(const UnitComplexList& z, double scale = 1.0);
BorderedTridiagonal pair_block_structure(double z_angle, double scale = 1.0);
BorderedTridiagonal path_block_structure(const UnitComplexList& z, double scale = 1.0);

}  // namespace edgecert
