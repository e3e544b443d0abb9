#include "edgecert/building_blocks.hpp"

#include <cmath>
#include <string>

#include "edgecert/error.hpp"

namespace edgecert {

cplx unit(double angle) { return std::polar(1.0, angle); }

UnitComplexList::UnitComplexList(std::vector<double> angles) : angles_(std::move(angles)) {
  for (double a : angles_)
    if (!std::isfinite(a)) throw_invalid("unit complex parameter has a non-finite angle");
}

UnitComplexList UnitComplexList::from_values(std::span<const cplx> values, double tol) {
  std::vector<double> angles;
  angles.reserve(values.size());
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(std::abs(v) - 1.0) > tol)
      throw_invalid("parameter is not of unit modulus");
    angles.push_back(std::arg(v));
  }
  return UnitComplexList(std::move(angles));
}

cplx UnitComplexList::value(int subscript) const { return unit(angle(subscript)); }

namespace {

void require_cycle_size(const UnitComplexList& z) {
  const int d = z.size() + 1;
  if (d < 4 || d % 2 != 0)
    throw_invalid("cycle block size must be even and >= 4, got " + std::to_string(d));
}

// Superdiagonal of the cycle block: (k, k+1) = z_{k+1} z_k^{-1} with z_1 = 1.
double cycle_super_angle(const UnitComplexList& z, int k) {
  const double prev = k == 1 ? 0.0 : z.angle(k);
  return z.angle(k + 1) - prev;
}

}  // namespace

HermitianMatrix cycle_block(const UnitComplexList& z) {
  require_cycle_size(z);
  const int d = z.size() + 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = 2.0;
  for (int k = 1; k < d; ++k) {
    const cplx v = unit(cycle_super_angle(z, k));
    m(k - 1, k) = v;
    m(k, k - 1) = std::conj(v);
  }
  const cplx corner = z.value(d);
  m(0, d - 1) = corner;
  m(d - 1, 0) = std::conj(corner);
  return HermitianMatrix(std::move(m));
}

HermitianMatrix pair_block(double z_angle) {
  const cplx z = unit(z_angle);
  ComplexMatrix m(2, 2);
  m << 1.0, z, std::conj(z), 1.0;
  return HermitianMatrix(std::move(m));
}

ComplexVector cycle_block_kernel(const UnitComplexList& z) {
  require_cycle_size(z);
  const int d = z.size() + 1;
  ComplexVector v(d);
  v[0] = 1.0;
  for (int k = 2; k <= d; ++k) {
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    v[k - 1] = sign * unit(-z.angle(k));
  }
  return v;
}

ComplexVector pair_block_kernel(double z_angle) {
  ComplexVector v(2);
  v << 1.0, -unit(-z_angle);
  return v;
}

HermitianMatrix path_block(const UnitComplexList& z) {
  const int m = z.size() + 1;
  if (m < 2) throw_invalid("path block needs at least one parameter");
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (int k = 0; k < m; ++k) out(k, k) = 2.0;
  for (int k = 2; k <= m; ++k) {
    const cplx v = z.value(k);
    out(k - 2, k - 1) = v;
    out(k - 1, k - 2) = std::conj(v);
  }
  return HermitianMatrix(std::move(out));
}

BorderedTridiagonal cycle_block_structure(const UnitComplexList& z, double scale) {
  require_cycle_size(z);
  const int d = z.size() + 1;
  BorderedTridiagonal s;
  s.diag.assign(d - 1, 2.0 * scale);
  s.super.resize(d - 2);
  for (int k = 1; k <= d - 2; ++k) s.super[k - 1] = scale * unit(cycle_super_angle(z, k));
  s.border.assign(d - 1, cplx{});
  s.border[0] = scale * z.value(d);
  s.border[d - 2] = scale * unit(cycle_super_angle(z, d - 1));
  s.border_diag = 2.0 * scale;
  return s;
}

BorderedTridiagonal pair_block_structure(double z_angle, double scale) {
  BorderedTridiagonal s;
  s.diag = {scale};
  s.border = {scale * unit(z_angle)};
  s.border_diag = scale;
  return s;
}

BorderedTridiagonal path_block_structure(const UnitComplexList& z, double scale) {
  const int m = z.size() + 1;
  if (m < 2) throw_invalid("path block needs at least one parameter");
  BorderedTridiagonal s;
  s.diag.assign(m, 2.0 * scale);
  s.super.resize(m - 1);
  for (int k = 2; k <= m; ++k) s.super[k - 2] = scale * z.value(k);
  return s;
}

}  // namespace edgecert
