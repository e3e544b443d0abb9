#pragma once

#include <span>
#include <string>

#include "edgecert/complex_linalg.hpp"

namespace edgecert {

enum class Verdict { Pass, Fail, Ambiguous };

std::string to_string(Verdict v);

/// Worse of two verdicts: Fail > Ambiguous > Pass.
Verdict combine(Verdict a, Verdict b);

struct HalfPlaneResult {
  Verdict verdict = Verdict::Fail;
  double largest_gap = 0.0;  // largest angular gap between consecutive arguments
  double margin = 0.0;       // largest_gap - pi; positive means strictly inside a half-plane
  bool zero_element = false;
};

/// Whether the numbers lie in an open half-plane through the origin, i.e. no
/// nontrivial nonnegative combination vanishes. Pass iff gap > pi + margin,
/// Fail iff gap < pi - margin or an element is zero (relative to max |z|) or two
/// elements bounding the largest gap are exactly opposite; Ambiguous otherwise.
HalfPlaneResult half_plane_test(std::span<const cplx> z, double margin = 1e-9, double zero_threshold = 1e-10);

/// Same test on precomputed arguments (all elements assumed nonzero).
HalfPlaneResult half_plane_test_angles(std::span<const double> angles, double margin);

}  // namespace edgecert
