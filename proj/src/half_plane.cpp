#include "edgecert/half_plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "edgecert/error.hpp"

namespace edgecert {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Ambiguous || b == Verdict::Ambiguous) return Verdict::Ambiguous;
  return Verdict::Pass;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Gap {
  double size = 0.0;
  int lo = 0;  // index (into the sorted order) of the element starting the gap
  int hi = 0;
};

Gap largest_gap(const std::vector<std::pair<double, int>>& sorted) {
  const int m = static_cast<int>(sorted.size());
  Gap best{kTwoPi - (sorted.back().first - sorted.front().first), m - 1, 0};
  for (int k = 0; k + 1 < m; ++k) {
    const double g = sorted[k + 1].first - sorted[k].first;
    if (g > best.size) best = {g, k, k + 1};
  }
  return best;
}

Verdict classify_gap(double gap, double margin) {
  if (gap > std::numbers::pi + margin) return Verdict::Pass;
  if (gap < std::numbers::pi - margin) return Verdict::Fail;
  return Verdict::Ambiguous;
}

// a.im b.re - a.re b.im with Kahan's difference-of-products, so that a zero
// result means the two numbers are exactly real-collinear.
double cross(cplx a, cplx b) {
  const double w = a.real() * b.imag();
  const double e = std::fma(-a.real(), b.imag(), w);
  const double f = std::fma(a.imag(), b.real(), -w);
  return f + e;
}

}  // namespace

HalfPlaneResult half_plane_test_angles(std::span<const double> angles, double margin) {
  if (angles.empty()) throw_invalid("half_plane_test: empty list");
  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    double a = std::fmod(angles[k], kTwoPi);
    if (a < 0) a += kTwoPi;
    sorted.emplace_back(a, static_cast<int>(k));
  }
  std::sort(sorted.begin(), sorted.end());
  const Gap g = largest_gap(sorted);
  HalfPlaneResult r;
  r.largest_gap = g.size;
  r.margin = g.size - std::numbers::pi;
  r.verdict = classify_gap(g.size, margin);
  return r;
}

HalfPlaneResult half_plane_test(std::span<const cplx> z, double margin, double zero_threshold) {
  if (z.empty()) throw_invalid("half_plane_test: empty list");
  if (!(margin >= 0.0)) throw_invalid("half_plane_test: margin must be nonnegative");
  double biggest = 0.0;
  for (const cplx& v : z) biggest = std::max(biggest, std::abs(v));
  HalfPlaneResult r;
  for (const cplx& v : z)
    if (biggest == 0.0 || std::abs(v) <= zero_threshold * biggest) {
      r.zero_element = true;
      r.margin = -std::numbers::pi;
      return r;
    }

  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    double a = std::arg(z[k]);
    if (a < 0) a += kTwoPi;
    sorted.emplace_back(a, static_cast<int>(k));
  }
  std::sort(sorted.begin(), sorted.end());
  const Gap g = largest_gap(sorted);
  r.largest_gap = g.size;
  r.margin = g.size - std::numbers::pi;
  r.verdict = classify_gap(g.size, margin);

  // Inside the band, an exactly opposite pair on the gap boundary already
  // gives a vanishing nonnegative combination.
  if (r.verdict == Verdict::Ambiguous && z.size() > 1) {
    const cplx a = z[sorted[g.lo].second];
    const cplx b = z[sorted[g.hi].second];
    if (cross(a, b) == 0.0 && (a.real() * b.real() + a.imag() * b.imag()) < 0.0) r.verdict = Verdict::Fail;
  }
  return r;
}

}  // namespace edgecert
