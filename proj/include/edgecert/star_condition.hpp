#pragma once

#include <array>
#include <string>
#include <vector>

#include "edgecert/complex_linalg.hpp"
#include "edgecert/half_plane.hpp"
#include "edgecert/params.hpp"

namespace edgecert {

struct PairVerdict {
  int p = 0;
  int q = 0;
  Verdict verdict = Verdict::Pass;
  double margin = 0.0;  // largest gap - pi
};

/// Outcome of one family of tested sets.
struct CaseReport {
  std::string name;
  long tested = 0;
  long passed = 0;
  long failed = 0;
  long ambiguous = 0;
  PairVerdict worst;                  // smallest margin among tested sets
  std::vector<PairVerdict> non_pass;  // sorted by (q, p)
  Verdict verdict() const;
};

/// The four families of tested sets, in order:
///   low_alpha   {zb_j alpha_j : j <= floor((n+1)/2)}
///   split_alpha {zb_j alpha_j : p <= j <= n-q+1} plus zb_q alpha_q, p <= n-q+1 < (n+1)/2 < q
///   split_beta  zb_p beta_p plus {zb_j beta_j : n-p+2 <= j <= q}, (n+3)/2 < n-p+2 <= q
///   high_beta   {zb_j beta_j : j >= ceil((n+1)/2)}
/// where zb_j = conj(w_j).
struct StarReport {
  std::array<CaseReport, 4> cases;
  std::vector<cplx> z_alpha;  // conj(w_j) alpha_j
  std::vector<cplx> z_beta;   // conj(w_j) beta_j
  Verdict verdict = Verdict::Pass;
  double min_margin() const;
};

struct StarOptions {
  double margin = 1e-9;
  double zero_threshold = 1e-10;
};

/// O(n^2) scan: per fixed q (or p) the sets grow by one element, so the
/// minimal containing arc is tracked incrementally and only non-PASS sets are
/// re-tested by sorting. Parallel over q.
StarReport star_condition_check(const ComplexVector& w, const ParamSet& params, StarOptions opt = {});

/// Every set tested from scratch with half_plane_test. Serial.
StarReport star_condition_check_reference(const ComplexVector& w, const ParamSet& params, StarOptions opt = {});

/// The complex numbers of the (p, q) set of family `family_index` (0..3).
std::vector<cplx> star_set(const StarReport& report, int n, int family_index, int p, int q);

}  // namespace edgecert
