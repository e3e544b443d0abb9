#include "edgecert/star_condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <omp.h>

#include "edgecert/error.hpp"

namespace edgecert {

Verdict CaseReport::verdict() const {
  if (failed > 0) return Verdict::Fail;
  if (ambiguous > 0) return Verdict::Ambiguous;
  return Verdict::Pass;
}

double StarReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const CaseReport& c : cases)
    if (c.tested > 0) m = std::min(m, c.worst.margin);
  return m;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const char* const kCaseNames[4] = {"low_alpha", "split_alpha", "split_beta", "high_beta"};

// Set definitions, 1-based. Pairs are enumerated with q as the outer index.
int low_end(int n) { return (n + 1) / 2; }       // floor((n+1)/2)
int high_start(int n) { return (n + 2) / 2; }  // ceil((n+1)/2)

}  // namespace

std::vector<cplx> star_set(const StarReport& report, int n, int family_index, int p, int q) {
  std::vector<cplx> out;
  switch (family_index) {
    case 0:
      for (int j = 1; j <= low_end(n); ++j) out.push_back(report.z_alpha[j - 1]);
      break;
    case 1:
      for (int j = p; j <= n - q + 1; ++j) out.push_back(report.z_alpha[j - 1]);
      out.push_back(report.z_alpha[q - 1]);
      break;
    case 2:
      out.push_back(report.z_beta[p - 1]);
      for (int j = n - p + 2; j <= q; ++j) out.push_back(report.z_beta[j - 1]);
      break;
    case 3:
      for (int j = high_start(n); j <= n; ++j) out.push_back(report.z_beta[j - 1]);
      break;
    default:
      throw_invalid("star_set: family index out of range");
  }
  return out;
}

namespace {

void prepare(StarReport& r, const ComplexVector& w, const ParamSet& params) {
  validate_params(params);
  if (w.size() != params.n) throw_invalid("star condition: w must have length n");
  r.z_alpha.resize(params.n);
  r.z_beta.resize(params.n);
  for (int j = 1; j <= params.n; ++j) {
    r.z_alpha[j - 1] = std::conj(w[j - 1]) * params.alpha(j);
    r.z_beta[j - 1] = std::conj(w[j - 1]) * params.beta(j);
  }
  for (int c = 0; c < 4; ++c) {
    r.cases[c] = CaseReport{};
    r.cases[c].name = kCaseNames[c];
    r.cases[c].worst.margin = std::numeric_limits<double>::infinity();
  }
}

void record(CaseReport& c, const PairVerdict& v) {
  ++c.tested;
  switch (v.verdict) {
    case Verdict::Pass: ++c.passed; break;
    case Verdict::Fail: ++c.failed; break;
    case Verdict::Ambiguous: ++c.ambiguous; break;
  }
  if (v.margin < c.worst.margin || (v.margin == c.worst.margin && c.tested == 1)) c.worst = v;
  if (v.verdict != Verdict::Pass) c.non_pass.push_back(v);
}

void merge(CaseReport& into, const CaseReport& from) {
  into.tested += from.tested;
  into.passed += from.passed;
  into.failed += from.failed;
  into.ambiguous += from.ambiguous;
  if (from.tested > 0 && (from.worst.margin < into.worst.margin ||
                          (from.worst.margin == into.worst.margin &&
                           std::pair(from.worst.q, from.worst.p) < std::pair(into.worst.q, into.worst.p))))
    into.worst = from.worst;
  into.non_pass.insert(into.non_pass.end(), from.non_pass.begin(), from.non_pass.end());
}

void finish(StarReport& r) {
  r.verdict = Verdict::Pass;
  for (CaseReport& c : r.cases) {
    std::sort(c.non_pass.begin(), c.non_pass.end(),
              [](const PairVerdict& a, const PairVerdict& b) { return std::pair(a.q, a.p) < std::pair(b.q, b.p); });
    r.verdict = combine(r.verdict, c.verdict());
  }
}

PairVerdict exact(const std::vector<cplx>& set, int p, int q, const StarOptions& opt) {
  const HalfPlaneResult h = half_plane_test(set, opt.margin, opt.zero_threshold);
  return {p, q, h.verdict, h.margin};
}

// Minimal arc [lo, lo + span] containing the points added so far; valid while
// span < pi.
struct Arc {
  double lo = 0.0;
  double span = 0.0;
  bool open = true;  // still strictly inside a half-plane

  void start(double theta) {
    lo = theta;
    span = 0.0;
    open = true;
  }
  void add(double theta) {
    if (!open) return;
    double d = std::fmod(theta - lo, kTwoPi);
    if (d < 0) d += kTwoPi;
    if (d <= span) return;
    const double extend_hi = d;                 // new span keeping lo
    const double extend_lo = span + (kTwoPi - d);  // new span moving lo back
    if (extend_hi <= extend_lo) {
      span = extend_hi;
    } else {
      span = extend_lo;
      lo = theta;
    }
    if (span >= kPi) open = false;
  }
  double margin() const { return kPi - span; }
};

// Exact largest angular gap of a growing set, with the same arithmetic as
// half_plane_test, so that margins after a failure match a full re-test.
class GapTracker {
 public:
  explicit GapTracker(double zero_threshold) : zero_threshold_(zero_threshold) {}

  void add(cplx v) {
    const double mag = std::abs(v);
    min_abs_ = std::min(min_abs_, mag);
    max_abs_ = std::max(max_abs_, mag);
    double a = std::arg(v);
    if (a < 0) a += kTwoPi;
    if (angles_.empty()) {
      angles_.insert(a);
      gaps_.insert(kTwoPi);
      return;
    }
    const double first = *angles_.begin();
    const double last = *angles_.rbegin();
    if (a >= first && a <= last) {
      auto hi = angles_.lower_bound(a);
      auto lo = hi;
      if (*hi != a) --lo;
      erase_one(*hi - *lo);
      gaps_.insert(a - *lo);
      gaps_.insert(*hi - a);
    } else {
      erase_one(kTwoPi - (last - first));
      if (a > last) {
        gaps_.insert(a - last);
        gaps_.insert(kTwoPi - (a - first));
      } else {
        gaps_.insert(first - a);
        gaps_.insert(kTwoPi - (last - a));
      }
    }
    angles_.insert(a);
  }

  double margin() const {
    if (max_abs_ == 0.0 || min_abs_ <= zero_threshold_ * max_abs_) return -kPi;
    return *gaps_.rbegin() - kPi;
  }

 private:
  void erase_one(double g) { gaps_.erase(gaps_.find(g)); }

  double zero_threshold_;
  double min_abs_ = std::numeric_limits<double>::infinity();
  double max_abs_ = 0.0;
  std::multiset<double> angles_;
  std::multiset<double> gaps_;
};

// Fast path shared by the two growing families. `members(k)` is the k-th set
// in a chain of nested sets, which differ from the previous by `added(k)`.
// Once a set is non-PASS, supersets are decided with the exact test; a FAIL
// forces FAIL on every later superset, whose margins come from a GapTracker.
template <class Chain>
void scan_chain(CaseReport& out, const Chain& chain, const std::vector<double>& angles, const std::vector<bool>& zero,
                const StarOptions& opt) {
  Arc arc;
  GapTracker tracker(opt.zero_threshold);
  bool exact_mode = false;
  bool failed = false;
  const double band = opt.margin + 1e-12;
  for (int k = 0; k < chain.length(); ++k) {
    const auto [p, q] = chain.pair(k);
    if (failed) {
      for (int idx : chain.added(k)) tracker.add((*chain.z)[idx]);
      record(out, {p, q, Verdict::Fail, tracker.margin()});
      continue;
    }
    if (!exact_mode) {
      for (int idx : chain.added(k)) {
        if (zero[idx]) exact_mode = true;
        if (k == 0 && idx == chain.added(k).front())
          arc.start(angles[idx]);
        else
          arc.add(angles[idx]);
      }
      if (!arc.open || arc.margin() <= band) exact_mode = true;
    }
    if (!exact_mode) {
      record(out, {p, q, Verdict::Pass, arc.margin()});
      continue;
    }
    const std::vector<cplx> set = chain.set(k);
    const PairVerdict v = exact(set, p, q, opt);
    record(out, v);
    if (v.verdict == Verdict::Fail) {
      failed = true;
      for (const cplx& z : set) tracker.add(z);
    }
  }
}

// Family 1 at fixed q: p runs from m = n-q+1 down to 1; the first set is
// {m, q}, each step adds p.
struct SplitAlphaChain {
  int n, q;
  const std::vector<cplx>* z;
  int m() const { return n - q + 1; }
  int length() const { return m(); }
  std::pair<int, int> pair(int k) const { return {m() - k, q}; }
  std::vector<int> added(int k) const {
    if (k == 0) return {m() - 1, q - 1};
    return {m() - k - 1};
  }
  std::vector<cplx> set(int k) const {
    std::vector<cplx> s;
    for (int j = m() - k; j <= m(); ++j) s.push_back((*z)[j - 1]);
    s.push_back((*z)[q - 1]);
    return s;
  }
};

// Family 2 at fixed p: q runs from s = n-p+2 up to n; the first set is
// {p, s}, each step adds q.
struct SplitBetaChain {
  int n, p;
  const std::vector<cplx>* z;
  int s() const { return n - p + 2; }
  int length() const { return n - s() + 1; }
  std::pair<int, int> pair(int k) const { return {p, s() + k}; }
  std::vector<int> added(int k) const {
    if (k == 0) return {p - 1, s() - 1};
    return {s() + k - 1};
  }
  std::vector<cplx> set(int k) const {
    std::vector<cplx> out{(*z)[p - 1]};
    for (int j = s(); j <= s() + k; ++j) out.push_back((*z)[j - 1]);
    return out;
  }
};

std::vector<bool> zero_flags(const std::vector<cplx>& z, double thr) {
  double biggest = 0.0;
  for (const cplx& v : z) biggest = std::max(biggest, std::abs(v));
  std::vector<bool> out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = biggest == 0.0 || std::abs(z[k]) <= thr * biggest;
  return out;
}

// (n+3)/2 < s  <=>  2s > n+3.
int first_split_beta_p(int n) {
  // p = n - s + 2 with s >= floor((n+3)/2) + 1.
  const int s_min = (n + 3) / 2 + 1;
  return n - s_min + 2;
}

}  // namespace

StarReport star_condition_check(const ComplexVector& w, const ParamSet& params, StarOptions opt) {
  StarReport r;
  prepare(r, w, params);
  const int n = params.n;

  // Families 0 and 3 are single sets.
  record(r.cases[0], exact(star_set(r, n, 0, 1, low_end(n)), 1, low_end(n), opt));
  record(r.cases[3], exact(star_set(r, n, 3, high_start(n), n), high_start(n), n, opt));

  // Zero tests are relative to the largest element of each tested set in the
  // exact path; the fast path only needs a conservative trigger.
  std::vector<double> ang_a(n), ang_b(n);
  for (int j = 0; j < n; ++j) {
    ang_a[j] = std::arg(r.z_alpha[j]);
    ang_b[j] = std::arg(r.z_beta[j]);
  }
  const std::vector<bool> zero_a = zero_flags(r.z_alpha, opt.zero_threshold);
  const std::vector<bool> zero_b = zero_flags(r.z_beta, opt.zero_threshold);

  const int q_first = low_end(n) + 1;
  const int p_last = first_split_beta_p(n);
  const int jobs = n - q_first + 1 + std::max(0, p_last - 1);

#pragma omp parallel
  {
    CaseReport local1, local2;
    local1.worst.margin = local2.worst.margin = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic, 4) nowait
    for (int task = 0; task < jobs; ++task) {
      if (task < n - q_first + 1) {
        const int q = q_first + task;
        scan_chain(local1, SplitAlphaChain{n, q, &r.z_alpha}, ang_a, zero_a, opt);
      } else {
        const int p = 2 + (task - (n - q_first + 1));
        scan_chain(local2, SplitBetaChain{n, p, &r.z_beta}, ang_b, zero_b, opt);
      }
    }
#pragma omp critical
    {
      merge(r.cases[1], local1);
      merge(r.cases[2], local2);
    }
  }
  finish(r);
  return r;
}

StarReport star_condition_check_reference(const ComplexVector& w, const ParamSet& params, StarOptions opt) {
  StarReport r;
  prepare(r, w, params);
  const int n = params.n;
  record(r.cases[0], exact(star_set(r, n, 0, 1, low_end(n)), 1, low_end(n), opt));
  for (int q = 1; q <= n; ++q)
    for (int p = 1; p <= n; ++p) {
      const int m = n - q + 1;
      if (p <= m && 2 * m < n + 1 && n + 1 < 2 * q) record(r.cases[1], exact(star_set(r, n, 1, p, q), p, q, opt));
    }
  for (int q = 1; q <= n; ++q)
    for (int p = 1; p <= n; ++p) {
      const int s = n - p + 2;
      if (2 * s > n + 3 && s <= q) record(r.cases[2], exact(star_set(r, n, 2, p, q), p, q, opt));
    }
  record(r.cases[3], exact(star_set(r, n, 3, high_start(n), n), high_start(n), n, opt));
  finish(r);
  return r;
}

}  // namespace edgecert
