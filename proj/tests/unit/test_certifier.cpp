#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "edgecert/certificate_io.hpp"
#include "edgecert/certifier.hpp"
#include "edgecert/error.hpp"
#include "edgecert/half_plane.hpp"
#include "edgecert/krawtchouk.hpp"
#include "edgecert/star_condition.hpp"
#include "edgecert/state_construction.hpp"
#include "json.hpp"
#include "families.hpp"
#include "test_util.hpp"

using namespace edgecert;
using fixtures::quartic_params;
using testutil::e;
using testutil::kPi;

namespace {

// Frozen from an independent polynomial root finder.
constexpr double kQuarticRoot = 2.752517821929821;  // r^4 - 12 r^2 + 6 r + 17
constexpr double kCubicRoot = 2.166700881678809;    // r^3 - 6 r + 2 sqrt(2)

ParamSet section4_params(double t) {
  ParamSet p;
  p.n = 3;
  p.alpha_angles = {0.0, t, 2 * t};
  p.beta_angles = {0.0, 0.0, 0.0};
  return p;
}


HermitianMatrix D_at(ParamSet p, double r) {
  p.r = r;
  return extract_D(p);
}

// Direct alternating binomial sum in long double, independent of the library.
long double binomial_sum(int m, int k, int l) {
  auto choose = [](int a, int b) -> long double {
    if (b < 0 || b > a) return 0.0L;
    long double c = 1.0L;
    for (int i = 1; i <= b; ++i) c = c * (a - b + i) / i;
    return c;
  };
  long double s = 0.0L;
  for (int r = 0; r <= m - 1; ++r) s += (r % 2 ? -1.0L : 1.0L) * choose(k, r) * choose(l, m - 1 - r);
  return s;
}

void check_same_reports(const StarReport& a, const StarReport& b) {
  CHECK(a.verdict == b.verdict);
  for (int f = 0; f < 4; ++f) {
    CAPTURE(f);
    CHECK(a.cases[f].tested == b.cases[f].tested);
    CHECK(a.cases[f].passed == b.cases[f].passed);
    CHECK(a.cases[f].failed == b.cases[f].failed);
    CHECK(a.cases[f].ambiguous == b.cases[f].ambiguous);
    CHECK(a.cases[f].non_pass.size() == b.cases[f].non_pass.size());
    if (a.cases[f].tested > 0) CHECK(a.cases[f].worst.margin == doctest::Approx(b.cases[f].worst.margin).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("half-plane test examples") {
  const std::vector<cplx> pass{1.0, cplx(0, 1), e(kPi / 4)};
  CHECK(half_plane_test(pass).verdict == Verdict::Pass);
  CHECK(half_plane_test(pass).largest_gap == doctest::Approx(1.5 * kPi));

  const std::vector<cplx> opposite{1.0, -1.0};
  CHECK(half_plane_test(opposite).verdict == Verdict::Fail);
  const std::vector<cplx> closed{1.0, cplx(0, 1), -1.0};
  CHECK(half_plane_test(closed).verdict == Verdict::Fail);

  const std::vector<cplx> with_zero{1.0, 0.0, cplx(0, 1)};
  auto z = half_plane_test(with_zero);
  CHECK(z.verdict == Verdict::Fail);
  CHECK(z.zero_element);

  const std::vector<cplx> spread{1.0, e(2.2), e(-2.2)};
  CHECK(half_plane_test(spread).verdict == Verdict::Fail);

  // Just inside the margin band on either side.
  const std::vector<cplx> band{1.0, e(kPi - 1e-10)};
  CHECK(half_plane_test(band).verdict == Verdict::Ambiguous);
  const std::vector<cplx> clear{1.0, e(kPi - 1e-6)};
  CHECK(half_plane_test(clear).verdict == Verdict::Pass);

  const std::vector<cplx> single{cplx(-3, 1)};
  CHECK(half_plane_test(single).verdict == Verdict::Pass);
  CHECK_THROWS_AS(half_plane_test(std::vector<cplx>{}), Error);

  CHECK(combine(Verdict::Pass, Verdict::Ambiguous) == Verdict::Ambiguous);
  CHECK(combine(Verdict::Fail, Verdict::Ambiguous) == Verdict::Fail);
}

TEST_CASE("half-plane test agrees with brute-force separating directions") {
  std::mt19937_64 g(12);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<cplx> z;
    const int m = count(g);
    // Half the trials draw from a narrow sector so both outcomes occur.
    const double width = trial % 2 ? 2 * kPi : 2.5;
    for (int i = 0; i < m; ++i) z.push_back(std::polar(0.5 + i, ang(g) * width / (2 * kPi)));
    // An open half-plane exists iff some direction h has Re(conj(z) h) > 0 for all z.
    bool separable = false;
    for (int s = 0; s < 20000 && !separable; ++s) {
      const cplx h = e(2 * kPi * s / 20000.0);
      bool all = true;
      for (const cplx& v : z) all = all && (std::conj(v) * h).real() > 1e-6 * std::abs(v);
      separable = all;
    }
    const auto res = half_plane_test(z);
    if (std::abs(res.margin) < 1e-3) continue;  // brute force resolution
    CHECK((res.verdict == Verdict::Pass) == separable);
  }
}

TEST_CASE("largest root of det D") {
  auto r4 = find_r_hat(D_at(quartic_params(), 0.0));
  CHECK(r4.r_hat == doctest::Approx(kQuarticRoot).epsilon(1e-12));
  CHECK(r4.simple);
  auto r3 = find_r_hat(D_at(section4_params(kPi / 4), 0.0));
  CHECK(r3.r_hat == doctest::Approx(kCubicRoot).epsilon(1e-12));
  CHECK(r3.simple);

  auto degenerate = find_r_hat(HermitianMatrix(ComplexMatrix(-5.0 * ComplexMatrix::Identity(4, 4))));
  CHECK(degenerate.r_hat == doctest::Approx(5.0));
  CHECK_FALSE(degenerate.simple);

  // The partial solver gives the same root and the same kernel direction.
  auto part = find_r_hat_partial(D_at(quartic_params(), 0.0));
  CHECK(part.root.r_hat == doctest::Approx(kQuarticRoot).epsilon(1e-12));
  CHECK(part.root.simple);
}

TEST_CASE("kernel vectors are parallel to the closed forms") {
  for (double t : {kPi / 4, 0.4, 2.0}) {
    const double r = find_r_hat(D_at(section4_params(t), 0.0)).r_hat;
    const cplx ab = std::conj(e(t));
    ComplexVector expect(3);
    expect << -2.0 * ab * ab + ab / r, 2.0 * ab / r - 1.0, r - 1.0 / r;
    auto k = kernel_vector_w(D_at(section4_params(t), r));
    REQUIRE(k.corank == 1);
    CHECK(testutil::parallelism(k.w, expect) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const double r = kQuarticRoot;
  const double s3 = std::sqrt(3.0);
  const cplx i(0, 1);
  ComplexVector expect(4);
  expect << 2 * r * r - 4.0 * i * s3 * r - 5.0 + 5.0 * i * s3, -4 * r * r - 2.0 * i * s3 * r + 16.0 + 4.0 * i * s3,
      -2 * r * r + 4 * r - 3.0 - 3.0 * i * s3, 2 * r * r * r - 12 * r + 8;
  auto k = kernel_vector_w(D_at(quartic_params(), r));
  REQUIRE(k.corank == 1);
  CHECK(testutil::parallelism(k.w, expect) == doctest::Approx(1.0).epsilon(1e-12));
  auto part = find_r_hat_partial(D_at(quartic_params(), 0.0));
  CHECK(testutil::parallelism(part.lowest_vector, expect) == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  auto z = kernel_vector_w(HermitianMatrix(diag));
  CHECK(z.corank == 1);
  CHECK(std::abs(std::abs(z.w[0]) - 1.0) < 1e-15);
  CHECK_FALSE(z.components_nonzero);
  CHECK(z.smallest_index != 1);
}

TEST_CASE("star condition: fast scan matches the reference") {
  std::mt19937_64 g(13);
  for (int n = 3; n <= 40; ++n) {
    CAPTURE(n);
    auto params = testutil::random_params(g, n);
    const ComplexVector w = testutil::random_vector(g, n);
    check_same_reports(star_condition_check(w, params), star_condition_check_reference(w, params));

    // Vectors with a narrow spread of arguments pass most sets.
    ComplexVector narrow(n);
    std::uniform_real_distribution<double> small(-0.3, 0.3);
    for (int j = 1; j <= n; ++j) narrow[j - 1] = std::conj(std::polar(1.0 + j, small(g)) * std::conj(params.alpha(j)));
    check_same_reports(star_condition_check(narrow, params), star_condition_check_reference(narrow, params));
  }
  for (int n : {3, 4, 7, 12, 25}) {
    CAPTURE(n);
    auto c = certify(default_params(n), {}, {GenericityPolicy::Report});
    REQUIRE(c.star.has_value());
    auto ref = star_condition_check_reference(c.w, c.params);
    check_same_reports(*c.star, ref);
    CHECK(ref.verdict == Verdict::Pass);
  }
}

TEST_CASE("star condition: set families") {
  // n = 5: low_alpha and high_beta each reduce to their largest set.
  auto params = perturbed_params(5, 1e-2);
  ComplexVector w = ComplexVector::Ones(5);
  auto rep = star_condition_check_reference(w, params);
  CHECK(rep.cases[0].name == "low_alpha");
  CHECK(rep.cases[0].tested == 1);  // the largest set covers the smaller ones
  CHECK(rep.cases[3].tested == 1);
  CHECK(rep.z_alpha.size() == 5);
  CHECK(std::abs(rep.z_alpha[1] - params.alpha(2)) < 1e-15);

  // conj(w_1) alpha_1 = 1 and conj(w_3) alpha_3 = -1: the low_alpha set with q >= 3 fails.
  w[2] = -params.alpha(3);
  auto fail = star_condition_check(w, params);
  CHECK(fail.cases[0].verdict() == Verdict::Fail);
  CHECK(fail.verdict == Verdict::Fail);
  REQUIRE_FALSE(fail.cases[0].non_pass.empty());
  CHECK(fail.cases[0].non_pass.front().q == 3);
  auto set = star_set(fail, 5, 0, 1, 3);
  CHECK(set.size() == 3);
  CHECK(std::abs(set[2] + 1.0) < 1e-15);
}

TEST_CASE("block corank checks: structured and dense agree") {
  for (int n = 3; n <= 12; ++n) {
    CAPTURE(n);
    auto p = perturbed_params(n, 1e-3);
    p.r = find_r_hat(extract_D(perturbed_params(n, 1e-3))).r_hat;
    auto rg = assemble_rho_gamma(p);
    auto rho = assemble_rho(p);
    Tolerances tol;
    for (const auto* a : {&rg, &rho}) {
      auto fast = check_blocks(*a, tol, KernelPath::Structured);
      auto dense = check_blocks(*a, tol, KernelPath::Dense);
      CHECK(fast.corank_sum == dense.corank_sum);
      CHECK(fast.diagonal_kernel == dense.diagonal_kernel);
      CHECK(fast.not_psd == dense.not_psd);
      CHECK(fast.ambiguous == dense.ambiguous);
      // Against a dense eigensolve of the whole matrix.
      CHECK(fast.corank_sum + fast.diagonal_kernel == kernel_report(a->densify()).corank);
    }
  }
}

TEST_CASE("certify: the 3 x 3 and quartic 4 x 4 examples") {
  auto c5 = certify(quartic_params());
  CHECK(c5.verdict == CertVerdict::Certified);
  CHECK(c5.r_hat == doctest::Approx(kQuarticRoot).epsilon(1e-12));
  CHECK(c5.corank_rho == 1);
  CHECK(c5.corank_rho_gamma == 5);
  CHECK(c5.rank_rho == 15);
  CHECK(c5.rank_rho_gamma == 11);

  for (double t : {kPi / 4, 0.5, 1.9}) {
    auto c3 = certify(section4_params(t));
    CHECK(c3.verdict == CertVerdict::Certified);
    CHECK(c3.star->verdict == Verdict::Pass);
  }

  auto c10 = certify(default_params(10), {}, {GenericityPolicy::Report, KernelPath::Structured, "default"});
  CHECK(c10.verdict == CertVerdict::Certified);
  CHECK_FALSE(c10.generic);
  CHECK(c10.genericity_violations > 0);
  CHECK(c10.D_eigen_gap > 1e6 * c10.tolerances.kernel_threshold * std::max(1.0, c10.r_hat));

  CHECK_THROWS_AS(certify(default_params(10)), GenericityError);
  auto same = quartic_params();
  same.beta_angles = same.alpha_angles;
  same.beta_angles.back() = 0.0;
  same.alpha_angles.back() = 0.0;
  CHECK_THROWS_AS(certify(same), GenericityError);
}

TEST_CASE("certify: fast and dense reference paths agree") {
  for (int n = 3; n <= 12; ++n) {
    CAPTURE(n);
    auto p = perturbed_params(n, 1e-3);
    auto fast = certify(p);
    auto dense = certify(p, {}, {GenericityPolicy::Require, KernelPath::Dense});
    CHECK(fast.verdict == dense.verdict);
    CHECK(fast.r_hat == doctest::Approx(dense.r_hat).epsilon(1e-12));
    CHECK(fast.corank_rho == dense.corank_rho);
    CHECK(fast.corank_rho_gamma == dense.corank_rho_gamma);
    CHECK(testutil::parallelism(fast.w, dense.w) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fast.star->min_margin() == doctest::Approx(dense.star->min_margin()).epsilon(1e-8));
  }
}

TEST_CASE("certify: failing and ambiguous steps") {
  // Far from the default family the construction breaks down at some step.
  std::mt19937_64 g(31);
  int not_certified = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto c = certify(testutil::random_params(g, 6));
    if (c.verdict != CertVerdict::Certified) {
      ++not_certified;
      CHECK(c.failed_step >= 1);
      CHECK_FALSE(c.reason.empty());
    } else {
      CHECK(c.failed_step == 0);
    }
  }
  CHECK(not_certified > 0);

  // A huge margin turns every passing set into an ambiguous one.
  Tolerances wide;
  wide.half_plane_margin = 10.0;
  auto amb = certify(quartic_params(), wide);
  CHECK(amb.verdict == CertVerdict::Ambiguous);
  CHECK(amb.failed_step == 4);

  Tolerances bad;
  bad.kernel_threshold = -1.0;
  CHECK_THROWS_AS(certify(quartic_params(), bad), Error);
}

TEST_CASE("certificate document") {
  auto c = certify(default_params(6), {}, {GenericityPolicy::Report, KernelPath::Structured, "default"});
  auto doc = nlohmann::json::parse(certificate_to_json(c));
  CHECK(doc["n"] == 6);
  CHECK(doc["verdict"] == "CERTIFIED");
  CHECK(doc["params"]["family"] == "default");
  CHECK(doc["generic"] == false);
  CHECK(doc["w"].size() == 6);
  CHECK(doc["star_report"]["cases"].size() == 4);
  CHECK(doc["corank_rho"] == 1);
  CHECK(doc["corank_rho_gamma"] == 9);
  CHECK(doc.contains("timings"));
  CHECK(doc["r_hat"].get<double>() == doctest::Approx(c.r_hat));
  auto quiet = nlohmann::json::parse(certificate_to_json(c, {false, -1}));
  CHECK_FALSE(quiet.contains("timings"));
}

TEST_CASE("Krawtchouk relation") {
  CHECK(krawtchouk_check(3, 3, 1, 3));
  CHECK_FALSE(krawtchouk_check(3, 3, 2, 2));
  CHECK(krawtchouk_sum(3, 2, 2) == "-2");
  for (int n = 3; n <= 10; ++n) CHECK(krawtchouk_check(n, n, 1, 2 * n - 3));
  for (int n = 2; n <= 10; ++n)
    for (int k = 1; k <= 2 * n - 3; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const bool vanishes = binomial_sum(n, k, 2 * n - 2 - k) == 0.0L;
      CHECK(krawtchouk_check(n, n, k, 2 * n - 2 - k) == vanishes);
      CHECK(vanishes == (k % 2 == 1));
    }
  CHECK_FALSE(krawtchouk_check(4, 4, 1, 1));  // k + l != m + n - 2
}
