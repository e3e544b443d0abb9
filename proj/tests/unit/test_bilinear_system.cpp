#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "edgecert/bilinear_system.hpp"
#include "edgecert/error.hpp"
#include "edgecert/state_construction.hpp"
#include "solutions.hpp"
#include "test_util.hpp"

using namespace edgecert;
using testutil::random_params;
using testutil::random_vector;
using namespace fixtures;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

TEST_CASE("eval_form") {
  std::mt19937_64 g(1);
  ComplexVector gamma = random_vector(g, 5).normalized();
  for (int i = 0; i < 5; ++i) gamma[i] /= std::abs(gamma[i]);
  ComplexVector x = random_vector(g, 5), y = random_vector(g, 5);
  for (int i = 1; i <= 5; ++i) CHECK(eval_form(i, i, gamma, x, y) == cplx{});
  // Antisymmetry: [i,j] = -gamma_i^{-1} gamma_j [j,i].
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const cplx lhs = eval_form(i, j, gamma, x, y);
      const cplx rhs = -(gamma[j - 1] / gamma[i - 1]) * eval_form(j, i, gamma, x, y);
      CHECK(std::abs(lhs - rhs) < 1e-14);
    }
  // Equal gamma entries and proportional rows.
  ComplexVector ones = ComplexVector::Ones(4);
  ComplexVector a = ComplexVector::Constant(4, testutil::e(0.4));
  CHECK(std::abs(eval_form(1, 3, a, a, ones)) < 1e-15);
  CHECK_THROWS_AS(eval_form(0, 1, a, a, ones), Error);
}

TEST_CASE("system rows for small n") {
  auto rows3 = build_system(3);
  CHECK(rows3.size() == 3);
  CHECK(describe_row(rows3[0]) == "[1,2]_alpha");
  CHECK(describe_row(rows3[1]) == "[1,3]_alpha");
  CHECK(describe_row(rows3[2]) == "[2,3]_beta");

  std::vector<std::string> five;
  for (const auto& r : build_system(5)) five.push_back(describe_row(r));
  const std::vector<std::string> expect5{"[1,2]_alpha",          "[1,3]_alpha", "[1,4]_alpha - [2,3]_alpha",
                                         "[1,5]_alpha - [2,4]_alpha", "[4,5]_beta",  "[3,5]_beta",
                                         "[2,5]_beta - [3,4]_beta"};
  CHECK(five == expect5);

  std::vector<std::string> six;
  for (const auto& r : build_system(6)) six.push_back(describe_row(r));
  CHECK(six[4] == "[1,6]_alpha - [2,5]_alpha + [3,4]_alpha");
  CHECK(six[8] == "[2,6]_beta - [3,5]_beta");

  for (int n = 3; n <= 20; ++n) CHECK(static_cast<int>(build_system(n).size()) == 2 * n - 3);
  CHECK_THROWS_AS(build_system(2), Error);
}

TEST_CASE("generated solutions satisfy the system") {
  std::mt19937_64 g(2);
  auto p5 = random_params(g, 5);
  SolutionCase low{CaseTag::AlphaLow, 1, 3, cplx(1.0), ComplexVector::Zero(5), false};
  low.c.head(3).setOnes();
  auto [x5, y5] = generate_solution(low, p5);
  CHECK(max_residual(p5, x5, y5) <= 100 * kEps);

  auto p7 = random_params(g, 7);
  SolutionCase split{CaseTag::AlphaSplit, 1, 6, cplx(0.5, 1.0), ComplexVector::Zero(7), false};
  split.c[0] = 1.0;
  split.c[1] = cplx(0.0, -2.0);
  split.c[5] = 0.7;
  auto [x7, y7] = generate_solution(split, p7);
  CHECK(max_residual(p7, x7, y7) <= 100 * kEps);
  for (int j : {3, 4, 5, 7}) {
    CHECK(x7[j - 1] == cplx{});
    CHECK(y7[j - 1] == cplx{});
  }

  // The n = 3 case list, item (iv): v_1 = 0, v_j = (c_j t, c_j beta_j).
  auto p3 = random_params(g, 3);
  SolutionCase high{CaseTag::BetaHigh, 2, 3, cplx(1.3), ComplexVector::Zero(3), false};
  high.c << 0.0, 1.0, cplx(0, 1);
  auto [x3, y3] = generate_solution(high, p3);
  CHECK(x3[0] == cplx{});
  CHECK(y3[0] == cplx{});
  for (int j = 2; j <= 3; ++j) {
    CHECK(std::abs(std::conj(x3[j - 1]) - high.c[j - 1] * high.t) < 1e-15);
    CHECK(std::abs(y3[j - 1] - high.c[j - 1] * p3.beta(j)) < 1e-15);
  }
  CHECK(max_residual(p3, x3, y3) <= 100 * kEps);
  // At n = 4 the beta-parallel tail must start at j >= 3.
  CHECK_FALSE(case_admits(CaseTag::BetaHigh, 4, 2, 4));
  CHECK(case_admits(CaseTag::BetaHigh, 4, 3, 4));

  // Support violation is rejected.
  SolutionCase bad = low;
  bad.c[4] = 1.0;
  CHECK_THROWS_AS(generate_solution(bad, p5), Error);
}

TEST_CASE("classify: zero factor, non-solutions, genericity") {
  std::mt19937_64 g(3);
  auto p = random_params(g, 5);
  auto sc = classify_solution(ComplexVector::Zero(5), random_vector(g, 5), p);
  REQUIRE(sc.has_value());
  CHECK(sc->tag == CaseTag::ZeroFactor);
  CHECK_FALSE(classify_solution(random_vector(g, 5), random_vector(g, 5), p).has_value());
  CHECK_THROWS_AS(classify_solution(ComplexVector::Zero(5), ComplexVector::Ones(5), default_params(5)),
                  GenericityError);
}

TEST_CASE("classify inverts generate for every case") {
  std::mt19937_64 g(4);
  std::uniform_int_distribution<int> pick_n(3, 10);
  const CaseTag tags[] = {CaseTag::AlphaLow, CaseTag::AlphaSplit, CaseTag::BetaSplit, CaseTag::BetaHigh};
  for (CaseTag tag : tags) {
    int done = 0;
    while (done < 100) {
      const int n = pick_n(g);
      if (!admissible_for_some_case(n, tag)) continue;
      auto params = random_params(g, n);
      auto sc = random_case(g, n, draw_case(g, n, tag));
      auto [x, y] = generate_solution(sc, params);
      auto got = classify_solution(x, y, params);
      REQUIRE(got.has_value());
      CAPTURE(n);
      CAPTURE(to_string(tag));
      if (got->overlap) CHECK(static_cast<int>(got->tag) <= static_cast<int>(tag));
      else CHECK(got->tag == tag);
      // The extracted data regenerate the same vectors.
      auto [x2, y2] = generate_solution(*got, params);
      CHECK((x2 - x).norm() <= 1e-12 * x.norm());
      CHECK((y2 - y).norm() <= 1e-12 * y.norm());
      ++done;
    }
  }
}

TEST_CASE("generated solutions make every triangle form vanish") {
  std::mt19937_64 g(6);
  const CaseTag tags[] = {CaseTag::AlphaLow, CaseTag::AlphaSplit, CaseTag::BetaSplit, CaseTag::BetaHigh};
  for (int n = 3; n <= 10; ++n)
    for (CaseTag tag : tags) {
      if (!admissible_for_some_case(n, tag)) continue;
      auto params = random_params(g, n);
      auto [x, y] = generate_solution(random_case(g, n, draw_case(g, n, tag)), params);
      const ComplexVector xc = x.conjugate();
      const ComplexVector a = alpha_vector(params), b = beta_vector(params);
      for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          const cplx v = k <= n + 1 - j ? eval_form(j, k, a, xc, y) : eval_form(j, k, b, xc, y);
          CHECK(std::abs(v) < 1e-13);
        }
    }
}

TEST_CASE("system solutions are exactly the product vectors in the range of the partial transpose") {
  std::mt19937_64 g(7);
  const CaseTag tags[] = {CaseTag::AlphaLow, CaseTag::AlphaSplit, CaseTag::BetaSplit, CaseTag::BetaHigh};
  for (int n = 3; n <= 10; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      auto params = random_params(g, n);
      const ComplexMatrix k = kernel_matrix(params);
      REQUIRE(k.cols() == 2 * n - 3);
      // Solutions: orthogonal to the kernel.
      const CaseTag tag = tags[trial % 4];
      if (admissible_for_some_case(n, tag)) {
        auto [x, y] = generate_solution(random_case(g, n, draw_case(g, n, tag)), params);
        const ComplexVector v = product_vector(x, y);
        CHECK((k.adjoint() * v).norm() <= 1e-9 * v.norm());
        CHECK(max_residual(params, x, y) <= 1e-9 * x.norm() * y.norm());
      }
      // Random pairs: neither orthogonal nor solutions.
      const ComplexVector x = random_vector(g, n), y = random_vector(g, n);
      const ComplexVector v = product_vector(x, y);
      const bool orthogonal = (k.adjoint() * v).norm() <= 1e-9 * v.norm();
      const bool solves = max_residual(params, x, y) <= 1e-9 * x.norm() * y.norm();
      CHECK(orthogonal == solves);
      CHECK_FALSE(solves);
    }
  }
}

TEST_CASE("two vanishing forms through i force the third") {
  std::mt19937_64 g(8);
  std::uniform_int_distribution<int> pick_n(3, 10);
  int holds = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = pick_n(g);
    std::uniform_int_distribution<int> idx(1, n);
    int i = idx(g), j = idx(g), k = idx(g);
    if (i == j || j == k || i == k) {
      --trial;
      continue;
    }
    ComplexVector gamma = random_vector(g, n);
    for (int m = 0; m < n; ++m) gamma[m] /= std::abs(gamma[m]);
    ComplexVector x = random_vector(g, n), y = random_vector(g, n);
    // Solve [i,j] = [i,k] = 0 for y_j, y_k given everything else.
    y[j - 1] = gamma[j - 1] / gamma[i - 1] * x[j - 1] * y[i - 1] / x[i - 1];
    y[k - 1] = gamma[k - 1] / gamma[i - 1] * x[k - 1] * y[i - 1] / x[i - 1];
    const auto outcome = lemma_basic_property(i, j, k, gamma, x, y);
    CHECK(outcome == PropertyOutcome::Holds);
    holds += outcome == PropertyOutcome::Holds;
  }
  CHECK(holds == 1000);

  // n = 3 instance with rows (1,2), (1,3) vanishing.
  ComplexVector gamma(3), x(3), y(3);
  gamma << 1.0, testutil::e(0.5), testutil::e(-1.2);
  x << 1.0, cplx(2, 1), cplx(0, 3);
  y << 0.5, 0.0, 0.0;
  y[1] = gamma[1] * x[1] * y[0];
  y[2] = gamma[2] * x[2] * y[0];
  CHECK(std::abs(eval_form(2, 3, gamma, x, y)) < 1e-14);
  CHECK(lemma_basic_property(1, 2, 3, gamma, x, y) == PropertyOutcome::Holds);

  // Premise fails when (x_i, y_i) = 0.
  x[0] = 0.0;
  y[0] = 0.0;
  CHECK(lemma_basic_property(1, 2, 3, gamma, x, y) == PropertyOutcome::Vacuous);
}
