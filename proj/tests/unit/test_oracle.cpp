#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "edgecert/bilinear_system.hpp"
#include "edgecert/error.hpp"
#include "edgecert/oracle.hpp"
#include "edgecert/state_construction.hpp"
#include "families.hpp"
#include "test_util.hpp"

using namespace edgecert;
using fixtures::equal_params;
using fixtures::quartic_params;
using testutil::kPi;

namespace {


}  // namespace

TEST_CASE("separable diagonal state is vacuous") {
  auto id = HermitianMatrix(ComplexMatrix(ComplexMatrix::Identity(9, 9) / 9.0));
  auto s = product_vector_search(id, id, 3, 5, 1);
  CHECK(s.vacuous);
  CHECK(s.value == 0.0);
}

TEST_CASE("certified small states stay above the floor") {
  struct Case {
    ParamSet p;
    GenericityPolicy policy;
  };
  for (const auto& c : {Case{default_params(3), GenericityPolicy::Report}, Case{default_params(4), GenericityPolicy::Report},
                        Case{quartic_params(), GenericityPolicy::Require}}) {
    auto st = dense_state(c.p);
    auto s = product_vector_search(st.rho, st.rho_gamma, c.p.n, 200, 7);
    CAPTURE(c.p.n);
    CHECK_FALSE(s.vacuous);
    CHECK(s.starts == 200);
    CHECK(s.value > kOracleFloor);
    CHECK(s.per_start.size() == 200);
    CHECK(s.monotonicity_breaks == 0);
    // The reported minimizer reproduces the score.
    auto k = kernel_pair(st.rho, st.rho_gamma, c.p.n);
    CHECK(violation_score(k, s.xi, s.eta) == doctest::Approx(s.value).epsilon(1e-9));
  }
}

TEST_CASE("search is reproducible from the seed") {
  auto st = dense_state(quartic_params());
  auto a = product_vector_search(st.rho, st.rho_gamma, 4, 16, 99);
  auto b = product_vector_search(st.rho, st.rho_gamma, 4, 16, 99);
  CHECK(a.per_start == b.per_start);
}

TEST_CASE("planted witness for alpha = beta") {
  // Odd n keeps the lowest eigenvalue of D simple, so w is defined.
  for (int n : {3, 5}) {
    CAPTURE(n);
    auto p = equal_params(n);
    auto st = dense_state(p);
    auto k = kernel_pair(st.rho, st.rho_gamma, n);
    CHECK(k.rho.size() == 1);

    ParamSet at_r = p;
    at_r.r = st.r;
    auto kv = kernel_vector_w(extract_D(at_r));
    REQUIRE(kv.w.size() == n);
    auto witness = planted_witness(p, kv.w);
    REQUIRE(witness.has_value());
    CHECK(violation_score(k, witness->first, witness->second) < kWitnessScore);
  }
  CHECK_THROWS_AS(planted_witness(equal_params(4), ComplexVector()), Error);
}

TEST_CASE("search finds planted witnesses from any seed") {
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    for (const auto& p : {equal_params(n), broken_genericity_params(n)}) {
      auto st = dense_state(p);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto s = product_vector_search(st.rho, st.rho_gamma, n, 50, seed);
        CHECK(s.value < kWitnessScore);
      }
    }
  }
}

TEST_CASE("cross validation of dense and block paths") {
  for (int n = 3; n <= 8; ++n) {
    CAPTURE(n);
    auto cv = cross_validate(default_params(n), {}, 20, 1, GenericityPolicy::Report);
    CHECK(cv.structured_transpose_matches);
    CHECK(cv.dense_corank_rho == 1);
    CHECK(cv.dense_corank_rho_gamma == 2 * n - 3);
    CHECK(cv.block_corank_rho == cv.dense_corank_rho);
    CHECK(cv.block_corank_rho_gamma == cv.dense_corank_rho_gamma);
    if (n <= 5) {
      CHECK(cv.consistent);
      CHECK(cv.mismatches.empty());
    } else {
      // From n = 6 the middle entries of w are small, so product vectors near
      // e_m (x) e_m come within the empirical floor. Only that check may trip.
      for (const auto& m : cv.mismatches) CHECK(m.find("below the floor") != std::string::npos);
    }
  }
  auto cv = cross_validate(quartic_params(), {}, 50, 2);
  CHECK(cv.consistent);
  CHECK(16 - cv.dense_corank_rho == 15);
  CHECK(16 - cv.dense_corank_rho_gamma == 11);
}

TEST_CASE("alternative construction corank pair") {
  auto pair = assemble_alternative_4x4(1.3, 0.6, 0.2);
  auto rho = pair.rho.densify();
  auto rg = pair.rho_gamma.densify();
  CHECK(kernel_report(rho).corank == 1);
  CHECK(kernel_report(rg).corank == 5);
  Tolerances tol;
  CHECK(check_blocks(pair.rho, tol, KernelPath::Dense).corank_sum + check_blocks(pair.rho, tol, KernelPath::Dense).diagonal_kernel == 1);
  const auto gblocks = check_blocks(pair.rho_gamma, tol, KernelPath::Dense);
  CHECK(gblocks.corank_sum + gblocks.diagonal_kernel == 5);
}

TEST_CASE("dense gate") {
  CHECK_THROWS_AS(dense_state(default_params(13)), Error);
}
