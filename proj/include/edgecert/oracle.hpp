#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgecert/certifier.hpp"
#include "edgecert/complex_linalg.hpp"
#include "edgecert/params.hpp"

namespace edgecert {

/// ||P_D (xi (x) eta)||^2 + ||P_E (conj(xi) (x) eta)||^2 at unit xi, eta, where
/// P_D, P_E project onto ker rho and ker rho^Gamma.
struct ViolationScore {
  double value = 0.0;
  ComplexVector xi;
  ComplexVector eta;
  int starts = 0;
  std::uint64_t seed = 0;
  int nonconverged = 0;          // starts that hit the iteration cap (still counted)
  int monotonicity_breaks = 0;   // iterations whose objective rose beyond rounding
  bool vacuous = false;          // both kernels empty
  std::vector<double> per_start;
};

struct OracleOptions {
  int max_iterations = 10000;
  double relative_decrease = 1e-12;
  KernelTolerance kernel{};
};

/// Kernel bases of the two matrices (orthonormal columns).
struct KernelPair {
  int n = 0;
  std::vector<ComplexVector> rho;
  std::vector<ComplexVector> rho_gamma;
};

KernelPair kernel_pair(const HermitianMatrix& rho, const HermitianMatrix& rho_gamma, int n, KernelTolerance tol = {});

/// Objective at a given (xi, eta), normalized to unit vectors.
double violation_score(const KernelPair& k, const ComplexVector& xi, const ComplexVector& eta);

/// Multi-start alternating minimization; starts run in parallel with per-start
/// generators derived from `seed`.
ViolationScore product_vector_search(const HermitianMatrix& rho, const HermitianMatrix& rho_gamma, int n, int starts,
                                     std::uint64_t seed, OracleOptions opt = {});
ViolationScore product_vector_search(const KernelPair& k, int starts, std::uint64_t seed, OracleOptions opt = {});

/// Dense rho and rho^Gamma at r = params.r, or at r_hat when r is unset.
struct DenseState {
  HermitianMatrix rho;
  HermitianMatrix rho_gamma;
  double r = 0.0;
};
DenseState dense_state(const ParamSet& params);

/// For alpha = beta every (conj xi, eta) = (c t, c alpha) lies in the range of
/// rho^Gamma, so a product vector in the range of rho exists as soon as 0 is a
/// nonnegative combination of conj(w_j). Returns that witness when it exists.
std::optional<std::pair<ComplexVector, ComplexVector>> planted_witness(const ParamSet& params, const ComplexVector& w);

/// alpha = beta = (1, ..., 1).
ParamSet broken_genericity_params(int n);

inline constexpr double kOracleFloor = 1e-4;
inline constexpr double kWitnessScore = 1e-8;

struct CrossValidation {
  int n = 0;
  int dense_corank_rho = -1;
  int dense_corank_rho_gamma = -1;
  int block_corank_rho = -1;
  int block_corank_rho_gamma = -1;
  bool structured_transpose_matches = false;
  std::string verdict;
  double oracle_score = 0.0;
  bool consistent = false;
  std::vector<std::string> mismatches;
};

/// Dense and block paths side by side, plus the oracle against the verdict.
CrossValidation cross_validate(const ParamSet& params, const Tolerances& tol = {}, int starts = 200,
                               std::uint64_t seed = 1, GenericityPolicy policy = GenericityPolicy::Require);

}  // namespace edgecert
