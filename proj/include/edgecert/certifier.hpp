#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgecert/complex_linalg.hpp"
#include "edgecert/params.hpp"
#include "edgecert/star_condition.hpp"
#include "edgecert/state_assembly.hpp"

namespace edgecert {

struct Tolerances {
  double kernel_threshold = 1e-9;
  double root_simplicity_gap = 1e-8;
  double half_plane_margin = 1e-9;
  double zero_component_threshold = 1e-10;

  void validate() const;  // all positive and finite
  KernelTolerance kernel() const { return {kernel_threshold}; }
};

struct RootResult {
  double r_hat = 0.0;
  bool simple = false;
  double gap = 0.0;        // lambda_2 - lambda_1 of D(0)
  RealVector eigenvalues;  // of D(0), ascending (only the lowest two on the fast path)
};

/// r_hat = -lambda_min(D(0)): det(D(0) + r I) vanishes exactly at the negated
/// eigenvalues. Simple iff lambda_2 - lambda_1 >= root_simplicity_gap.
RootResult find_r_hat(const HermitianMatrix& D0, const Tolerances& tol = {});

struct KernelVectorResult {
  ComplexVector w;            // unit norm, largest-modulus component positive real
  int corank = 0;
  bool ambiguous = false;
  int smallest_index = 0;     // 1-based index of the smallest |w_i|
  double smallest_ratio = 0;  // min |w_i| / max |w_i|
  bool components_nonzero = false;
};

/// Reference path: dense eigensolve of D(r_hat). `w` is empty unless corank is 1.
KernelVectorResult kernel_vector_w(const HermitianMatrix& D_at_r_hat, const Tolerances& tol = {});

/// Fast path: the two lowest eigenpairs of D(0) only. The spectral scale
/// for the kernel threshold is the row-sum bound of D(r_hat).
struct PartialRoot {
  RootResult root;
  ComplexVector lowest_vector;
  double scale = 0.0;
};
PartialRoot find_r_hat_partial(const HermitianMatrix& D0, const Tolerances& tol = {});

/// Normalizes to unit norm with the largest-modulus component positive real,
/// and fills the component statistics.
void normalize_kernel_vector(KernelVectorResult& k, const Tolerances& tol);

struct BlockCheck {
  int blocks = 0;
  int corank_sum = 0;
  int diagonal_kernel = 0;  // 1x1 diagonal entries within the threshold
  bool ambiguous = false;
  bool not_psd = false;
  double min_gap = 0.0;
  std::vector<std::string> problems;
};

enum class KernelPath { Structured, Dense };

/// Corank of every block (Structured: O(d) inertia counts, parallel over
/// blocks; Dense: eigensolve per block, serial). Blocks tagged "D" are skipped
/// when `skip_d_block` is set; their corank is supplied by the caller.
BlockCheck check_blocks(const StateAssembly& a, const Tolerances& tol, KernelPath path, bool skip_d_block = false);

enum class CertVerdict { Certified, NotCertified, Ambiguous };
std::string to_string(CertVerdict v);

struct Certificate {
  ParamSet params;
  std::string params_family = "explicit";
  std::optional<double> exploratory_r;  // user-supplied r, not used by the pipeline
  bool generic = true;
  std::size_t genericity_violations = 0;

  double r_hat = 0.0;
  bool simple_root = false;
  double root_gap = 0.0;
  int corank_D = -1;
  double D_eigen_gap = 0.0;
  bool D_ambiguous = false;

  ComplexVector w;
  int w_smallest_index = 0;
  double w_smallest_ratio = 0.0;

  std::optional<StarReport> star;

  int corank_rho_gamma = -1;
  int corank_rho = -1;
  int rank_rho = -1;
  int rank_rho_gamma = -1;
  int rho_gamma_blocks = 0;
  int rho_blocks = 0;
  std::vector<std::string> block_problems;

  CertVerdict verdict = CertVerdict::NotCertified;
  int failed_step = 0;  // 0 when nothing failed
  std::string reason;

  std::vector<std::pair<std::string, double>> timings;  // seconds
  Tolerances tolerances;
};

struct CertifyOptions {
  GenericityPolicy policy = GenericityPolicy::Require;
  KernelPath path = KernelPath::Structured;
  std::string params_family = "explicit";
};

/// Steps: (1) r_hat > 1 and simple; (2) D(r_hat) has corank one; (3) the
/// kernel vector has no zero component; (4) star condition; (5) block coranks
/// of rho^Gamma sum to 2n-3 and rho has corank one. Stops at the first failure.
/// Precondition violations (invalid params, genericity under Require) throw.
Certificate certify(const ParamSet& params, const Tolerances& tol = {}, const CertifyOptions& opt = {});

}  // namespace edgecert
