#include "edgecert/certifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <omp.h>

#include "edgecert/error.hpp"
#include "edgecert/state_construction.hpp"
#include "edgecert/structured_spectrum.hpp"

namespace edgecert {

void Tolerances::validate() const {
  for (double v : {kernel_threshold, root_simplicity_gap, half_plane_margin, zero_component_threshold})
    if (!(v > 0.0) || !std::isfinite(v)) throw_invalid("tolerances must be positive and finite");
}

RootResult find_r_hat(const HermitianMatrix& D0, const Tolerances& tol) {
  RootResult r;
  r.eigenvalues = eigvalsh(D0);
  r.r_hat = -r.eigenvalues[0];
  r.gap = r.eigenvalues.size() > 1 ? r.eigenvalues[1] - r.eigenvalues[0] : std::numeric_limits<double>::infinity();
  r.simple = r.gap >= tol.root_simplicity_gap;
  return r;
}

void normalize_kernel_vector(KernelVectorResult& k, const Tolerances& tol) {
  if (k.w.size() == 0) return;
  k.w.normalize();
  Eigen::Index big = 0;
  k.w.cwiseAbs().maxCoeff(&big);
  const cplx phase = std::conj(k.w[big]) / std::abs(k.w[big]);
  k.w *= phase;
  k.w[big] = std::abs(k.w[big]);
  const double top = std::abs(k.w[big]);
  Eigen::Index small = 0;
  const double low = k.w.cwiseAbs().minCoeff(&small);
  k.smallest_index = static_cast<int>(small) + 1;
  k.smallest_ratio = low / top;
  k.components_nonzero = k.smallest_ratio > tol.zero_component_threshold;
}

KernelVectorResult kernel_vector_w(const HermitianMatrix& D_at_r_hat, const Tolerances& tol) {
  KernelVectorResult k;
  const KernelReport rep = kernel_report(D_at_r_hat, tol.kernel());
  k.corank = rep.corank;
  k.ambiguous = rep.ambiguous;
  if (rep.corank == 1) {
    k.w = rep.kernel_basis.front();
    normalize_kernel_vector(k, tol);
  }
  return k;
}

PartialRoot find_r_hat_partial(const HermitianMatrix& D0, const Tolerances& tol) {
  PartialRoot out;
  const int count = std::min(2, D0.dim());
  const EigenDecomposition eig = lowest_eigenpairs(D0, count, true);
  out.root.eigenvalues = eig.values;
  out.root.r_hat = -eig.values[0];
  out.root.gap = count > 1 ? eig.values[1] - eig.values[0] : std::numeric_limits<double>::infinity();
  out.root.simple = out.root.gap >= tol.root_simplicity_gap;
  out.lowest_vector = eig.vectors.col(0);
  ComplexMatrix shifted = D0.matrix();
  shifted.diagonal().array() += out.root.r_hat;
  out.scale = row_sum_norm(shifted);
  return out;
}

BlockCheck check_blocks(const StateAssembly& a, const Tolerances& tol, KernelPath path, bool skip_d_block) {
  BlockCheck out;
  out.min_gap = std::numeric_limits<double>::infinity();
  const int count = static_cast<int>(a.blocks.size());
  std::vector<int> corank(count, 0);
  std::vector<char> ambiguous(count, 0), not_psd(count, 0);
  std::vector<double> gap(count, std::numeric_limits<double>::infinity());

  auto dense_check = [&](int b) {
    const KernelReport rep = kernel_report(a.blocks[b].matrix(), tol.kernel());
    corank[b] = rep.corank;
    ambiguous[b] = rep.ambiguous;
    not_psd[b] = rep.not_psd;
    gap[b] = rep.eigen_gap;
  };

  if (path == KernelPath::Structured) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int b = 0; b < count; ++b) {
      if (skip_d_block && a.blocks[b].tag == "D") continue;
      const auto s = a.blocks[b].structure();
      if (!s) {
        dense_check(b);
        continue;
      }
      const StructuredKernelReport rep = structured_kernel_report(*s, tol.kernel());
      corank[b] = rep.corank;
      ambiguous[b] = rep.ambiguous;
      not_psd[b] = rep.not_psd;
      gap[b] = rep.eigen_gap_lower;
    }
  } else {
    for (int b = 0; b < count; ++b) {
      if (skip_d_block && a.blocks[b].tag == "D") continue;
      dense_check(b);
    }
  }

  for (int b = 0; b < count; ++b) {
    if (skip_d_block && a.blocks[b].tag == "D") continue;
    ++out.blocks;
    out.corank_sum += corank[b];
    out.ambiguous = out.ambiguous || ambiguous[b];
    out.not_psd = out.not_psd || not_psd[b];
    out.min_gap = std::min(out.min_gap, gap[b]);
    const std::string name = a.blocks[b].tag.empty() ? "block " + std::to_string(b) : a.blocks[b].tag;
    if (not_psd[b]) out.problems.push_back(name + ": not positive semidefinite");
    if (ambiguous[b]) out.problems.push_back(name + ": eigenvalue inside the ambiguity band");
  }
  const double thr = tol.kernel_threshold;
  for (const auto& [label, v] : a.diagonal) {
    if (std::abs(v) <= thr * std::max(1.0, std::abs(v))) ++out.diagonal_kernel;
    if (v < -thr) {
      out.not_psd = true;
      out.problems.push_back("negative diagonal entry");
    }
  }
  return out;
}

std::string to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::Certified: return "CERTIFIED";
    case CertVerdict::NotCertified: return "NOT_CERTIFIED";
    case CertVerdict::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

namespace {

class StepClock {
 public:
  explicit StepClock(Certificate& c) : cert_(c), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    cert_.timings.emplace_back(name, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  Certificate& cert_;
  std::chrono::steady_clock::time_point start_;
};

Certificate& stop(Certificate& c, CertVerdict v, int step, std::string reason) {
  c.verdict = v;
  c.failed_step = step;
  c.reason = std::move(reason);
  return c;
}

}  // namespace

Certificate certify(const ParamSet& params, const Tolerances& tol, const CertifyOptions& opt) {
  tol.validate();
  check_params(params, opt.policy);
  const int n = params.n;

  Certificate c;
  c.params = params;
  c.params_family = opt.params_family;
  c.exploratory_r = params.r;
  c.tolerances = tol;
  c.genericity_violations = count_genericity_violations(params);
  c.generic = c.genericity_violations == 0;
  StepClock clock(c);

  // Step 1: largest root of det D(r).
  ParamSet p0 = params;
  p0.r = 0.0;
  const HermitianMatrix D0 = extract_D(p0);
  const bool fast = opt.path == KernelPath::Structured;
  PartialRoot partial;
  RootResult root;
  if (fast) {
    partial = find_r_hat_partial(D0, tol);
    root = partial.root;
  } else {
    root = find_r_hat(D0, tol);
  }
  c.r_hat = root.r_hat;
  c.simple_root = root.simple;
  c.root_gap = root.gap;
  clock.lap("find_r_hat");
  if (!(root.r_hat > 1.0)) return stop(c, CertVerdict::NotCertified, 1, "largest root r_hat <= 1");
  if (!root.simple) return stop(c, CertVerdict::NotCertified, 1, "largest root is not simple");

  // Step 2: corank of D(r_hat) from the shifted spectrum. The fast path only
  // knows the two lowest eigenvalues; the rest lie above the second.
  const RealVector shifted = root.eigenvalues.array() + root.r_hat;
  const double scale = fast ? partial.scale : shifted.cwiseAbs().maxCoeff();
  const KernelReport drep = classify_spectrum(shifted, scale, tol.kernel());
  c.corank_D = drep.corank;
  c.D_eigen_gap = drep.eigen_gap;
  c.D_ambiguous = drep.ambiguous;
  clock.lap("corank_D");
  if (drep.ambiguous) return stop(c, CertVerdict::Ambiguous, 2, "D(r_hat) has an eigenvalue inside the ambiguity band");
  if (drep.corank != 1)
    return stop(c, CertVerdict::NotCertified, 2, "D(r_hat) has corank " + std::to_string(drep.corank));

  // Step 3: kernel vector with no vanishing component.
  KernelVectorResult kv;
  if (fast) {
    kv.corank = 1;
    kv.w = partial.lowest_vector;
    normalize_kernel_vector(kv, tol);
  } else {
    ParamSet pr = params;
    pr.r = root.r_hat;
    kv = kernel_vector_w(extract_D(pr), tol);
  }
  c.w = kv.w;
  c.w_smallest_index = kv.smallest_index;
  c.w_smallest_ratio = kv.smallest_ratio;
  clock.lap("kernel_vector");
  if (kv.corank != 1 || kv.w.size() != n)
    return stop(c, CertVerdict::NotCertified, 3, "kernel vector unavailable");
  if (!kv.components_nonzero)
    return stop(c, CertVerdict::NotCertified, 3, "w_" + std::to_string(kv.smallest_index) + " vanishes");

  // Step 4: every tested set lies in an open half-plane.
  const StarOptions sopt{tol.half_plane_margin, tol.zero_component_threshold};
  c.star = opt.path == KernelPath::Structured ? star_condition_check(c.w, params, sopt)
                                              : star_condition_check_reference(c.w, params, sopt);
  clock.lap("star_condition");
  if (c.star->verdict == Verdict::Fail) return stop(c, CertVerdict::NotCertified, 4, "a tested set fails the half-plane test");
  if (c.star->verdict == Verdict::Ambiguous)
    return stop(c, CertVerdict::Ambiguous, 4, "a tested set is inside the half-plane margin band");

  // Step 5: block coranks of the assembled pair.
  ParamSet pr = params;
  pr.r = root.r_hat;
  const StateAssembly rho_gamma = assemble_rho_gamma(pr, GenericityPolicy::Report);
  const BlockCheck g = check_blocks(rho_gamma, tol, opt.path);
  c.rho_gamma_blocks = static_cast<int>(rho_gamma.blocks.size());
  c.corank_rho_gamma = g.corank_sum + g.diagonal_kernel;
  c.rank_rho_gamma = n * n - c.corank_rho_gamma;
  clock.lap("blocks_rho_gamma");

  StateAssembly rho = partial_transpose(rho_gamma);
  int d_blocks = 0;
  for (BlockSpec& b : rho.blocks) {
    const bool is_d = b.labels.front() == BasisLabel{1, 1};
    d_blocks += is_d;
    b.tag = is_d ? "D" : "path";
  }
  const BlockCheck r = check_blocks(rho, tol, opt.path, fast);
  c.rho_blocks = static_cast<int>(rho.blocks.size());
  const int d_corank = opt.path == KernelPath::Structured ? drep.corank : 0;
  c.corank_rho = r.corank_sum + r.diagonal_kernel + d_corank;
  c.rank_rho = n * n - c.corank_rho;
  clock.lap("blocks_rho");

  c.block_problems = g.problems;
  c.block_problems.insert(c.block_problems.end(), r.problems.begin(), r.problems.end());
  if (d_blocks != 1) return stop(c, CertVerdict::NotCertified, 5, "e_11..e_nn do not form a single block of rho");
  if (g.not_psd || r.not_psd) return stop(c, CertVerdict::NotCertified, 5, "a block is not positive semidefinite");
  if (g.ambiguous || r.ambiguous) return stop(c, CertVerdict::Ambiguous, 5, "a block eigenvalue is inside the ambiguity band");
  if (c.corank_rho_gamma != 2 * n - 3)
    return stop(c, CertVerdict::NotCertified, 5, "rho^Gamma has corank " + std::to_string(c.corank_rho_gamma));
  if (c.corank_rho != 1) return stop(c, CertVerdict::NotCertified, 5, "rho has corank " + std::to_string(c.corank_rho));

  c.verdict = CertVerdict::Certified;
  return c;
}

}  // namespace edgecert
