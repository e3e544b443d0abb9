#include "edgecert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <omp.h>

#include "edgecert/error.hpp"
#include "edgecert/state_construction.hpp"

namespace edgecert {

KernelPair kernel_pair(const HermitianMatrix& rho, const HermitianMatrix& rho_gamma, int n, KernelTolerance tol) {
  if (rho.dim() != n * n || rho_gamma.dim() != n * n) throw_invalid("oracle: matrices must be n^2 x n^2");
  require_dense_allowed(n);
  KernelPair k;
  k.n = n;
  k.rho = kernel_report(rho, tol).kernel_basis;
  k.rho_gamma = kernel_report(rho_gamma, tol).kernel_basis;
  return k;
}

namespace {

// Reshape of a basis vector v of C^n (x) C^n into the n x n matrix v[i, j].
std::vector<ComplexMatrix> as_matrices(const std::vector<ComplexVector>& basis, int n) {
  std::vector<ComplexMatrix> out;
  for (const ComplexVector& v : basis) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    out.push_back(std::move(m));
  }
  return out;
}

struct Problem {
  int n;
  std::vector<ComplexMatrix> d;  // ker rho
  std::vector<ComplexMatrix> e;  // ker rho^Gamma

  // <d, xi (x) eta> = xi^T conj(d) eta, <e, conj(xi) (x) eta> = xi^* conj(e) eta.
  double score(const ComplexVector& xi, const ComplexVector& eta) const {
    double s = 0.0;
    for (const ComplexMatrix& m : d) s += std::norm((xi.transpose() * m.conjugate() * eta)(0, 0));
    for (const ComplexMatrix& m : e) s += std::norm((xi.adjoint() * m.conjugate() * eta)(0, 0));
    return s;
  }

  static ComplexVector smallest_eigenvector(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    return es.eigenvectors().col(0).normalized();
  }

  // Fixed xi: each term is |g . eta|^2 with row vector g.
  ComplexVector best_eta(const ComplexVector& xi) const {
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& m : d) {
      const Eigen::RowVectorXcd g = xi.transpose() * m.conjugate();
      h += g.adjoint() * g;
    }
    for (const ComplexMatrix& m : e) {
      const Eigen::RowVectorXcd g = xi.adjoint() * m.conjugate();
      h += g.adjoint() * g;
    }
    return smallest_eigenvector(h);
  }

  // Fixed eta: the d-terms are |g . xi|^2 with g = (conj(d) eta)^T; the
  // e-terms are |f^* xi|^2 with f = conj(e) eta, i.e. row vector conj(f)^T.
  ComplexVector best_xi(const ComplexVector& eta) const {
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& m : d) {
      const Eigen::RowVectorXcd g = (m.conjugate() * eta).transpose();
      h += g.adjoint() * g;
    }
    for (const ComplexMatrix& m : e) {
      const ComplexVector f = m.conjugate() * eta;
      const Eigen::RowVectorXcd g = f.adjoint();
      h += g.adjoint() * g;
    }
    return smallest_eigenvector(h);
  }
};

ComplexVector random_unit(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(normal(gen), normal(gen));
  return v.normalized();
}

struct StartOutcome {
  double value = 0.0;
  ComplexVector xi, eta;
  bool converged = false;
  int monotonicity_breaks = 0;
};

StartOutcome run_start(const Problem& pb, std::uint64_t seed, int start, const OracleOptions& opt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  std::mt19937_64 gen(seq);
  StartOutcome o;
  o.xi = random_unit(pb.n, gen);
  o.eta = random_unit(pb.n, gen);
  double f = pb.score(o.xi, o.eta);
  for (int it = 0; it < opt.max_iterations; ++it) {
    o.eta = pb.best_eta(o.xi);
    o.xi = pb.best_xi(o.eta);
    const double next = pb.score(o.xi, o.eta);
    if (next > f * (1.0 + 1e-9) + 1e-15) ++o.monotonicity_breaks;
    const double decrease = f - next;
    f = std::min(f, next);
    if (f < 1e-28 || decrease <= opt.relative_decrease * f) {
      o.converged = true;
      break;
    }
  }
  o.value = f;
  return o;
}

}  // namespace

double violation_score(const KernelPair& k, const ComplexVector& xi, const ComplexVector& eta) {
  const Problem pb{k.n, as_matrices(k.rho, k.n), as_matrices(k.rho_gamma, k.n)};
  return pb.score(xi.normalized(), eta.normalized());
}

ViolationScore product_vector_search(const KernelPair& k, int starts, std::uint64_t seed, OracleOptions opt) {
  if (starts < 1) throw_invalid("oracle: starts must be >= 1");
  ViolationScore out;
  out.starts = starts;
  out.seed = seed;
  if (k.rho.empty() && k.rho_gamma.empty()) {
    out.vacuous = true;
    out.xi = ComplexVector::Unit(k.n, 0);
    out.eta = ComplexVector::Unit(k.n, 0);
    return out;
  }
  const Problem pb{k.n, as_matrices(k.rho, k.n), as_matrices(k.rho_gamma, k.n)};
  std::vector<StartOutcome> results(starts);
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < starts; ++s) results[s] = run_start(pb, seed, s, opt);

  out.value = std::numeric_limits<double>::infinity();
  for (const StartOutcome& r : results) {
    out.per_start.push_back(r.value);
    if (!r.converged) ++out.nonconverged;
    out.monotonicity_breaks += r.monotonicity_breaks;
    if (r.value < out.value) {
      out.value = r.value;
      out.xi = r.xi;
      out.eta = r.eta;
    }
  }
  return out;
}

ViolationScore product_vector_search(const HermitianMatrix& rho, const HermitianMatrix& rho_gamma, int n, int starts,
                                     std::uint64_t seed, OracleOptions opt) {
  return product_vector_search(kernel_pair(rho, rho_gamma, n, opt.kernel), starts, seed, opt);
}

DenseState dense_state(const ParamSet& params) {
  validate_params(params);
  require_dense_allowed(params.n);
  ParamSet p = params;
  if (!p.r) {
    ParamSet p0 = params;
    p0.r = 0.0;
    p.r = find_r_hat(extract_D(p0)).r_hat;
  }
  const StateAssembly g = assemble_rho_gamma(p, GenericityPolicy::Report);
  DenseState s;
  s.rho_gamma = g.densify();
  s.rho = partial_transpose(s.rho_gamma, p.n);
  s.r = *p.r;
  return s;
}

ParamSet broken_genericity_params(int n) {
  ParamSet p;
  p.n = n;
  p.alpha_angles.assign(n, 0.0);
  p.beta_angles.assign(n, 0.0);
  validate_params(p);
  return p;
}

std::optional<std::pair<ComplexVector, ComplexVector>> planted_witness(const ParamSet& params, const ComplexVector& w) {
  validate_params(params);
  const int n = params.n;
  if (w.size() != n) throw_invalid("planted_witness: w must have length n");
  for (int j = 1; j <= n; ++j)
    if (std::abs(params.alpha_ratio_angle(1, j) - params.beta_ratio_angle(1, j)) > kGenericitySeparation)
      throw_invalid("planted_witness: requires alpha = beta");
  // Need u >= 0, u != 0 with sum u_j conj(w_j) alpha_j = 0. Two opposite
  // entries suffice when those numbers are real up to a global phase.
  ComplexVector z(n);
  for (int j = 0; j < n; ++j) z[j] = std::conj(w[j]) * params.alpha(j + 1);
  Eigen::Index top = 0;
  if (z.cwiseAbs().maxCoeff(&top) == 0.0) return std::nullopt;
  const cplx phase = z[top] / std::abs(z[top]);
  int pos = -1, neg = -1;
  for (int j = 0; j < n; ++j) {
    const cplx v = z[j] / phase;
    if (std::abs(v.imag()) > 1e-12 * z.norm()) return std::nullopt;
    if (v.real() > 0 && pos < 0) pos = j;
    if (v.real() < 0 && neg < 0) neg = j;
  }
  if (pos < 0 || neg < 0) return std::nullopt;
  ComplexVector u = ComplexVector::Zero(n);
  u[pos] = std::abs(z[neg]);
  u[neg] = std::abs(z[pos]);
  // conj(xi) = c t with t = 1, eta = c alpha, |c_j|^2 = u_j.
  ComplexVector xi(n), eta(n);
  for (int j = 0; j < n; ++j) {
    const double c = std::sqrt(u[j].real());
    xi[j] = c;
    eta[j] = c * params.alpha(j + 1);
  }
  return std::make_pair(ComplexVector(xi.normalized()), ComplexVector(eta.normalized()));
}

CrossValidation cross_validate(const ParamSet& params, const Tolerances& tol, int starts, std::uint64_t seed,
                               GenericityPolicy policy) {
  CrossValidation cv;
  cv.n = params.n;
  require_dense_allowed(params.n);
  const Certificate cert = certify(params, tol, {policy, KernelPath::Structured, "explicit"});
  cv.verdict = to_string(cert.verdict);
  cv.block_corank_rho = cert.corank_rho;
  cv.block_corank_rho_gamma = cert.corank_rho_gamma;

  ParamSet p = params;
  p.r = cert.r_hat;
  const StateAssembly g = assemble_rho_gamma(p, GenericityPolicy::Report);
  const HermitianMatrix gd = g.densify();
  const HermitianMatrix rd = partial_transpose(gd, p.n);
  cv.structured_transpose_matches = partial_transpose(g).densify().matrix() == rd.matrix();
  cv.dense_corank_rho = kernel_report(rd, tol.kernel()).corank;
  cv.dense_corank_rho_gamma = kernel_report(gd, tol.kernel()).corank;

  const KernelPair k = kernel_pair(rd, gd, p.n, tol.kernel());
  cv.oracle_score = product_vector_search(k, starts, seed).value;

  if (!cv.structured_transpose_matches) cv.mismatches.push_back("structured partial transpose differs from dense");
  if (cert.corank_rho >= 0 && cv.dense_corank_rho != cv.block_corank_rho)
    cv.mismatches.push_back("corank(rho): dense " + std::to_string(cv.dense_corank_rho) + " vs blocks " +
                            std::to_string(cv.block_corank_rho));
  if (cert.corank_rho_gamma >= 0 && cv.dense_corank_rho_gamma != cv.block_corank_rho_gamma)
    cv.mismatches.push_back("corank(rho^Gamma): dense " + std::to_string(cv.dense_corank_rho_gamma) + " vs blocks " +
                            std::to_string(cv.block_corank_rho_gamma));
  if (cert.verdict == CertVerdict::Certified && !(cv.oracle_score > kOracleFloor))
    cv.mismatches.push_back("certified but oracle score " + std::to_string(cv.oracle_score) + " is below the floor");
  cv.consistent = cv.mismatches.empty();
  return cv;
}

}  // namespace edgecert
