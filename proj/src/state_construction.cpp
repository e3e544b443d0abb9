#include "edgecert/state_construction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "edgecert/error.hpp"

namespace edgecert {

namespace {

BlockSpec pair_spec(BasisLabel a, BasisLabel b, double angle, double scale, std::string tag) {
  BlockSpec s;
  s.labels = {a, b};
  s.shape = BlockShape::Pair;
  s.pair_angle = angle;
  s.scale = scale;
  s.tag = std::move(tag);
  return s;
}

// Labels with i + j = k + 1, i != j: upper half (t, k+1-t) for t = 1..h, then
// the lower half in ascending first factor. The cycle parameters are
// (1, ..., 1, alpha_{h,k+1-h}, ..., alpha_{1,k}).
BlockSpec alpha_block(const ParamSet& p, int k) {
  const std::string tag = "alpha k=" + std::to_string(k);
  if (k == 2) return pair_spec({1, 2}, {2, 1}, p.alpha_ratio_angle(1, 2), 1.0, tag);
  if (k == 3) return pair_spec({1, 3}, {3, 1}, p.alpha_ratio_angle(1, 3), 2.0, tag);
  const int h = k / 2;
  BlockSpec s;
  s.shape = BlockShape::Cycle;
  s.tag = tag;
  for (int t = 1; t <= h; ++t) s.labels.push_back({t, k + 1 - t});
  for (int a = k + 1 - h; a <= k; ++a) s.labels.push_back({a, k + 1 - a});
  std::vector<double> angles(2 * h - 1, 0.0);
  for (int s_ = 0; s_ < h; ++s_) angles[h - 1 + s_] = p.alpha_ratio_angle(h - s_, k + 1 - h + s_);
  s.z = UnitComplexList(std::move(angles));
  return s;
}

// Labels with i + j = n + l, i != j: upper half (l+t, n-t) for t = 0..h-1,
// then the mirrored lower half. Parameters (1, ..., 1, beta_{l+h-1,n+1-h}, ..., beta_{l,n}).
BlockSpec beta_block(const ParamSet& p, int l) {
  const int n = p.n;
  const std::string tag = "beta l=" + std::to_string(l);
  if (l == n - 1) return pair_spec({n - 1, n}, {n, n - 1}, p.beta_ratio_angle(n - 1, n), 1.0, tag);
  if (l == n - 2) return pair_spec({n - 2, n}, {n, n - 2}, p.beta_ratio_angle(n - 2, n), 2.0, tag);
  const int h = (n - l + 1) / 2;
  BlockSpec s;
  s.shape = BlockShape::Cycle;
  s.tag = tag;
  for (int t = 0; t < h; ++t) s.labels.push_back({l + t, n - t});
  for (int t = h - 1; t >= 0; --t) s.labels.push_back({n - t, l + t});
  std::vector<double> angles(2 * h - 1, 0.0);
  for (int s_ = 0; s_ < h; ++s_) angles[h - 1 + s_] = p.beta_ratio_angle(l + h - 1 - s_, n + 1 - h + s_);
  s.z = UnitComplexList(std::move(angles));
  return s;
}

StateAssembly rho_gamma_unchecked(const ParamSet& p, double r) {
  StateAssembly a;
  a.n = p.n;
  a.blocks.reserve(2 * p.n - 3);
  for (int k = 2; k <= p.n; ++k) a.blocks.push_back(alpha_block(p, k));
  for (int l = 2; l <= p.n - 1; ++l) a.blocks.push_back(beta_block(p, l));
  for (int j = 1; j <= p.n; ++j) a.diagonal.emplace(BasisLabel{j, j}, r);
  return a;
}

}  // namespace

StateAssembly assemble_rho_gamma(const ParamSet& params, GenericityPolicy policy) {
  check_params(params, policy);
  if (!params.r) throw_invalid("r: must be set to assemble the state");
  StateAssembly a = rho_gamma_unchecked(params, *params.r);
  a.check_coverage();
  return a;
}

StateAssembly assemble_rho(const ParamSet& params, GenericityPolicy policy) {
  StateAssembly rho = partial_transpose(assemble_rho_gamma(params, policy));
  for (BlockSpec& b : rho.blocks) b.tag = (b.labels.front() == BasisLabel{1, 1}) ? "D" : "path";
  rho.check_coverage();
  return rho;
}

HermitianMatrix extract_D(const ParamSet& params) {
  validate_params(params);
  const int n = params.n;
  const StateAssembly g = rho_gamma_unchecked(params, params.r_or_zero());

  // label -> (block, local index)
  std::vector<int> block_at(static_cast<std::size_t>(n) * n, -1), local_at(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t b = 0; b < g.blocks.size(); ++b)
    for (int t = 0; t < g.blocks[b].dim(); ++t) {
      const int f = g.blocks[b].labels[t].flat(n);
      block_at[f] = static_cast<int>(b);
      local_at[f] = t;
    }

  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int j = 1; j <= n; ++j) d(j - 1, j - 1) = params.r_or_zero();
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      const int row = BasisLabel{k, j}.flat(n);
      const int col = BasisLabel{j, k}.flat(n);
      if (block_at[row] < 0 || block_at[row] != block_at[col])
        throw Error(ErrorKind::InternalContradiction, "transposed pair split across blocks");
      const cplx v = g.blocks[block_at[row]].entry(local_at[row], local_at[col]);
      d(j - 1, k - 1) = v;
      d(k - 1, j - 1) = std::conj(v);
    }
  return HermitianMatrix(std::move(d));
}

HermitianMatrix alternative_A(double alpha_angle) {
  const cplx a = unit(alpha_angle);
  const cplx ab = std::conj(a);
  const cplx t = a + ab;
  ComplexMatrix m(4, 4);
  m << t, -a, -ab, 0.0,
       -ab, t, 0.0, -a,
       -a, 0.0, t, -ab,
       0.0, -ab, -a, t;
  return HermitianMatrix(std::move(m));
}

HermitianMatrix alternative_B(double p, double r, double alpha_angle) {
  const cplx a = unit(alpha_angle);
  const cplx ab = std::conj(a);
  ComplexMatrix m1(4, 4), m2(4, 4);
  m1 << 1.0 / p, 0.0, -ab, 0.0,
        0.0, 1.0 / p, 0.0, -ab,
        -a, 0.0, p, 0.0,
        0.0, -a, 0.0, p;
  m2 << 1.0, -1.0, 0.0, 0.0,
        -1.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, -1.0,
        0.0, 0.0, -1.0, 1.0;
  return HermitianMatrix(r * (m1 + m2));
}

AlternativePair assemble_alternative_4x4(double p, double r, double alpha_angle) {
  if (!(p > 0.0) || !std::isfinite(p)) throw_invalid("p: must be positive");
  if (!(r > 0.0 && r < 1.0)) throw_invalid("r: must lie in (0, 1)");
  if (!(std::abs(alpha_angle) < std::numbers::pi / 4.0)) throw_invalid("alpha: Arg must lie in (-pi/4, pi/4)");
  const int n = 4;
  std::vector<Entry> entries;
  auto add_block = [&](const HermitianMatrix& m, const std::vector<BasisLabel>& labels, bool transposed) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const cplx v = m(i, j);
        if (v == cplx{}) continue;
        Entry e{labels[i].flat(n), labels[j].flat(n), v};
        entries.push_back(transposed ? gamma_image(e, n) : e);
      }
  };
  add_block(alternative_A(alpha_angle), {{1, 1}, {2, 2}, {3, 3}, {4, 4}}, false);
  add_block(alternative_B(p, r, alpha_angle), {{1, 4}, {2, 3}, {3, 2}, {4, 1}}, true);
  for (BasisLabel l : {BasisLabel{1, 2}, {2, 4}, {3, 1}, {4, 3}}) entries.push_back({l.flat(n), l.flat(n), 1.0 / p});
  for (BasisLabel l : {BasisLabel{2, 1}, {4, 2}, {1, 3}, {3, 4}}) entries.push_back({l.flat(n), l.flat(n), p});

  AlternativePair out;
  out.rho = assembly_from_entries(n, entries);
  out.rho_gamma = partial_transpose(out.rho);
  out.rho.check_coverage();
  out.rho_gamma.check_coverage();
  return out;
}

}  // namespace edgecert
