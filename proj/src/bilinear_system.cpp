#include "edgecert/bilinear_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgecert/error.hpp"

namespace edgecert {

cplx eval_form(int i, int j, const ComplexVector& gamma, const ComplexVector& x, const ComplexVector& y) {
  const auto n = x.size();
  if (i < 1 || j < 1 || i > n || j > n || y.size() != n || gamma.size() != n)
    throw_invalid("eval_form: index or size out of range");
  if (i == j) return {};
  const cplx ratio = gamma[j - 1] / gamma[i - 1];
  return x[i - 1] * y[j - 1] - ratio * x[j - 1] * y[i - 1];
}

std::vector<SystemRow> build_system(int n) {
  if (n < 3) throw_invalid("build_system: n must be >= 3");
  std::vector<SystemRow> rows;
  for (int k = 2; k <= n; ++k) {
    SystemRow row{FormFamily::Alpha, k, {}};
    for (int t = 1; t <= k / 2; ++t) row.terms.push_back({(t % 2 == 1) ? 1 : -1, t, k + 1 - t});
    rows.push_back(std::move(row));
  }
  for (int l = 1; l <= n - 2; ++l) {
    SystemRow row{FormFamily::Beta, l, {}};
    for (int t = 0; t <= (l - 1) / 2; ++t) row.terms.push_back({(t % 2 == 0) ? 1 : -1, n - l + t, n - t});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string describe_row(const SystemRow& row) {
  std::ostringstream os;
  const char* fam = row.family == FormFamily::Alpha ? "alpha" : "beta";
  for (std::size_t t = 0; t < row.terms.size(); ++t) {
    const FormTerm& f = row.terms[t];
    if (t > 0) os << (f.sign > 0 ? " + " : " - ");
    else if (f.sign < 0) os << "-";
    os << "[" << f.i << "," << f.j << "]_" << fam;
  }
  return os.str();
}

std::vector<cplx> system_residuals(const std::vector<SystemRow>& rows, const ComplexVector& alpha,
                                   const ComplexVector& beta, const ComplexVector& x, const ComplexVector& y) {
  const ComplexVector xc = x.conjugate();
  std::vector<cplx> out;
  out.reserve(rows.size());
  for (const SystemRow& row : rows) {
    const ComplexVector& gamma = row.family == FormFamily::Alpha ? alpha : beta;
    cplx sum{};
    for (const FormTerm& f : row.terms) sum += static_cast<double>(f.sign) * eval_form(f.i, f.j, gamma, xc, y);
    out.push_back(sum);
  }
  return out;
}

ComplexVector alpha_vector(const ParamSet& p) {
  ComplexVector v(p.n);
  for (int i = 1; i <= p.n; ++i) v[i - 1] = p.alpha(i);
  return v;
}

ComplexVector beta_vector(const ParamSet& p) {
  ComplexVector v(p.n);
  for (int i = 1; i <= p.n; ++i) v[i - 1] = p.beta(i);
  return v;
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::ZeroFactor: return "ZERO_FACTOR";
    case CaseTag::AlphaLow: return "ALPHA_LOW";
    case CaseTag::AlphaSplit: return "ALPHA_SPLIT";
    case CaseTag::BetaSplit: return "BETA_SPLIT";
    case CaseTag::BetaHigh: return "BETA_HIGH";
  }
  return "?";
}

// Comparisons against (n+1)/2 are done on doubled integers to stay exact.
bool case_admits(CaseTag tag, int n, int p, int q) {
  if (p < 1 || q > n || p > q) return false;
  const int mid2 = n + 1;
  switch (tag) {
    case CaseTag::ZeroFactor: return true;
    case CaseTag::AlphaLow: return 2 * q <= mid2;
    case CaseTag::AlphaSplit: return 2 * p < mid2 && mid2 < 2 * q && p + q <= n + 1;
    case CaseTag::BetaSplit: return 2 * p < mid2 && mid2 < 2 * q && p + q > n + 1;
    case CaseTag::BetaHigh: return mid2 <= 2 * p;
  }
  return false;
}

std::vector<int> case_support(CaseTag tag, int n, int p, int q) {
  std::vector<int> s;
  switch (tag) {
    case CaseTag::ZeroFactor:
    case CaseTag::AlphaLow:
    case CaseTag::BetaHigh:
      for (int j = p; j <= q; ++j) s.push_back(j);
      break;
    case CaseTag::AlphaSplit:
      for (int j = p; j <= n - q + 1; ++j) s.push_back(j);
      s.push_back(q);
      break;
    case CaseTag::BetaSplit:
      s.push_back(p);
      for (int j = n - p + 2; j <= q; ++j) s.push_back(j);
      break;
  }
  return s;
}

namespace {

bool uses_alpha(CaseTag tag) { return tag == CaseTag::AlphaLow || tag == CaseTag::AlphaSplit; }

// Tries one case on normalized (X, Y) = (conj x, y); fills c and t on success.
bool match_case(CaseTag tag, int p, int q, const ComplexVector& X, const ComplexVector& Y, const ComplexVector& alpha,
                const ComplexVector& beta, double tol, SolutionCase& out) {
  const int n = static_cast<int>(X.size());
  if (!case_admits(tag, n, p, q)) return false;
  const std::vector<int> support = case_support(tag, n, p, q);
  std::vector<bool> in(n + 1, false);
  for (int j : support) in[j] = true;
  for (int j = 1; j <= n; ++j)
    if (!in[j] && std::abs(X[j - 1]) + std::abs(Y[j - 1]) > tol) return false;

  const ComplexVector& gamma = uses_alpha(tag) ? alpha : beta;
  ComplexVector c = ComplexVector::Zero(n);
  int pivot = support.front();
  for (int j : support) {
    c[j - 1] = Y[j - 1] / gamma[j - 1];
    if (std::abs(c[j - 1]) > std::abs(c[pivot - 1])) pivot = j;
  }
  if (std::abs(c[pivot - 1]) <= tol) return false;
  const cplx t = X[pivot - 1] / c[pivot - 1];
  if (std::abs(t) <= tol) return false;
  for (int j : support)
    if (std::abs(X[j - 1] - c[j - 1] * t) > tol) return false;

  out.tag = tag;
  out.p = p;
  out.q = q;
  out.t = t;
  out.c = c;
  return true;
}

}  // namespace

std::optional<SolutionCase> classify_solution(const ComplexVector& x, const ComplexVector& y, const ParamSet& params,
                                              double tol) {
  check_params(params, GenericityPolicy::Require);
  const int n = params.n;
  if (x.size() != n || y.size() != n) throw_invalid("classify_solution: vector size must be n");
  const ComplexVector alpha = alpha_vector(params);
  const ComplexVector beta = beta_vector(params);

  const double nx = x.norm();
  const double ny = y.norm();
  const double scale = nx * ny;
  for (const cplx& r : system_residuals(build_system(n), alpha, beta, x, y))
    if (std::abs(r) > tol * std::max(scale, std::numeric_limits<double>::min())) return std::nullopt;

  if (nx == 0.0 || ny == 0.0) {
    SolutionCase sc;
    sc.tag = CaseTag::ZeroFactor;
    sc.c = nx == 0.0 ? ComplexVector(y) : ComplexVector(x.conjugate());
    sc.p = 1;
    sc.q = n;
    return sc;
  }

  const ComplexVector X = x.conjugate() / nx;
  const ComplexVector Y = y / ny;
  int p = 0, q = 0;
  for (int j = 1; j <= n; ++j)
    if (std::abs(X[j - 1]) + std::abs(Y[j - 1]) > tol) {
      if (p == 0) p = j;
      q = j;
    }
  if (p == 0) throw Error(ErrorKind::InternalContradiction, "classify_solution: empty support after normalization");

  std::optional<SolutionCase> found;
  int matches = 0;
  for (CaseTag tag : {CaseTag::AlphaLow, CaseTag::AlphaSplit, CaseTag::BetaSplit, CaseTag::BetaHigh}) {
    SolutionCase sc;
    if (match_case(tag, p, q, X, Y, alpha, beta, tol, sc)) {
      ++matches;
      if (!found) found = sc;
    }
  }
  if (!found)
    throw Error(ErrorKind::InternalContradiction,
                "classify_solution: system solution with support [" + std::to_string(p) + "," + std::to_string(q) +
                    "] matches no case");
  // Undo the normalization: conj(x) = c t and y = c gamma.
  found->c *= ny;
  found->t *= nx / ny;
  found->overlap = matches > 1;
  return found;
}

std::pair<ComplexVector, ComplexVector> generate_solution(const SolutionCase& sc, const ParamSet& params) {
  validate_params(params);
  const int n = params.n;
  if (sc.c.size() != n) throw_invalid("generate_solution: c must have length n");
  if (sc.tag == CaseTag::ZeroFactor) return {ComplexVector::Zero(n), sc.c};
  if (!case_admits(sc.tag, n, sc.p, sc.q)) throw_invalid("generate_solution: (p, q) outside the case's range");
  if (sc.t == cplx{}) throw_invalid("generate_solution: t must be nonzero");
  if (sc.c[sc.p - 1] == cplx{} || sc.c[sc.q - 1] == cplx{})
    throw_invalid("generate_solution: c_p and c_q must be nonzero");
  const std::vector<int> support = case_support(sc.tag, n, sc.p, sc.q);
  std::vector<bool> in(n + 1, false);
  for (int j : support) in[j] = true;
  for (int j = 1; j <= n; ++j)
    if (!in[j] && sc.c[j - 1] != cplx{}) throw_invalid("generate_solution: c is nonzero outside the case's support");

  const ComplexVector gamma = uses_alpha(sc.tag) ? alpha_vector(params) : beta_vector(params);
  ComplexVector x(n), y(n);
  for (int j = 0; j < n; ++j) {
    x[j] = std::conj(sc.c[j] * sc.t);
    y[j] = sc.c[j] * gamma[j];
  }
  return {x, y};
}

PropertyOutcome lemma_basic_property(int i, int j, int k, const ComplexVector& gamma, const ComplexVector& x,
                                     const ComplexVector& y, double tol) {
  if (i == j || j == k || i == k) return PropertyOutcome::Vacuous;
  const double scale = std::max(x.norm() * y.norm(), std::numeric_limits<double>::min());
  if (std::abs(x[i - 1]) + std::abs(y[i - 1]) <= tol * std::max(x.norm(), y.norm())) return PropertyOutcome::Vacuous;
  if (std::abs(eval_form(i, j, gamma, x, y)) > tol * scale || std::abs(eval_form(i, k, gamma, x, y)) > tol * scale)
    return PropertyOutcome::Vacuous;
  // The conclusion loses accuracy when (x_i, y_i) is small relative to the rest.
  const double vi = std::hypot(std::abs(x[i - 1]), std::abs(y[i - 1]));
  const double slack = tol * scale * std::max(1.0, std::max(x.norm(), y.norm()) / vi);
  return std::abs(eval_form(j, k, gamma, x, y)) <= 10.0 * slack ? PropertyOutcome::Holds : PropertyOutcome::Violated;
}

}  // namespace edgecert
