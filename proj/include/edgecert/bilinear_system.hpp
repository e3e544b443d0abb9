#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgecert/complex_linalg.hpp"
#include "edgecert/params.hpp"

namespace edgecert {

/// [i,j]_gamma = x_i y_j - gamma_i^{-1} gamma_j x_j y_i, 1-based indices.
cplx eval_form(int i, int j, const ComplexVector& gamma, const ComplexVector& x, const ComplexVector& y);

enum class FormFamily { Alpha, Beta };

struct FormTerm {
  int sign = 1;
  int i = 0;
  int j = 0;
};

/// An alternating sum of forms along one anti-diagonal.
struct SystemRow {
  FormFamily family = FormFamily::Alpha;
  int index = 0;  // k for alpha rows, l for beta rows
  std::vector<FormTerm> terms;
};

/// Rows for k = 2..n (alpha forms along i + j = k + 1) followed by rows for
/// l = 1..n-2 (beta forms along i + j = 2n - l). 2n - 3 rows in total.
std::vector<SystemRow> build_system(int n);

std::string describe_row(const SystemRow& row);

/// Row values evaluated on (conj(x), y): the pair (x, y) stands for the
/// product vector conj(x) (x) y tested against the partial transpose.
std::vector<cplx> system_residuals(const std::vector<SystemRow>& rows, const ComplexVector& alpha,
                                   const ComplexVector& beta, const ComplexVector& x, const ComplexVector& y);

ComplexVector alpha_vector(const ParamSet& p);
ComplexVector beta_vector(const ParamSet& p);

enum class CaseTag {
  ZeroFactor,   // x = 0 or y = 0
  AlphaLow,     // support within j <= (n+1)/2, alpha-parallel
  AlphaSplit,   // support [p, n-q+1] and {q}, alpha-parallel
  BetaSplit,    // support {p} and [n-p+2, q], beta-parallel
  BetaHigh,     // support within j >= (n+1)/2, beta-parallel
};

std::string to_string(CaseTag tag);

/// With v_j = (conj(x_j), y_j): v_j = (c_j t, c_j gamma_j) on the case's
/// support and 0 elsewhere. c has length n; p and q are the first and last
/// nonzero positions (1-based).
struct SolutionCase {
  CaseTag tag = CaseTag::ZeroFactor;
  int p = 0;
  int q = 0;
  cplx t{1.0};
  ComplexVector c;
  bool overlap = false;  // another case also matched (boundary j = (n+1)/2)
};

/// Positions (1-based) that may be nonzero in the given case.
std::vector<int> case_support(CaseTag tag, int n, int p, int q);

/// Whether (p, q) lies in the range the case is defined for.
bool case_admits(CaseTag tag, int n, int p, int q);

/// nullopt if some row exceeds tol * ||x|| ||y||. Requires genericity; a
/// solution that matches no case throws InternalContradiction.
std::optional<SolutionCase> classify_solution(const ComplexVector& x, const ComplexVector& y, const ParamSet& params,
                                              double tol = 1e-9);

/// (x, y) realizing the case: conj(x_j) = c_j t, y_j = c_j gamma_j. For
/// ZeroFactor returns x = 0, y = c. Rejects support violations.
std::pair<ComplexVector, ComplexVector> generate_solution(const SolutionCase& sc, const ParamSet& params);

enum class PropertyOutcome { Holds, Violated, Vacuous };

/// If i, j, k are distinct, (x_i, y_i) != 0 and [i,j] = [i,k] = 0, then [j,k] = 0.
/// Vacuous when the premise fails.
PropertyOutcome lemma_basic_property(int i, int j, int k, const ComplexVector& gamma, const ComplexVector& x,
                                     const ComplexVector& y, double tol = 1e-9);

}  // namespace edgecert
