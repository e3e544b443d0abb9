#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgecert/complex_linalg.hpp"

namespace edgecert {

/// Unit-modulus tuples alpha, beta (as angles, 1-based accessors) and the
/// diagonal loading r. alpha_1 = beta_n = 1 by convention.
struct ParamSet {
  int n = 0;
  std::vector<double> alpha_angles;
  std::vector<double> beta_angles;
  std::optional<double> r;

  double alpha_angle(int i) const { return alpha_angles.at(i - 1); }
  double beta_angle(int i) const { return beta_angles.at(i - 1); }
  cplx alpha(int i) const { return std::polar(1.0, alpha_angle(i)); }
  cplx beta(int i) const { return std::polar(1.0, beta_angle(i)); }

  // alpha_{i,j} = alpha_i^{-1} alpha_j, likewise for beta.
  double alpha_ratio_angle(int i, int j) const { return alpha_angle(j) - alpha_angle(i); }
  double beta_ratio_angle(int i, int j) const { return beta_angle(j) - beta_angle(i); }
  cplx alpha_ratio(int i, int j) const { return std::polar(1.0, alpha_ratio_angle(i, j)); }
  cplx beta_ratio(int i, int j) const { return std::polar(1.0, beta_ratio_angle(i, j)); }

  double r_or_zero() const { return r.value_or(0.0); }
};

enum class GenericityPolicy {
  Require,  // reject the first pair with alpha_{i,j} = beta_{i,j}
  Report,   // accept; callers record the violation count
};

inline constexpr double kGenericitySeparation = 1e-12;

/// Angle wrapped into (-pi, pi].
double wrap_angle(double a);

/// Structural checks: n >= 3, list lengths, finiteness, alpha_1 = beta_n = 1,
/// r >= 0 when set. Throws Error(InvalidInput) naming the field.
void validate_params(const ParamSet& p);

/// All pairs (i, j), i < j, whose ratio angles agree within kGenericitySeparation.
std::vector<std::pair<int, int>> genericity_violations(const ParamSet& p);
std::size_t count_genericity_violations(const ParamSet& p);

/// Throws GenericityError for the first violating pair.
void require_generic(const ParamSet& p);

/// validate_params plus genericity handling per policy.
void check_params(const ParamSet& p, GenericityPolicy policy);

/// alpha = (1, e^{i pi/4}, ..., e^{i pi/4}, -1), beta = 1.
ParamSet default_params(int n);

/// alpha_k = e^{i pi (1/4 + (k-1) step)} for 2 <= k <= n-1, alpha_1 = 1, alpha_n = -1, beta = 1.
ParamSet perturbed_params(int n, double step);

/// JSON document with fields n, alpha_angles, beta_angles and optional r.
ParamSet params_from_json_text(const std::string& text);
ParamSet read_params_file(const std::string& path);
std::string params_to_json_text(const ParamSet& p);

}  // namespace edgecert
