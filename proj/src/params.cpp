#include "edgecert/params.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "edgecert/error.hpp"

namespace edgecert {

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

namespace {

void check_angles(const std::vector<double>& angles, int n, const char* field) {
  if (static_cast<int>(angles.size()) != n)
    throw_invalid(std::string(field) + ": expected " + std::to_string(n) + " angles, got " +
                  std::to_string(angles.size()));
  for (double a : angles)
    if (!std::isfinite(a)) throw_invalid(std::string(field) + ": non-finite angle");
}

}  // namespace

void validate_params(const ParamSet& p) {
  if (p.n < 3) throw_invalid("n: must be >= 3, got " + std::to_string(p.n));
  check_angles(p.alpha_angles, p.n, "alpha_angles");
  check_angles(p.beta_angles, p.n, "beta_angles");
  if (std::abs(wrap_angle(p.alpha_angles.front())) > kGenericitySeparation)
    throw_invalid("alpha_angles: first entry must be 0");
  if (std::abs(wrap_angle(p.beta_angles.back())) > kGenericitySeparation)
    throw_invalid("beta_angles: last entry must be 0");
  if (p.r && (!std::isfinite(*p.r) || *p.r < 0.0)) throw_invalid("r: must be a nonnegative real");
}

namespace {

// alpha_{i,j} = beta_{i,j} iff (alpha_j - beta_j) = (alpha_i - beta_i) mod 2 pi.
template <class Visit>
void for_each_violation(const ParamSet& p, Visit&& visit) {
  std::vector<double> diff(p.n);
  for (int i = 0; i < p.n; ++i) diff[i] = p.alpha_angles[i] - p.beta_angles[i];
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j)
      if (std::abs(wrap_angle(diff[j] - diff[i])) < kGenericitySeparation)
        if (!visit(i + 1, j + 1)) return;
}

}  // namespace

std::vector<std::pair<int, int>> genericity_violations(const ParamSet& p) {
  std::vector<std::pair<int, int>> out;
  for_each_violation(p, [&](int i, int j) {
    out.emplace_back(i, j);
    return true;
  });
  return out;
}

std::size_t count_genericity_violations(const ParamSet& p) {
  std::size_t count = 0;
  for_each_violation(p, [&](int, int) {
    ++count;
    return true;
  });
  return count;
}

void require_generic(const ParamSet& p) {
  for_each_violation(p, [&](int i, int j) -> bool {
    throw GenericityError(i, j,
                          "genericity violated: alpha_{" + std::to_string(i) + "," + std::to_string(j) +
                              "} equals beta_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  });
}

void check_params(const ParamSet& p, GenericityPolicy policy) {
  validate_params(p);
  if (policy == GenericityPolicy::Require) require_generic(p);
}

ParamSet default_params(int n) {
  if (n < 3) throw_invalid("n: must be >= 3, got " + std::to_string(n));
  ParamSet p;
  p.n = n;
  p.alpha_angles.assign(n, std::numbers::pi / 4.0);
  p.alpha_angles.front() = 0.0;
  p.alpha_angles.back() = std::numbers::pi;
  p.beta_angles.assign(n, 0.0);
  return p;
}

ParamSet perturbed_params(int n, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw_invalid("step: must be a positive real");
  ParamSet p = default_params(n);
  for (int k = 2; k <= n - 1; ++k) p.alpha_angles[k - 1] = std::numbers::pi * (0.25 + (k - 1) * step);
  return p;
}

ParamSet params_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw_invalid(std::string("params file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw_invalid("params file: top level must be an object");

  ParamSet p;
  auto read_list = [&](const char* field) {
    if (!doc.contains(field)) throw_invalid(std::string(field) + ": missing");
    const auto& v = doc.at(field);
    if (!v.is_array()) throw_invalid(std::string(field) + ": must be a list of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw_invalid(std::string(field) + ": must be a list of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  };
  if (!doc.contains("n")) throw_invalid("n: missing");
  if (!doc.at("n").is_number_integer()) throw_invalid("n: must be an integer");
  p.n = doc.at("n").get<int>();
  p.alpha_angles = read_list("alpha_angles");
  p.beta_angles = read_list("beta_angles");
  if (doc.contains("r") && !doc.at("r").is_null()) {
    if (!doc.at("r").is_number()) throw_invalid("r: must be a number");
    p.r = doc.at("r").get<double>();
  }
  validate_params(p);
  return p;
}

ParamSet read_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("params file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json_text(buf.str());
}

std::string params_to_json_text(const ParamSet& p) {
  nlohmann::ordered_json doc;
  doc["n"] = p.n;
  doc["alpha_angles"] = p.alpha_angles;
  doc["beta_angles"] = p.beta_angles;
  if (p.r) doc["r"] = *p.r;
  return doc.dump(2);
}

}  // namespace edgecert
