#include "edgecert/certificate_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "edgecert/error.hpp"

namespace edgecert {

using ojson = nlohmann::ordered_json;

const char* tool_version() { return EDGECERT_VERSION; }

namespace {

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson complex_list(const auto& values) {
  ojson out = ojson::array();
  for (const cplx& z : values) out.push_back(ojson::array({z.real(), z.imag()}));
  return out;
}

ojson pair_json(const PairVerdict& v) {
  ojson o;
  o["p"] = v.p;
  o["q"] = v.q;
  o["verdict"] = to_string(v.verdict);
  o["margin"] = number(v.margin);
  return o;
}

ojson star_json(const StarReport& s) {
  ojson o;
  o["verdict"] = to_string(s.verdict);
  o["min_margin"] = number(s.min_margin());
  ojson cases = ojson::array();
  for (const CaseReport& c : s.cases) {
    ojson k;
    k["name"] = c.name;
    k["verdict"] = to_string(c.verdict());
    k["tested"] = c.tested;
    k["passed"] = c.passed;
    k["failed"] = c.failed;
    k["ambiguous"] = c.ambiguous;
    k["worst"] = c.tested > 0 ? pair_json(c.worst) : ojson(nullptr);
    ojson np = ojson::array();
    for (std::size_t t = 0; t < c.non_pass.size() && t < kMaxListedNonPass; ++t) np.push_back(pair_json(c.non_pass[t]));
    k["non_pass"] = np;
    k["non_pass_unlisted"] = c.non_pass.size() > kMaxListedNonPass ? c.non_pass.size() - kMaxListedNonPass : 0;
    cases.push_back(k);
  }
  o["cases"] = cases;
  o["z_alpha"] = complex_list(s.z_alpha);
  o["z_beta"] = complex_list(s.z_beta);
  return o;
}

}  // namespace

std::string certificate_to_json(const Certificate& c, CertificateFormat fmt) {
  ojson o;
  o["tool_version"] = tool_version();
  o["n"] = c.params.n;

  ojson params;
  params["family"] = c.params_family;
  params["alpha_angles"] = c.params.alpha_angles;
  params["beta_angles"] = c.params.beta_angles;
  if (c.exploratory_r) {
    params["r"] = *c.exploratory_r;
    params["r_role"] = "exploratory, not used; certification uses r_hat";
  }
  o["params"] = params;
  o["generic"] = c.generic;
  o["genericity_violations"] = c.genericity_violations;

  o["r_hat"] = c.r_hat;
  o["simple_root"] = c.simple_root;
  o["root_gap"] = number(c.root_gap);
  o["corank_D"] = c.corank_D;
  o["D_eigen_gap"] = number(c.D_eigen_gap);
  o["w"] = complex_list(c.w);
  o["w_smallest_index"] = c.w_smallest_index;
  o["w_smallest_ratio"] = c.w_smallest_ratio;
  o["star_report"] = c.star ? star_json(*c.star) : ojson(nullptr);
  o["corank_rho"] = c.corank_rho;
  o["corank_rho_gamma"] = c.corank_rho_gamma;
  o["rank_rho"] = c.rank_rho;
  o["rank_rho_gamma"] = c.rank_rho_gamma;
  o["block_problems"] = c.block_problems;
  o["verdict"] = to_string(c.verdict);
  o["failed_step"] = c.failed_step;
  o["reason"] = c.reason;
  if (fmt.timings) {
    ojson t;
    double total = 0.0;
    for (const auto& [name, secs] : c.timings) {
      t[name] = secs;
      total += secs;
    }
    t["total"] = total;
    o["timings"] = t;
  }
  ojson tol;
  tol["kernel_threshold"] = c.tolerances.kernel_threshold;
  tol["root_simplicity_gap"] = c.tolerances.root_simplicity_gap;
  tol["half_plane_margin"] = c.tolerances.half_plane_margin;
  tol["zero_component_threshold"] = c.tolerances.zero_component_threshold;
  o["tolerances"] = tol;
  return o.dump(fmt.indent) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw_invalid("cannot write " + tmp.string());
    out << text;
    if (!out) throw_invalid("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace edgecert
