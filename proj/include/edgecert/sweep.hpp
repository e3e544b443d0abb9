#pragma once

#include <string>
#include <vector>

#include "edgecert/certifier.hpp"
#include "edgecert/params.hpp"

namespace edgecert {

/// default | perturbed:STEP | path to a params file.
struct ParamsMode {
  enum class Kind { Default, Perturbed, File } kind = Kind::Default;
  double step = 0.0;
  std::string path;

  static ParamsMode parse(const std::string& text);
  std::string describe() const;

  /// Parameters for size n. File mode requires the file's n to match.
  ParamSet make(int n) const;
  /// The built-in default family is the non-generic centre point and is
  /// certified with genericity recorded; everything else must be generic.
  GenericityPolicy policy() const { return kind == Kind::Default ? GenericityPolicy::Report : GenericityPolicy::Require; }
  std::string family() const;
};

struct SweepConfig {
  int n_from = 3;
  int n_to = 3;
  int jobs = 0;  // 0: EDGECERT_JOBS or the OpenMP default
  ParamsMode params;
  std::string out_dir;  // empty: no files
  Tolerances tol;
  bool timings = true;
};

struct SweepRow {
  int n = 0;
  CertVerdict verdict = CertVerdict::NotCertified;
  double r_hat = 0.0;
  double min_margin = 0.0;
  double seconds = 0.0;
  int failed_step = 0;
  std::string reason;
};

/// Jobs from the flag, else EDGECERT_JOBS, else the OpenMP default.
int resolve_jobs(int flag_value);

/// Certifies every n in the range in parallel (largest n first); rows come
/// back sorted by n. Certificates are written atomically as cert_n<N>.json.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string sweep_summary_table(const std::vector<SweepRow>& rows);

}  // namespace edgecert
