#include "edgecert/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>

#include <omp.h>

#include "edgecert/certificate_io.hpp"
#include "edgecert/error.hpp"

namespace edgecert {

ParamsMode ParamsMode::parse(const std::string& text) {
  ParamsMode m;
  if (text.empty() || text == "default") return m;
  const std::string prefix = "perturbed:";
  if (text.rfind(prefix, 0) == 0) {
    m.kind = Kind::Perturbed;
    const std::string num = text.substr(prefix.size());
    char* end = nullptr;
    m.step = std::strtod(num.c_str(), &end);
    if (num.empty() || end == nullptr || *end != '\0' || !(m.step > 0.0) || !std::isfinite(m.step))
      throw_invalid("params: perturbation step must be a positive number, got '" + num + "'");
    return m;
  }
  m.kind = Kind::File;
  m.path = text;
  return m;
}

std::string ParamsMode::describe() const {
  switch (kind) {
    case Kind::Default: return "default";
    case Kind::Perturbed: {
      std::ostringstream os;
      os << "perturbed:" << step;
      return os.str();
    }
    case Kind::File: return path;
  }
  return "?";
}

std::string ParamsMode::family() const {
  switch (kind) {
    case Kind::Default: return "default";
    case Kind::Perturbed: return "perturbed";
    case Kind::File: return "file";
  }
  return "?";
}

ParamSet ParamsMode::make(int n) const {
  switch (kind) {
    case Kind::Default: return default_params(n);
    case Kind::Perturbed: return perturbed_params(n, step);
    case Kind::File: {
      ParamSet p = read_params_file(path);
      if (p.n != n)
        throw_invalid("n: params file has n=" + std::to_string(p.n) + " but n=" + std::to_string(n) + " was requested");
      return p;
    }
  }
  throw_invalid("params: unknown mode");
}

int resolve_jobs(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("EDGECERT_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return omp_get_max_threads();
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.n_from < 3 || config.n_to < config.n_from) throw_invalid("sweep: need 3 <= from <= to");
  config.tol.validate();
  const int count = config.n_to - config.n_from + 1;
  std::vector<SweepRow> rows(count);
  std::vector<std::string> errors(count);
  const int jobs = resolve_jobs(config.jobs);

#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (int t = 0; t < count; ++t) {
    const int n = config.n_to - t;  // largest first
    SweepRow& row = rows[n - config.n_from];
    row.n = n;
    try {
      const auto start = std::chrono::steady_clock::now();
      const Certificate c = certify(config.params.make(n), config.tol,
                                    {config.params.policy(), KernelPath::Structured, config.params.family()});
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.verdict = c.verdict;
      row.r_hat = c.r_hat;
      row.min_margin = c.star ? c.star->min_margin() : std::numeric_limits<double>::quiet_NaN();
      row.failed_step = c.failed_step;
      row.reason = c.reason;
      if (!config.out_dir.empty()) {
        const auto path = std::filesystem::path(config.out_dir) / ("cert_n" + std::to_string(n) + ".json");
        write_file_atomic(path.string(), certificate_to_json(c, {config.timings}));
      }
    } catch (const std::exception& e) {
      errors[n - config.n_from] = e.what();
    }
  }
  for (int t = 0; t < count; ++t)
    if (!errors[t].empty()) throw_invalid("sweep n=" + std::to_string(config.n_from + t) + ": " + errors[t]);
  return rows;
}

std::string sweep_summary_table(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%6s  %-13s  %14s  %12s  %9s\n", "n", "verdict", "r_hat", "min_margin", "seconds");
  os << line;
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof line, "%6d  %-13s  %14.10f  %12.4e  %9.3f", r.n, to_string(r.verdict).c_str(), r.r_hat,
                  r.min_margin, r.seconds);
    os << line;
    if (r.failed_step != 0) os << "  step " << r.failed_step << ": " << r.reason;
    os << "\n";
  }
  return os.str();
}

}  // namespace edgecert
