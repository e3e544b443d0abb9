// Command-line front end: certify, sweep, oracle, inspect.
//
// Exit codes: 0 certified / consistent, 1 usage or input error,
// 2 not certified (or oracle witness found), 3 ambiguous.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edgecert/certificate_io.hpp"
#include "edgecert/certifier.hpp"
#include "edgecert/error.hpp"
#include "edgecert/oracle.hpp"
#include "edgecert/state_construction.hpp"
#include "edgecert/sweep.hpp"

using namespace edgecert;

namespace {

void add_tolerances(CLI::App* cmd, Tolerances& tol) {
  cmd->add_option("--kernel-threshold", tol.kernel_threshold, "relative eigenvalue threshold for kernels");
  cmd->add_option("--root-gap", tol.root_simplicity_gap, "minimum lambda_2 - lambda_1 of D(0)");
  cmd->add_option("--half-plane-margin", tol.half_plane_margin, "required slack around pi");
  cmd->add_option("--zero-threshold", tol.zero_component_threshold, "relative threshold for vanishing components");
}

int exit_code(CertVerdict v) {
  switch (v) {
    case CertVerdict::Certified: return 0;
    case CertVerdict::NotCertified: return 2;
    case CertVerdict::Ambiguous: return 3;
  }
  return 1;
}

std::string fmt_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

void print_dense(const HermitianMatrix& m) {
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      const cplx z = m(i, j);
      std::cout << (z == cplx{} ? std::string(".") : fmt_complex(z)) << (j + 1 < m.dim() ? "\t" : "\n");
    }
  }
}

void print_blocks(const StateAssembly& a) {
  std::cout << "n=" << a.n << " blocks=" << a.blocks.size() << " diagonal=" << a.diagonal.size() << "\n";
  for (const BlockSpec& b : a.blocks) {
    std::cout << (b.tag.empty() ? "block" : b.tag) << " size=" << b.dim() << " scale=" << b.scale << " labels=";
    for (const BasisLabel& l : b.labels) std::cout << "e" << l.row << "," << l.col << " ";
    if (b.shape == BlockShape::Pair) std::cout << "z=" << fmt_complex(unit(b.pair_angle));
    if (b.shape == BlockShape::Cycle || b.shape == BlockShape::Path) {
      std::cout << "z=(";
      for (int k = 2; k <= b.z.size() + 1; ++k) std::cout << (k > 2 ? ", " : "") << fmt_complex(b.z.value(k));
      std::cout << ")";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify n x n PPT entangled edge states of corank one"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  Tolerances tol;

  // certify
  int cert_n = 4;
  std::string cert_params = "default";
  std::string cert_out;
  bool cert_no_timings = false;
  bool cert_dense = false;
  auto* certify_cmd = app.add_subcommand("certify", "certify one n and write a certificate");
  certify_cmd->add_option("--n", cert_n, "matrix size n >= 3")->required();
  certify_cmd->add_option("--params", cert_params, "default | perturbed:STEP | params file");
  certify_cmd->add_option("--out", cert_out, "certificate path (stdout when omitted)");
  certify_cmd->add_flag("--no-timings", cert_no_timings, "omit wall-clock timings");
  certify_cmd->add_flag("--dense-reference", cert_dense, "use the serial dense reference kernels");
  add_tolerances(certify_cmd, tol);

  // sweep
  SweepConfig sweep;
  std::string sweep_params = "default";
  bool sweep_no_timings = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "certify a range of n in parallel");
  sweep_cmd->add_option("--from", sweep.n_from, "first n")->required();
  sweep_cmd->add_option("--to", sweep.n_to, "last n")->required();
  sweep_cmd->add_option("--jobs", sweep.jobs, "parallel jobs (default: EDGECERT_JOBS or all cores)");
  sweep_cmd->add_option("--params", sweep_params, "default | perturbed:STEP");
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "directory for cert_n<N>.json files");
  sweep_cmd->add_flag("--no-timings", sweep_no_timings, "omit wall-clock timings in certificates");
  add_tolerances(sweep_cmd, tol);

  // oracle
  int oracle_n = 3;
  int oracle_starts = 200;
  std::uint64_t oracle_seed = 1;
  std::string oracle_params = "default";
  bool oracle_broken = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "search for product vectors violating the edge property (n <= 12)");
  oracle_cmd->add_option("--n", oracle_n, "matrix size")->required();
  oracle_cmd->add_option("--starts", oracle_starts, "random starts");
  oracle_cmd->add_option("--seed", oracle_seed, "master seed");
  oracle_cmd->add_option("--params", oracle_params, "default | perturbed:STEP | params file");
  oracle_cmd->add_flag("--broken-genericity", oracle_broken, "use alpha = beta = 1, which has product witnesses");

  // inspect
  int inspect_n = 3;
  std::string inspect_what = "blocks";
  std::string inspect_params = "default";
  double inspect_r = -1.0;
  bool inspect_dense = false;
  auto* inspect_cmd = app.add_subcommand("inspect", "print an assembly");
  inspect_cmd->add_option("--n", inspect_n, "matrix size")->required();
  inspect_cmd->add_option("--what", inspect_what, "rho | rho-gamma | D | blocks")
      ->check(CLI::IsMember({"rho", "rho-gamma", "D", "blocks"}));
  inspect_cmd->add_option("--params", inspect_params, "default | perturbed:STEP | params file");
  inspect_cmd->add_option("--r", inspect_r, "diagonal loading (default: r_hat)");
  inspect_cmd->add_flag("--dense", inspect_dense, "print dense entries (n <= 12)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*certify_cmd) {
      const ParamsMode mode = ParamsMode::parse(cert_params);
      const ParamSet p = mode.make(cert_n);
      const Certificate c = certify(p, tol,
                                    {mode.policy(), cert_dense ? KernelPath::Dense : KernelPath::Structured, mode.family()});
      const std::string doc = certificate_to_json(c, {!cert_no_timings});
      if (cert_out.empty())
        std::cout << doc;
      else
        write_file_atomic(cert_out, doc);
      std::cerr << "n=" << cert_n << " " << to_string(c.verdict) << " r_hat=" << c.r_hat;
      if (c.failed_step) std::cerr << " (step " << c.failed_step << ": " << c.reason << ")";
      std::cerr << "\n";
      return exit_code(c.verdict);
    }

    if (*sweep_cmd) {
      sweep.params = ParamsMode::parse(sweep_params);
      if (sweep.params.kind == ParamsMode::Kind::File && sweep.n_from != sweep.n_to)
        throw_invalid("params: a params file fixes n; use certify or --from N --to N");
      sweep.tol = tol;
      sweep.timings = !sweep_no_timings;
      const auto rows = run_sweep(sweep);
      std::cout << sweep_summary_table(rows);
      int certified = 0;
      for (const SweepRow& r : rows) certified += r.verdict == CertVerdict::Certified;
      std::cout << certified << "/" << rows.size() << " certified\n";
      return certified == static_cast<int>(rows.size()) ? 0 : 2;
    }

    if (*oracle_cmd) {
      require_dense_allowed(oracle_n);
      const ParamSet p = oracle_broken ? broken_genericity_params(oracle_n) : ParamsMode::parse(oracle_params).make(oracle_n);
      const DenseState s = dense_state(p);
      const ViolationScore v = product_vector_search(s.rho, s.rho_gamma, oracle_n, oracle_starts, oracle_seed);
      std::printf("n=%d starts=%d seed=%llu r=%.12g\n", oracle_n, v.starts, static_cast<unsigned long long>(v.seed), s.r);
      if (v.vacuous) {
        std::printf("VACUOUS: both kernels are empty\n");
        return 0;
      }
      std::printf("min score %.6e (floor %.0e, witness below %.0e), nonconverged starts %d\n", v.value, kOracleFloor,
                  kWitnessScore, v.nonconverged);
      if (v.value < kWitnessScore) {
        std::printf("WITNESS: a product vector violates the edge property\n");
        return 2;
      }
      if (v.value > kOracleFloor) {
        std::printf("FLOOR SATISFIED\n");
        return 0;
      }
      std::printf("INCONCLUSIVE: score between witness level and floor\n");
      return 3;
    }

    if (*inspect_cmd) {
      ParamSet p = ParamsMode::parse(inspect_params).make(inspect_n);
      if (inspect_r >= 0.0) {
        p.r = inspect_r;
      } else {
        ParamSet p0 = p;
        p0.r = 0.0;
        p.r = find_r_hat(extract_D(p0)).r_hat;
      }
      if (inspect_dense) require_dense_allowed(inspect_n);
      if (inspect_what == "D") {
        print_dense(extract_D(p));
        return 0;
      }
      const StateAssembly a = inspect_what == "rho" ? assemble_rho(p, GenericityPolicy::Report)
                                                    : assemble_rho_gamma(p, GenericityPolicy::Report);
      if (inspect_dense)
        print_dense(a.densify());
      else
        print_blocks(a);
      return 0;
    }
  } catch (const GenericityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
