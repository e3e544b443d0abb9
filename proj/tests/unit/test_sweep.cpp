#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "edgecert/error.hpp"
#include "edgecert/sweep.hpp"
#include "json.hpp"

using namespace edgecert;

TEST_CASE("params mode parsing") {
  CHECK(ParamsMode::parse("default").kind == ParamsMode::Kind::Default);
  CHECK(ParamsMode::parse("").kind == ParamsMode::Kind::Default);
  auto p = ParamsMode::parse("perturbed:1e-4");
  CHECK(p.kind == ParamsMode::Kind::Perturbed);
  CHECK(p.step == 1e-4);
  CHECK(p.policy() == GenericityPolicy::Require);
  CHECK(ParamsMode::parse("default").policy() == GenericityPolicy::Report);
  CHECK_THROWS_AS(ParamsMode::parse("perturbed:abc"), Error);
  CHECK_THROWS_AS(ParamsMode::parse("perturbed:-1"), Error);
  auto f = ParamsMode::parse("/some/file.json");
  CHECK(f.kind == ParamsMode::Kind::File);
  CHECK_THROWS_AS(f.make(4), Error);
}

TEST_CASE("jobs resolution") {
  CHECK(resolve_jobs(3) == 3);
  setenv("EDGECERT_JOBS", "2", 1);
  CHECK(resolve_jobs(0) == 2);
  unsetenv("EDGECERT_JOBS");
  CHECK(resolve_jobs(0) >= 1);
}

TEST_CASE("small sweep writes one certificate per n") {
  const auto dir = std::filesystem::temp_directory_path() / "edgecert_sweep_test";
  std::filesystem::remove_all(dir);
  SweepConfig cfg;
  cfg.n_from = 3;
  cfg.n_to = 12;
  cfg.jobs = 2;
  cfg.out_dir = dir.string();
  cfg.timings = false;
  auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == static_cast<int>(3 + i));
    CHECK(rows[i].verdict == CertVerdict::Certified);
    std::ifstream in(dir / ("cert_n" + std::to_string(rows[i].n) + ".json"));
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    auto doc = nlohmann::json::parse(ss.str());
    CHECK(doc["n"] == rows[i].n);
    CHECK(doc["verdict"] == "CERTIFIED");
    CHECK_FALSE(doc.contains("timings"));
  }
  // No temporary files are left behind.
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CHECK(e.path().extension() == ".json");
    ++files;
  }
  CHECK(files == 10);
  CHECK(sweep_summary_table(rows).find("CERTIFIED") != std::string::npos);
  std::filesystem::remove_all(dir);

  SweepConfig bad = cfg;
  bad.n_from = 5;
  bad.n_to = 4;
  bad.out_dir.clear();
  CHECK_THROWS_AS(run_sweep(bad), Error);
}
