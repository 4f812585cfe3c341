#include "willmore/report.hpp"

#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "willmore/errors.hpp"

namespace willmore {
namespace {

SuiteConfig base_config(const std::string& suite, const std::string& surface) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.surface = surface;
  cfg.grid = {64, 64};
  return cfg;
}

TEST(Report, EnergiesSphere) {
  const Report r = run_suite(base_config("energies", "sphere"));
  EXPECT_TRUE(r.all_pass);
  const auto doc = nlohmann::json::parse(r.json);
  EXPECT_EQ(doc["schema"], "willmore-lab/1");
  EXPECT_EQ(doc["status"], "pass");
  bool found = false;
  for (const auto& item : doc["results"])
    if (item["name"] == "W_expected_4pi") found = true;
  EXPECT_TRUE(found);
}

TEST(Report, IdentitiesAllZoo) {
  for (const char* name : {"sphere", "torus-of-revolution", "inverted-catenoid"}) {
    const Report r = run_suite(base_config("identities", name));
    EXPECT_TRUE(r.all_pass) << name << "\n" << r.json;
  }
}

TEST(Report, SurfaceSpecParsing) {
  const Report r = run_suite(base_config("energies", "ellipsoid(1,1,2)"));
  // no expected-value check registered for the ellipsoid; integrals reported
  EXPECT_TRUE(r.all_pass);
}

TEST(Report, ConfigValidation) {
  EXPECT_THROW(run_suite(base_config("unknown-suite", "sphere")), ConfigError);
  EXPECT_THROW(run_suite(base_config("energies", "not-a-surface")), ConfigError);
  {
    SuiteConfig cfg = base_config("energies", "sphere");
    cfg.grid = {4, 4};  // below the >= 8 contract
    EXPECT_THROW(run_suite(cfg), ConfigError);
  }
  {
    SuiteConfig cfg = base_config("energies", "sphere");
    cfg.jet_order = 7;
    EXPECT_THROW(run_suite(cfg), ConfigError);
  }
  {
    SuiteConfig cfg = base_config("convergence", "sphere");
    cfg.convergence_levels = 1;  // degenerate single-level request
    EXPECT_THROW(run_suite(cfg), ConfigError);
  }
  {
    SuiteConfig cfg = base_config("energies", "sphere");
    cfg.dsl_file = "/also/a/file";  // both sources given
    EXPECT_THROW(run_suite(cfg), ConfigError);
  }
  // quartic on a non-conformal chart aborts numerically (exit code 3 path)
  EXPECT_THROW(run_suite(base_config("quartic", "torus-of-revolution")), NumericalError);
}

TEST(Report, RadiiSpec) {
  const auto r = parse_radii_spec("1e-2:0.5:4");
  ASSERT_EQ(r.size(), 4u);
  EXPECT_DOUBLE_EQ(r[0], 1e-2);
  EXPECT_DOUBLE_EQ(r[3], 1.25e-3);
  EXPECT_THROW(parse_radii_spec("1e-2"), ConfigError);
  EXPECT_THROW(parse_radii_spec("1e-2:2.0:4"), ConfigError);  // ratio must shrink
}

TEST(Report, ByteIdenticalAcrossRuns) {
  const SuiteConfig cfg = base_config("energies", "clifford-torus-projected");
  const Report a = run_suite(cfg);
  const Report b = run_suite(cfg);
  EXPECT_EQ(a.json, b.json);
}

TEST(Report, ConvergenceTable) {
  SuiteConfig cfg = base_config("convergence", "sphere");
  cfg.grid = {16, 16};
  cfg.convergence_levels = 3;
  const Report r = convergence_table(cfg);
  EXPECT_TRUE(r.all_pass) << r.json;
  const auto doc = nlohmann::json::parse(r.json);
  bool has_order = false;
  for (const auto& item : doc["results"])
    if (item["name"] == "W_observed_order") has_order = true;
  EXPECT_TRUE(has_order);
}

TEST(Report, CsvOutput) {
  SuiteConfig cfg = base_config("quartic", "clifford-torus-projected");
  cfg.grid = {16, 16};
  cfg.csv_path = "report_test_scan.csv";
  const Report r = run_suite(cfg);
  EXPECT_TRUE(r.all_pass) << r.json;
  std::ifstream in(cfg.csv_path);
  ASSERT_TRUE(bool(in));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "u,v,abs_q,arg_q,abs_dzbar_q,scaled_q,w4,w2,w1");
  std::string row;
  EXPECT_TRUE(bool(std::getline(in, row)));
  std::remove(cfg.csv_path.c_str());
}

TEST(Report, DslSurfaceSource) {
  const char* path = "report_test_surface.dsl";
  {
    std::ofstream out(path);
    out << "(t, p, 0.1*(t^2 - p^2))\n";
  }
  SuiteConfig cfg;
  cfg.suite = "energies";
  cfg.dsl_file = path;
  cfg.grid = {32, 32};
  const Report r = run_suite(cfg);
  EXPECT_TRUE(r.all_pass) << r.json;
  std::remove(path);
}

}  // namespace
}  // namespace willmore
