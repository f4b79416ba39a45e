#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "issc/issc.h"

namespace {

const char* kGl = R"(
[model]
name = ginzburg_landau
alpha = -1
beta = 1
[bc]
a1 = 1
a2 = 0
b1 = 0
b2 = 1
[initial]
kind = fourier
b = 0.5
[numerics]
n_cells = 32
dt = 1e-3
t_end = 0.5
[certificate]
)";

issc_config* parse(const char* text) {
  issc_config* cfg = nullptr;
  EXPECT_EQ(issc_config_parse(text, &cfg), ISSC_OK) << issc_last_error();
  return cfg;
}

}  // namespace

TEST(CApi, ExitCodeMapIsTotal) {
  EXPECT_EQ(issc_exit_code(ISSC_OK), 0);
  EXPECT_EQ(issc_exit_code(ISSC_ERROR_CONFIG), 1);
  EXPECT_EQ(issc_exit_code(ISSC_ERROR_INFEASIBLE), 2);
  EXPECT_EQ(issc_exit_code(ISSC_ERROR_BLOWUP), 3);
  EXPECT_EQ(issc_exit_code(ISSC_ERROR_IO), 4);
  EXPECT_EQ(issc_exit_code(ISSC_ERROR_VALIDATION), 5);
  for (int s = 0; s <= 9; ++s) {
    const int code = issc_exit_code(static_cast<issc_status>(s));
    EXPECT_GE(code, 0);
    EXPECT_LE(code, 5);
  }
}

TEST(CApi, CertifyAndInspect) {
  issc_config* cfg = parse(kGl);
  issc_certificate* cert = nullptr;
  ASSERT_EQ(issc_certify(cfg, &cert), ISSC_OK) << issc_last_error();
  EXPECT_STREQ(issc_certificate_path(cert), "A2_1");
  EXPECT_GT(issc_certificate_c_decay(cert), 0.0);
  EXPECT_EQ(issc_certificate_split_count(cert), 3u);
  EXPECT_TRUE(std::isnan(issc_certificate_split(cert, 3)));

  char* json = nullptr;
  ASSERT_EQ(issc_certificate_to_json(cert, &json), ISSC_OK);
  issc_certificate* back = nullptr;
  ASSERT_EQ(issc_certificate_parse_json(json, &back), ISSC_OK);
  EXPECT_EQ(issc_certificate_c_decay(back), issc_certificate_c_decay(cert));

  issc_validation* report = nullptr;
  EXPECT_EQ(issc_validate(cfg, back, &report), ISSC_OK) << issc_last_error();
  ASSERT_NE(report, nullptr);
  EXPECT_EQ(issc_validation_passed(report), 1);
  char* text = nullptr;
  ASSERT_EQ(issc_validation_to_text(report, &text), ISSC_OK);
  EXPECT_NE(std::string(text).find("eiss: pass"), std::string::npos);

  issc_string_free(text);
  issc_validation_free(report);
  issc_string_free(json);
  issc_certificate_free(back);
  issc_certificate_free(cert);
  issc_config_free(cfg);
}

TEST(CApi, SimulateAndExportCsv) {
  issc_config* cfg = parse(kGl);
  issc_trace* trace = nullptr;
  ASSERT_EQ(issc_simulate(cfg, &trace), ISSC_OK) << issc_last_error();
  EXPECT_EQ(issc_trace_size(trace), 501u);
  EXPECT_EQ(issc_trace_time(trace, 0), 0.0);
  EXPECT_NEAR(issc_trace_energy(trace, 0), 0.125, 1e-12);
  char* csv = nullptr;
  ASSERT_EQ(issc_trace_to_csv(trace, &csv), ISSC_OK);
  EXPECT_EQ(std::string(csv).rfind("t,energy,u0,u1\n", 0), 0u);
  EXPECT_EQ(issc_trace_write_csv(trace, "/nonexistent/dir/x.csv"), ISSC_ERROR_IO);
  EXPECT_NE(std::string(issc_last_error()).find("/nonexistent"), std::string::npos);
  issc_string_free(csv);
  issc_trace_free(trace);
  issc_config_free(cfg);
}

TEST(CApi, ErrorStatuses) {
  issc_config* cfg = nullptr;
  EXPECT_EQ(issc_config_parse("[bogus]\n", &cfg), ISSC_ERROR_CONFIG);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_NE(std::string(issc_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(issc_config_load("/nonexistent.ini", &cfg), ISSC_ERROR_IO);
  EXPECT_EQ(issc_config_parse(nullptr, &cfg), ISSC_ERROR_INVALID_ARGUMENT);

  issc_config* unstable = parse(
      "[model]\nname = linear_form\nM1 = 10\n[bc]\na1=1\na2=0\nb1=0\nb2=1\n[certificate]\n");
  issc_certificate* cert = nullptr;
  EXPECT_EQ(issc_certify(unstable, &cert), ISSC_ERROR_INFEASIBLE);
  EXPECT_EQ(cert, nullptr);
  EXPECT_NE(std::string(issc_last_error()).find("decay"), std::string::npos);
  issc_config_free(unstable);

  issc_config* blowup = parse(
      "[model]\nname = linear_form\nM1 = 1000\n[bc]\na1=0\na2=1\nb1=0\nb2=1\n"
      "[initial]\nkind = polynomial\ncoeffs = 1\n[numerics]\nn_cells = 8\nt_end = 2\ndt = 1e-3\n");
  issc_trace* trace = nullptr;
  EXPECT_EQ(issc_simulate(blowup, &trace), ISSC_ERROR_BLOWUP);
  EXPECT_NE(std::string(issc_last_error()).find("first non-finite time"), std::string::npos);
  issc_config_free(blowup);

  char* summary = nullptr;
  EXPECT_EQ(issc_lemma_check(0, 42, &summary), ISSC_ERROR_INVALID_ARGUMENT);
  EXPECT_EQ(issc_exit_code(ISSC_ERROR_INVALID_ARGUMENT), 1);
  ASSERT_EQ(issc_lemma_check(5, 42, &summary), ISSC_OK);
  EXPECT_NE(std::string(summary).find("seed=42"), std::string::npos);
  issc_string_free(summary);
}

TEST(CApi, Convergence) {
  issc_config* cfg = parse(
      "[numerics]\nt_end = 0.1\ndt = 1e-4\n[convergence]\ngrids = 16, 32, 64\n"
      "exact = heat_neumann_dirichlet\n");
  char* table = nullptr;
  double order = 0.0;
  int degenerate = -1;
  ASSERT_EQ(issc_convergence(cfg, &table, &order, &degenerate), ISSC_OK) << issc_last_error();
  EXPECT_EQ(degenerate, 0);
  EXPECT_NEAR(order, 2.0, 0.2);
  EXPECT_NE(std::string(table).find("n_cells,error,order"), std::string::npos);
  issc_string_free(table);
  issc_config_free(cfg);
}
