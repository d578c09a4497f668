#include <mvhp/mvhp.h>

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string data_file(const char* name) { return std::string(MVHP_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSimConfig = R"({"N": 240, "seed": 11,
  "sigma_eps": [[1.0, 0.2], [0.2, 1.5]], "sigma_xi": [[0.02, 0.005], [0.005, 0.03]]})";

}  // namespace

TEST(CApi, ExitCodeMapping) {
  EXPECT_EQ(mvhp_exit_code(MVHP_OK), 0);
  for (mvhp_status s : {MVHP_INVALID_ARGUMENT, MVHP_PARSE_ERROR, MVHP_MISSING_HEADER, MVHP_NON_NUMERIC_CELL,
                        MVHP_TOO_SHORT, MVHP_DIMENSION_MISMATCH, MVHP_NOT_SYMMETRIC, MVHP_MISSING_AGGREGATE,
                        MVHP_LAG_TOO_LARGE, MVHP_IO_ERROR, MVHP_NEGATIVE_SNR, MVHP_OUT_OF_INVERTIBLE_RANGE}) {
    EXPECT_EQ(mvhp_exit_code(s), 1) << mvhp_status_name(s);
  }
  for (mvhp_status s : {MVHP_NOT_POSITIVE_DEFINITE, MVHP_NO_CONVERGENCE, MVHP_DEGENERATE_LEADING_COEFFICIENT,
                        MVHP_ZERO_RESIDUAL_VARIANCE, MVHP_NEGATIVE_SNR_EIGENVALUE}) {
    EXPECT_EQ(mvhp_exit_code(s), 2) << mvhp_status_name(s);
  }
  EXPECT_EQ(mvhp_exit_code(MVHP_INTERNAL_ERROR), 3);
  EXPECT_EQ(mvhp_exit_code(static_cast<mvhp_status>(999)), 3);
  EXPECT_STREQ(mvhp_status_name(MVHP_TOO_SHORT), "TooShort");
  EXPECT_STREQ(mvhp_status_name(MVHP_OK), "Ok");
}

TEST(CApi, PanelLifecycle) {
  mvhp_panel* p = nullptr;
  ASSERT_EQ(mvhp_panel_load_csv(data_file("panel_479.csv").c_str(), &p), MVHP_OK);
  EXPECT_EQ(mvhp_panel_rows(p), 479u);
  EXPECT_EQ(mvhp_panel_cols(p), 2u);
  EXPECT_STREQ(mvhp_panel_name(p, 1), "FRA");
  EXPECT_EQ(mvhp_panel_name(p, 2), nullptr);
  EXPECT_DOUBLE_EQ(mvhp_panel_get(p, 0, 0), 100.7296);
  EXPECT_TRUE(std::isnan(mvhp_panel_get(p, 479, 0)));
  char* csv = nullptr;
  ASSERT_EQ(mvhp_panel_format_csv(p, &csv), MVHP_OK);
  mvhp_panel* q = nullptr;
  ASSERT_EQ(mvhp_panel_parse_csv(csv, &q), MVHP_OK);
  EXPECT_EQ(mvhp_panel_get(q, 478, 1), mvhp_panel_get(p, 478, 1));
  mvhp_string_free(csv);
  mvhp_panel_free(q);
  mvhp_panel_free(p);
}

TEST(CApi, ParseErrorsCarryMessages) {
  mvhp_panel* p = nullptr;
  EXPECT_EQ(mvhp_panel_parse_csv("a,b\n1,n/a\n", &p), MVHP_NON_NUMERIC_CELL);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(mvhp_last_error()).find("row 2, column 2"), std::string::npos) << mvhp_last_error();
  EXPECT_EQ(mvhp_panel_load_csv("/no/such/file.csv", &p), MVHP_IO_ERROR);
  EXPECT_EQ(mvhp_panel_parse_csv(nullptr, &p), MVHP_INVALID_ARGUMENT);
  ASSERT_EQ(mvhp_panel_parse_csv("a\n1\n", &p), MVHP_OK);
  EXPECT_STREQ(mvhp_last_error(), "");
  mvhp_panel_free(p);
}

TEST(CApi, FromArrayIsRowMajor) {
  const double data[] = {1, 2, 3, 4, 5, 6};
  mvhp_panel* p = nullptr;
  ASSERT_EQ(mvhp_panel_from_array(3, 2, data, &p), MVHP_OK);
  EXPECT_EQ(mvhp_panel_get(p, 1, 0), 3.0);
  EXPECT_STREQ(mvhp_panel_name(p, 0), "y1");
  mvhp_panel_free(p);
  const double bad[] = {1, NAN};
  EXPECT_EQ(mvhp_panel_from_array(1, 2, bad, &p), MVHP_INVALID_ARGUMENT);
}

TEST(CApi, EstimateDetrendPipeline) {
  mvhp_panel *y = nullptr, *truth = nullptr;
  ASSERT_EQ(mvhp_simulate_json(kSimConfig, &y, &truth), MVHP_OK) << mvhp_last_error();
  mvhp_model* model = nullptr;
  ASSERT_EQ(mvhp_estimate(y, 1.0 / 14400.0, 1, &model), MVHP_OK) << mvhp_last_error();
  ASSERT_EQ(mvhp_model_dim(model), 2u);
  double delta[2];
  ASSERT_EQ(mvhp_model_delta(model, delta, 2), MVHP_OK);
  EXPECT_GE(delta[0], delta[1]);
  EXPECT_GE(delta[1], 1.0 / 14400.0 * (1 - 1e-9));
  EXPECT_EQ(mvhp_model_delta(model, delta, 1), MVHP_INVALID_ARGUMENT);
  EXPECT_GE(mvhp_model_alpha(model), 0.0);

  char* report = nullptr;
  ASSERT_EQ(mvhp_model_report_json(model, &report), MVHP_OK);
  mvhp_model* loaded = nullptr;
  ASSERT_EQ(mvhp_model_from_report(report, &loaded), MVHP_OK);
  EXPECT_TRUE(std::isnan(mvhp_model_alpha(loaded)));
  char* again = nullptr;
  EXPECT_EQ(mvhp_model_report_json(loaded, &again), MVHP_INVALID_ARGUMENT);
  double p1[4], p2[4];
  ASSERT_EQ(mvhp_model_transform(model, p1, 4), MVHP_OK);
  ASSERT_EQ(mvhp_model_transform(loaded, p2, 4), MVHP_OK);
  EXPECT_EQ(std::memcmp(p1, p2, sizeof p1), 0);

  mvhp_panel *trend = nullptr, *cycle = nullptr;
  ASSERT_EQ(mvhp_detrend(y, loaded, 0.0, 1, &trend, &cycle), MVHP_OK);
  for (size_t t = 0; t < mvhp_panel_rows(y); ++t)
    for (size_t k = 0; k < 2; ++k)
      EXPECT_NEAR(mvhp_panel_get(trend, t, k) + mvhp_panel_get(cycle, t, k), mvhp_panel_get(y, t, k), 1e-10);

  mvhp_panel *ft = nullptr, *fc = nullptr;
  ASSERT_EQ(mvhp_detrend(y, loaded, 14400.0, 1, &ft, &fc), MVHP_OK);
  const auto dir = std::filesystem::temp_directory_path() / "mvhp_capi_plots";
  std::filesystem::create_directories(dir);
  ASSERT_EQ(mvhp_write_plots(dir.c_str(), y, trend, ft), MVHP_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "y2.svg"));
  std::filesystem::remove_all(dir);

  for (mvhp_panel* p : {y, truth, trend, cycle, ft, fc}) mvhp_panel_free(p);
  mvhp_model_free(model);
  mvhp_model_free(loaded);
  mvhp_string_free(report);
}

TEST(CApi, EstimateErrors) {
  const double data[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  mvhp_panel* p = nullptr;
  ASSERT_EQ(mvhp_panel_from_array(10, 1, data, &p), MVHP_OK);
  mvhp_model* m = nullptr;
  EXPECT_EQ(mvhp_estimate(p, 1.0 / 14400.0, 1, &m), MVHP_TOO_SHORT);
  EXPECT_EQ(mvhp_exit_code(MVHP_TOO_SHORT), 1);
  mvhp_panel_free(p);
  EXPECT_EQ(mvhp_model_from_report("{}", &m), MVHP_INVALID_ARGUMENT);
  EXPECT_EQ(mvhp_model_from_report("nope", &m), MVHP_PARSE_ERROR);
}

TEST(CApi, FactorizePublishedMatrices) {
  char* out = nullptr;
  ASSERT_EQ(mvhp_factorize_json(slurp(data_file("published_covariances.json")).c_str(), &out), MVHP_OK);
  EXPECT_NE(std::string(out).find("\"delta\": [0.312702901"), std::string::npos);
  mvhp_string_free(out);
  EXPECT_EQ(mvhp_factorize_json(R"({"sigma_eps": [[1, 2], [2, 1]], "sigma_xi": [[1, 0], [0, 1]]})", &out),
            MVHP_NOT_POSITIVE_DEFINITE);
  EXPECT_EQ(mvhp_exit_code(MVHP_NOT_POSITIVE_DEFINITE), 2);
}

TEST(CApi, SimulateIsDeterministic) {
  mvhp_panel *a = nullptr, *b = nullptr;
  ASSERT_EQ(mvhp_simulate_json(kSimConfig, &a, nullptr), MVHP_OK);
  ASSERT_EQ(mvhp_simulate_json(kSimConfig, &b, nullptr), MVHP_OK);
  char *ca = nullptr, *cb = nullptr;
  mvhp_panel_format_csv(a, &ca);
  mvhp_panel_format_csv(b, &cb);
  EXPECT_STREQ(ca, cb);
  mvhp_string_free(ca);
  mvhp_string_free(cb);
  mvhp_panel_free(a);
  mvhp_panel_free(b);
}
