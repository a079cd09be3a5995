#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "frcone/frcone.h"

namespace {

const char* kWorked =
    "[params]\n"
    "n = 2\n"
    "a = 1, 1\n"
    "b = 1, 1\n"
    "c = 4, 4\n"
    "[spaces]\n"
    "p = 2, 2\n"
    "q = 2, 2\n"
    "alpha = 0, 0\n"
    "beta = 0, 0\n";

}  // namespace

TEST_CASE("config lifecycle and parse errors") {
  CHECK(std::strlen(frc_version()) > 0);
  CHECK(std::string(frc_config_help()).find("image_samples") != std::string::npos);

  frc_config* cfg = nullptr;
  int line = -1, column = -1;
  CHECK(frc_config_parse("[params]\nn = 2\n[bogus]\n", &cfg, &line, &column) == FRC_ERR_PARSE);
  CHECK(cfg == nullptr);
  CHECK(line == 3);
  CHECK(column == 1);
  CHECK(std::strlen(frc_last_error()) > 0);

  CHECK(frc_config_load("/nonexistent/frcone.ini", &cfg, &line, &column) != FRC_OK);
  CHECK(frc_config_parse(nullptr, &cfg, nullptr, nullptr) == FRC_ERR_ARGUMENT);

  REQUIRE(frc_config_parse(kWorked, &cfg, &line, &column) == FRC_OK);
  CHECK(frc_config_set(cfg, "sampling", "seed", "12") == FRC_OK);
  CHECK(frc_config_set(cfg, "sampling", "nonsense", "12") == FRC_ERR_PARSE);
  frc_config_free(cfg);
  frc_config_free(nullptr);

  REQUIRE(frc_config_new(&cfg) == FRC_OK);
  frc_config_free(cfg);
}

TEST_CASE("run check and witness through the C API") {
  frc_config* cfg = nullptr;
  REQUIRE(frc_config_parse(kWorked, &cfg, nullptr, nullptr) == FRC_OK);
  frc_report* rep = nullptr;
  REQUIRE(frc_run(cfg, "check", nullptr, &rep) == FRC_OK);
  CHECK(frc_report_exit_code(rep) == FRC_EXIT_PASS);
  CHECK(std::string(frc_report_json(rep)).find("\"holds\": true") != std::string::npos);
  CHECK(std::string(frc_report_csv(rep)).empty());
  CHECK(std::string(frc_report_file_stem(rep)).rfind("check-", 0) == 0);
  frc_report_free(rep);

  REQUIRE(frc_run(cfg, "witness", nullptr, &rep) == FRC_OK);
  CHECK(frc_report_exit_code(rep) == FRC_EXIT_PASS);
  CHECK(std::string(frc_report_summary(rep)).find("s = (-1/4, -1/4)") != std::string::npos);
  frc_report_free(rep);

  REQUIRE(frc_config_set(cfg, "spaces", "q", "1, 1") == FRC_OK);
  REQUIRE(frc_run(cfg, "check", nullptr, &rep) == FRC_OK);
  CHECK(frc_report_exit_code(rep) == FRC_EXIT_RANGE_GATE);
  CHECK(std::strlen(frc_report_diagnostics(rep)) > 0);
  frc_report_free(rep);

  CHECK(frc_run(cfg, nullptr, nullptr, &rep) == FRC_ERR_ARGUMENT);
  frc_config_free(cfg);
}

TEST_CASE("geometry helpers") {
  const double y[2] = {1.0, 2.0};
  double g = 0;
  CHECK(frc_g_form(y, 2, &g) == FRC_OK);
  CHECK(g == 3.0);
  const double outside[2] = {2.0, 1.0};
  CHECK(frc_g_form(outside, 2, &g) == FRC_ERR_DOMAIN);

  const double re[2] = {1.0, 0.0}, im[2] = {0.0, 1.0};
  double qr = 0, qi = 0;
  CHECK(frc_q_form(re, im, 2, &qr, &qi) == FRC_OK);
  CHECK(qr == 2.0);
  CHECK(qi == 0.0);

  double wr = 0, wi = 0;
  CHECK(frc_cpow(0.0, 4.0, "1/2", &wr, &wi) == FRC_OK);
  CHECK(wr == doctest::Approx(std::sqrt(2.0)));
  CHECK(wi == doctest::Approx(std::sqrt(2.0)));
  CHECK(frc_cpow(-1.0, 0.0, "1/2", &wr, &wi) == FRC_ERR_BRANCH_CUT);
  CHECK(frc_cpow(1.0, 0.0, "0.5", &wr, &wi) == FRC_ERR_PARSE);
}
