// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frcone/frcone.h"

namespace {

int report_parse_error(const std::string& origin, int line, int column) {
  if (line > 0) {
    std::fprintf(stderr, "%s:%d:%d: %s\n", origin.c_str(), line, column, frc_last_error());
  } else {
    std::fprintf(stderr, "%s: %s\n", origin.c_str(), frc_last_error());
  }
  return FRC_EXIT_PARSE;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo checks of Forelli-Rudin type operators on the light-cone tube"};
  app.footer(std::string("Exit codes: 0 pass, 1 verdict false or check failed, 2 range gate, 3 parse or invalid "
                         "input, 4 divergence.\nThe default report directory is $FRCONE_OUTPUT_DIR when set.\n\n"
                         "Config keys:\n") +
             frc_config_help());
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  bool no_write = false;
  bool print_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
    sub->add_option("-s,--set", overrides, "override, section.key=value (repeatable)");
    sub->add_option("-o,--output-dir", output_dir, "report directory");
    sub->add_flag("--no-write", no_write, "do not write a report file");
    sub->add_flag("--json", print_json, "print the JSON report on stdout after the summary");
  };

  std::string target;
  auto* check = app.add_subcommand("check", "theorem verdicts for the configured parameters");
  auto* witness = app.add_subcommand("witness", "solve for a Schur witness");
  auto* verify = app.add_subcommand("verify", "Monte Carlo verification");
  verify->add_option("target", target, "lemma21 | remark21 | schur | duality")
      ->required()
      ->check(CLI::IsMember({"lemma21", "remark21", "schur", "duality"}));
  auto* scaling = app.add_subcommand("scaling", "scaling-law fits of test-function norms");
  scaling->add_option("target", target, "scaling (default) | blowup")->check(CLI::IsMember({"scaling", "blowup"}));
  for (auto* sub : {check, witness, verify, scaling}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : FRC_EXIT_PARSE;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  frc_config* config = nullptr;
  int line = 0, column = 0;
  if (frc_config_load(config_path.c_str(), &config, &line, &column) != FRC_OK) {
    return report_parse_error(config_path, line, column);
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    const auto dot = item.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      std::fprintf(stderr, "--set expects section.key=value, got '%s'\n", item.c_str());
      frc_config_free(config);
      return FRC_EXIT_PARSE;
    }
    const std::string section = item.substr(0, dot);
    const std::string key = item.substr(dot + 1, eq - dot - 1);
    const std::string value = item.substr(eq + 1);
    if (frc_config_set(config, section.c_str(), key.c_str(), value.c_str()) != FRC_OK) {
      frc_config_free(config);
      return report_parse_error("--set " + item, 0, 0);
    }
  }

  frc_report* report = nullptr;
  if (frc_run(config, command.c_str(), target.empty() ? nullptr : target.c_str(), &report) != FRC_OK) {
    std::fprintf(stderr, "%s\n", frc_last_error());
    frc_config_free(config);
    return FRC_EXIT_PARSE;
  }
  const int code = frc_report_exit_code(report);
  std::printf("%s\n", frc_report_summary(report));
  if (print_json) std::printf("%s\n", frc_report_json(report));
  if (*frc_report_diagnostics(report)) std::fprintf(stderr, "%s\n", frc_report_diagnostics(report));
  if (!no_write) {
    char path[4096];
    if (frc_report_write(report, output_dir.empty() ? nullptr : output_dir.c_str(), path, sizeof path) == FRC_OK) {
      std::fprintf(stderr, "report: %s\n", path);
    } else {
      std::fprintf(stderr, "%s\n", frc_last_error());
    }
  }
  frc_report_free(report);
  frc_config_free(config);
  return code;
}
