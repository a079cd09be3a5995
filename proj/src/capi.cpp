#include "frcone/frcone.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "errors.hpp"
#include "kernels.hpp"

struct frc_config {
  frcone::RunConfig rep;
};

struct frc_report {
  frcone::CommandResult rep;
  std::string json;
};

namespace {

thread_local std::string last_error;

frc_status fail(frc_status status, const std::string& message) {
  last_error = message;
  return status;
}

frc_status ok() {
  last_error.clear();
  return FRC_OK;
}

/// Maps library exceptions onto status codes.
template <class Fn>
frc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const frcone::ParseError& e) {
    return fail(FRC_ERR_PARSE, e.what());
  } catch (const frcone::BranchCutError& e) {
    return fail(FRC_ERR_BRANCH_CUT, e.what());
  } catch (const frcone::Error& e) {
    return fail(FRC_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(FRC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FRC_ERR_INTERNAL, "unknown error");
  }
}

frc_status parse_into(const std::string& text, frc_config** out, int* line, int* column) {
  if (line) *line = 0;
  if (column) *column = 0;
  try {
    *out = new frc_config{frcone::RunConfig::parse(text)};
    return ok();
  } catch (const frcone::ParseError& e) {
    if (line) *line = e.line();
    if (column) *column = e.column();
    return fail(FRC_ERR_PARSE, e.what());
  }
}

}  // namespace

extern "C" {

const char* frc_version(void) { return "1.0.0"; }

const char* frc_last_error(void) { return last_error.c_str(); }

const char* frc_config_help(void) {
  static const std::string help = frcone::config_help();
  return help.c_str();
}

frc_status frc_config_new(frc_config** out) {
  if (!out) return fail(FRC_ERR_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new frc_config{};
    return ok();
  });
}

frc_status frc_config_parse(const char* text, frc_config** out, int* error_line, int* error_column) {
  if (!text || !out) return fail(FRC_ERR_ARGUMENT, "null argument");
  return guarded([&] { return parse_into(text, out, error_line, error_column); });
}

frc_status frc_config_load(const char* path, frc_config** out, int* error_line, int* error_column) {
  if (!path || !out) return fail(FRC_ERR_ARGUMENT, "null argument");
  std::ifstream in(path);
  if (!in) return fail(FRC_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream text;
  text << in.rdbuf();
  return guarded([&] { return parse_into(text.str(), out, error_line, error_column); });
}

frc_status frc_config_set(frc_config* config, const char* section, const char* key, const char* value) {
  if (!config || !section || !key || !value) return fail(FRC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    config->rep.set(section, key, value);
    return ok();
  });
}

void frc_config_free(frc_config* config) { delete config; }

frc_status frc_run(const frc_config* config, const char* command, const char* target, frc_report** out) {
  if (!config || !command || !out) return fail(FRC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* report = new frc_report{frcone::run_command(command, target ? target : "", config->rep), {}};
    report->json = report->rep.report.dump(2);
    *out = report;
    return ok();
  });
}

int frc_report_exit_code(const frc_report* report) { return report ? report->rep.exit_code : FRC_EXIT_PARSE; }

const char* frc_report_json(const frc_report* report) { return report ? report->json.c_str() : ""; }

const char* frc_report_csv(const frc_report* report) { return report ? report->rep.csv.c_str() : ""; }

const char* frc_report_summary(const frc_report* report) { return report ? report->rep.summary.c_str() : ""; }

const char* frc_report_diagnostics(const frc_report* report) { return report ? report->rep.diagnostics.c_str() : ""; }

const char* frc_report_file_stem(const frc_report* report) { return report ? report->rep.file_stem.c_str() : ""; }

frc_status frc_report_write(const frc_report* report, const char* directory, char* path_out, size_t path_len) {
  if (!report) return fail(FRC_ERR_ARGUMENT, "null report");
  try {
    const std::string path = frcone::write_report(report->rep, directory ? directory : report->rep.output_dir);
    if (path_out && path_len > 0) {
      std::strncpy(path_out, path.c_str(), path_len - 1);
      path_out[path_len - 1] = '\0';
    }
    return ok();
  } catch (const std::exception& e) {
    return fail(FRC_ERR_IO, e.what());
  }
}

void frc_report_free(frc_report* report) { delete report; }

frc_status frc_g_form(const double* y, size_t n, double* out) {
  if (!y || !out) return fail(FRC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = frcone::g_form(frcone::ConePoint(std::vector<double>(y, y + n)));
    return ok();
  });
}

frc_status frc_q_form(const double* re, const double* im, size_t n, double* out_re, double* out_im) {
  if (!re || !im || !out_re || !out_im) return fail(FRC_ERR_ARGUMENT, "null argument");
  if (n < 2) return fail(FRC_ERR_DOMAIN, "dimension must be at least 2");
  return guarded([&] {
    const auto q = frcone::q_form(std::span<const double>(re, n), std::span<const double>(im, n));
    *out_re = q.real();
    *out_im = q.imag();
    return ok();
  });
}

frc_status frc_cpow(double re, double im, const char* exponent, double* out_re, double* out_im) {
  if (!exponent || !out_re || !out_im) return fail(FRC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto w = frcone::cpow({re, im}, frcone::parse_rational(exponent));
    *out_re = w.real();
    *out_im = w.imag();
    return ok();
  });
}

}  // extern "C"
