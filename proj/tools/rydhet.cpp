// Command-line front end. Links only the C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "rydhet/rydhet.h"

namespace {

// Exit codes: 0 ok, 1 config error, 2 I/O error, 3 numerical failure.
int exit_code(rydhet_status s) {
  switch (s) {
    case RYDHET_OK: return 0;
    case RYDHET_ERR_CONFIG:
    case RYDHET_ERR_ARGUMENT: return 1;
    case RYDHET_ERR_IO: return 2;
    default: return 3;
  }
}

int report(rydhet_status s, const char* message = nullptr) {
  if (s != RYDHET_OK)
    std::fprintf(stderr, "rydhet: error: %s\n", message ? message : rydhet_last_error());
  return exit_code(s);
}

struct Config {
  rydhet_config* handle = nullptr;
  ~Config() { rydhet_config_free(handle); }
};

struct Buffer {
  rydhet_buffer* handle = nullptr;
  ~Buffer() { rydhet_buffer_free(handle); }
};

rydhet_status load(const std::string& path, Config& cfg) {
  return path.empty() ? rydhet_config_default(&cfg.handle)
                      : rydhet_config_load(path.c_str(), &cfg.handle);
}

// --out wins; sweeps fall back to output.path. Empty or "-" means stdout.
int emit(const Config* cfg, const std::string& out, const Buffer& buf) {
  std::string path = out;
  if (path.empty() && cfg) {
    Buffer p;
    if (auto s = rydhet_config_output_path(cfg->handle, &p.handle); s != RYDHET_OK) return report(s);
    path = rydhet_buffer_data(p.handle);
  }
  if (path.empty() || path == "-") {
    const std::size_t n = rydhet_buffer_size(buf.handle);
    const bool ok = std::fwrite(rydhet_buffer_data(buf.handle), 1, n, stdout) == n &&
                    std::fflush(stdout) == 0;
    return ok ? 0 : report(RYDHET_ERR_IO, "cannot write to standard output");
  }
  return report(rydhet_write_file(path.c_str(), buf.handle));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg-atom heterodyne receiver model: sweeps, operating-point "
               "optimization and closed-form validation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rydhet_version());

  std::string config_path, out_path, format = "config", problem;
  unsigned threads = 0;

  auto* sweep = app.add_subcommand("sweep", "Evaluate the configured scenario grid");
  sweep->add_option("--config", config_path, "Run configuration (JSON)")->required();
  sweep->add_option("--out", out_path, "Output file (default: output.path, else stdout)");
  sweep->add_option("--format", format, "csv, json, or config")
      ->check(CLI::IsMember({"csv", "json", "config"}));
  sweep->add_option("--threads", threads, "Worker threads (0 = all)");

  auto* optimize = app.add_subcommand("optimize", "Solve one operating-point problem");
  optimize->add_option("--config", config_path, "Run configuration (JSON)")->required();
  optimize->add_option("--problem", problem, "p1, p2, p3, p4 or p5")
      ->required()
      ->check(CLI::IsMember({"p1", "p2", "p3", "p4", "p5"}));
  optimize->add_option("--out", out_path, "Output file (default: stdout)");
  optimize->add_option("--threads", threads, "Worker threads (0 = all)");

  auto* validate = app.add_subcommand("validate", "Check closed forms against the numerical solve");
  validate->add_option("--config", config_path, "Override the default parameter set");
  validate->add_option("--threads", threads, "Worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  Config cfg;
  if (auto s = load(config_path, cfg); s != RYDHET_OK) return report(s);

  if (*sweep) {
    const rydhet_format f = format == "csv"    ? RYDHET_FORMAT_CSV
                            : format == "json" ? RYDHET_FORMAT_JSON
                                               : RYDHET_FORMAT_FROM_CONFIG;
    Buffer buf;
    if (auto s = rydhet_sweep(cfg.handle, f, threads, &buf.handle); s != RYDHET_OK)
      return report(s);
    return emit(&cfg, out_path, buf);
  }

  if (*optimize) {
    Buffer buf;
    if (auto s = rydhet_optimize(cfg.handle, problem.c_str(), threads, &buf.handle);
        s != RYDHET_OK)
      return report(s);
    return emit(nullptr, out_path, buf);
  }

  int passed = 0;
  Buffer buf;
  if (auto s = rydhet_validate(cfg.handle, threads, &passed, &buf.handle); s != RYDHET_OK)
    return report(s);
  std::fputs(rydhet_buffer_data(buf.handle), stdout);
  return passed ? 0 : 3;
}
