#include <cerrno>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "krein/cli.hpp"

namespace krein::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config: " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krein-space state realization and verification sweep", "realize"};
  std::string config_path;
  std::string format = "json";
  std::string out_path;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "report path (default: config \"output\", else stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = parse_config(slurp(config_path));
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (out_path.empty() && cfg.output) out_path = *cfg.output;

  Report rep;
  try {
    rep = run_pipeline(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  const std::string text = emit_report(rep, format == "csv" ? Format::csv : Format::json);
  if (out_path.empty()) {
    out << text << std::flush;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
      err << out_path << ": " << std::strerror(errno) << '\n';
      return kExitConfig;
    }
  }
  return rep.pass() ? kExitPass : kExitAssertion;
}

}  // namespace krein::cli
