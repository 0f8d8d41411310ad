#pragma once

// Config ingestion, the per-N verification sweep and report serialization
// behind the `realize` executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "krein/realize.hpp"

namespace krein::cli {

using Json = nlohmann::ordered_json;

/// Malformed or invalid configuration.  The message starts with the JSON
/// path of the offending value, e.g. "$.coeffs[0][1][0]: ...".
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A library error raised while processing one truncation order.
class PipelineError : public Error {
 public:
  PipelineError(std::size_t n, const std::string& what)
      : Error("N = " + std::to_string(n) + ": " + what), n_(n) {}
  std::size_t truncation() const noexcept { return n_; }

 private:
  std::size_t n_;
};

enum class Field { complex, quaternion };

struct Tolerances {
  double moment = 1e-6;
  double coisometry = 1e-5;
  double kernel = 1e-6;
  double reproduction = 1e-10;
};

struct RunConfig {
  Field field = Field::complex;
  std::size_t dim = 0;
  /// Taylor coefficients; complex entries are stored with y = z = 0.
  std::vector<QMatrix> coeffs;
  double r = 0.0;
  double r0 = 0.0;
  std::vector<std::size_t> n_list;
  double cutoff = 1e-12;
  std::optional<std::vector<int>> coefficient_symmetry;
  std::size_t nmax = 6;
  std::size_t coisometry_depth = 8;
  std::vector<Quaternion> grid;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::optional<std::string> output;

  /// The validated config with defaults filled in.
  Json echo() const;
};

RunConfig parse_config(std::string_view text);

struct Record {
  std::size_t n = 0;
  SignatureCount signature;
  double max_abs_eigenvalue = 0.0;
  std::vector<double> near_cutoff;
  std::vector<double> moment_errors;
  CoisometryDefect coisometry;
  double kernel_discrepancy = 0.0;
  double reproduction_discrepancy = 0.0;
  NormBound norm;
  ShiftNorm shift;
  std::vector<std::string> warnings;

  bool moments_pass(const Tolerances& t) const;
  bool coisometry_pass(const Tolerances& t) const;
  bool kernel_pass(const Tolerances& t) const;
  bool reproduction_pass(const Tolerances& t) const;
  bool pass(const Tolerances& t) const;
};

struct Report {
  RunConfig config;
  std::vector<Record> records;  ///< ordered as N_list
  bool pass() const;
};

/// Worker count: KREIN_REALIZE_THREADS if set (a positive integer), else the
/// hardware concurrency, never more than `jobs`.
std::size_t thread_count(std::size_t jobs);

Report run_pipeline(const RunConfig& cfg);

enum class Format { json, csv };

std::string emit_report(const Report& rep, Format format);

/// Deterministic JSON text: two-space indent, insertion key order, floats
/// printed with %.17g.
std::string write_json(const Json& j);

/// The `realize` command line: parses argv, runs the sweep and writes the
/// report to `out` (or the requested file).  Returns one of the exit codes
/// below; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit codes of the executable.
inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

}  // namespace krein::cli
