#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "krein/cli.hpp"

namespace krein::cli {

namespace {

std::string fmt17(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, val] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(val, out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      // arrays of scalars stay on one line
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(e, out, indent + 2);
      }
      if (!flat) out += "\n" + std::string(static_cast<std::size_t>(indent), ' ');
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += fmt17(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json check(double value, double tol, bool pass) {
  return {{"value", value}, {"tolerance", tol}, {"pass", pass}};
}

Json record_json(const Record& r, const Tolerances& t) {
  Json j;
  j["N"] = r.n;
  j["signature"] = {{"positive", r.signature.positive},
                    {"negative", r.signature.negative},
                    {"zero", r.signature.zero}};
  j["max_abs_eigenvalue"] = r.max_abs_eigenvalue;
  j["near_cutoff_eigenvalues"] = r.near_cutoff;
  j["moments"] = {{"errors", r.moment_errors}, {"tolerance", t.moment}, {"pass", r.moments_pass(t)}};
  j["coisometry"] = {{"observable", r.coisometry.observable},
                     {"raw", r.coisometry.raw},
                     {"subspace_dim", r.coisometry.subspace_dim},
                     {"tolerance", t.coisometry},
                     {"pass", r.coisometry_pass(t)}};
  j["kernel_three_way"] = check(r.kernel_discrepancy, t.kernel, r.kernel_pass(t));
  j["kernel_reproduction"] = check(r.reproduction_discrepancy, t.reproduction, r.reproduction_pass(t));
  j["norm_bound"] = {{"estimate", r.norm.norm_estimate},
                     {"max_phi", r.norm.max_phi},
                     {"bound", r.norm.bound},
                     {"relative_tolerance", 1e-12},
                     {"pass", r.norm.pass}};
  j["shift_norm"] = {{"euclidean", r.shift.euclidean}, {"weighted", r.shift.weighted}, {"bound", r.shift.bound}};
  j["warnings"] = r.warnings;
  j["pass"] = r.pass(t);
  return j;
}

std::string csv(const Report& rep) {
  std::string out = "N,positive,negative,zero";
  for (std::size_t k = 0; k <= rep.config.nmax; ++k) out += ",e" + std::to_string(k);
  out += ",coisometry_observable,coisometry_raw,kernel_three_way,kernel_reproduction,norm_estimate,norm_bound,pass\n";
  for (const auto& r : rep.records) {
    out += std::to_string(r.n) + "," + std::to_string(r.signature.positive) + "," +
           std::to_string(r.signature.negative) + "," + std::to_string(r.signature.zero);
    for (double e : r.moment_errors) out += "," + fmt17(e);
    for (double v : {r.coisometry.observable, r.coisometry.raw, r.kernel_discrepancy, r.reproduction_discrepancy,
                     r.norm.norm_estimate, r.norm.bound})
      out += "," + fmt17(v);
    out += r.pass(rep.config.tol) ? ",true\n" : ",false\n";
  }
  return out;
}

}  // namespace

std::string write_json(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

std::string emit_report(const Report& rep, Format format) {
  if (format == Format::csv) return csv(rep);
  Json j;
  j["environment"] = {{"library_version", KREIN_VERSION},
                      {"float_format", "%.17g"},
                      {"coefficient_space", rep.config.coefficient_symmetry ? "krein" : "hilbert"}};
  j["config"] = rep.config.echo();
  Json recs = Json::array();
  for (const auto& r : rep.records) recs.push_back(record_json(r, rep.config.tol));
  j["records"] = std::move(recs);
  j["pass"] = rep.pass();
  return write_json(j);
}

}  // namespace krein::cli
