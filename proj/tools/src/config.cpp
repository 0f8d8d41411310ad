#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "krein/cli.hpp"

namespace krein::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::uint64_t integer(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) fail(path, "expected a non-negative integer, got " + j.dump());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && v == std::floor(v) && v < 9.0e15) return static_cast<std::uint64_t>(v);
  }
  fail(path, "expected a non-negative integer");
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

/// [re, im] for the complex field, [w, x, y, z] for the quaternions.
Quaternion scalar(const Json& j, Field field, const std::string& path) {
  const std::size_t want = field == Field::complex ? 2 : 4;
  if (!j.is_array() || j.size() != want)
    fail(path, field == Field::complex ? "expected a complex entry [re, im]" : "expected a quaternion entry [w, x, y, z]");
  double c[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < want; ++i) c[i] = number(j[i], at_index(path, i));
  return {c[0], c[1], c[2], c[3]};
}

QMatrix square(const Json& j, std::size_t d, Field field, const std::string& path) {
  array(j, path);
  if (j.size() != d) fail(path, "expected " + std::to_string(d) + " rows, got " + std::to_string(j.size()));
  QMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string rp = at_index(path, i);
    const Json& row = array(j[i], rp);
    if (row.size() != d) fail(rp, "expected " + std::to_string(d) + " entries, got " + std::to_string(row.size()));
    for (std::size_t k = 0; k < d; ++k) m(i, k) = scalar(row[k], field, at_index(rp, k));
  }
  return m;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {"field",     "dim",  "coeffs",           "r",    "r0",
                                             "N_list",    "cutoff", "coefficient_symmetry", "nmax", "coisometry_depth",
                                             "grid",      "seed", "tolerances",       "output"};
  return keys;
}

Json scalar_json(const Quaternion& q, Field field) {
  if (field == Field::complex) return Json::array({q.w, q.x});
  return Json::array({q.w, q.x, q.y, q.z});
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail("$", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected an object");
  for (const auto& [key, _] : doc.items())
    if (!known_keys().contains(key)) fail("$." + key, "unknown key");

  auto require = [&](const char* key) -> const Json& {
    if (!doc.contains(key)) fail(std::string("$.") + key, "missing required key");
    return doc[key];
  };

  RunConfig cfg;
  const Json& field = require("field");
  if (field == "complex")
    cfg.field = Field::complex;
  else if (field == "quaternion")
    cfg.field = Field::quaternion;
  else
    fail("$.field", "expected \"complex\" or \"quaternion\", got " + field.dump());

  cfg.dim = integer(require("dim"), "$.dim");
  if (cfg.dim == 0) fail("$.dim", "must be positive");

  const Json& coeffs = array(require("coeffs"), "$.coeffs");
  if (coeffs.empty()) fail("$.coeffs", "need at least one coefficient");
  for (std::size_t n = 0; n < coeffs.size(); ++n)
    cfg.coeffs.push_back(square(coeffs[n], cfg.dim, cfg.field, at_index("$.coeffs", n)));

  cfg.r = number(require("r"), "$.r");
  cfg.r0 = number(require("r0"), "$.r0");
  if (!(cfg.r > 0.0)) fail("$.r", "must be positive, got " + fmt(cfg.r));
  if (!(cfg.r < cfg.r0)) fail("$.r", "need r < r0, got r = " + fmt(cfg.r) + " and r0 = " + fmt(cfg.r0));
  if (!(cfg.r0 < 1.0)) fail("$.r0", "need r0 < 1, got " + fmt(cfg.r0));

  const Json& nl = array(require("N_list"), "$.N_list");
  if (nl.empty()) fail("$.N_list", "must not be empty");
  for (std::size_t i = 0; i < nl.size(); ++i) {
    const std::string p = at_index("$.N_list", i);
    const auto n = integer(nl[i], p);
    if (n == 0) fail(p, "truncation order must be positive");
    if (!cfg.n_list.empty() && n <= cfg.n_list.back()) fail(p, "N_list must be strictly ascending");
    cfg.n_list.push_back(static_cast<std::size_t>(n));
  }

  if (doc.contains("cutoff")) {
    cfg.cutoff = number(doc["cutoff"], "$.cutoff");
    if (!(cfg.cutoff > 0.0 && cfg.cutoff < 1.0)) fail("$.cutoff", "must lie in (0, 1), got " + fmt(cfg.cutoff));
  }

  if (doc.contains("coefficient_symmetry") && !doc["coefficient_symmetry"].is_null()) {
    const Json& jc = array(doc["coefficient_symmetry"], "$.coefficient_symmetry");
    if (jc.size() != cfg.dim)
      fail("$.coefficient_symmetry", "expected " + std::to_string(cfg.dim) + " entries, got " + std::to_string(jc.size()));
    std::vector<int> signs;
    for (std::size_t i = 0; i < jc.size(); ++i) {
      if (!jc[i].is_number_integer() || (jc[i] != 1 && jc[i] != -1))
        fail(at_index("$.coefficient_symmetry", i), "expected 1 or -1");
      signs.push_back(jc[i].get<int>());
    }
    cfg.coefficient_symmetry = std::move(signs);
  }

  if (doc.contains("nmax")) cfg.nmax = integer(doc["nmax"], "$.nmax");
  if (doc.contains("coisometry_depth")) cfg.coisometry_depth = integer(doc["coisometry_depth"], "$.coisometry_depth");
  if (doc.contains("seed")) cfg.seed = integer(doc["seed"], "$.seed");

  if (doc.contains("grid")) {
    const Json& grid = array(doc["grid"], "$.grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::string p = at_index("$.grid", i);
      const Quaternion q = scalar(grid[i], cfg.field, p);
      if (!(abs(q) < cfg.r)) fail(p, "evaluation point must satisfy |p| < r = " + fmt(cfg.r));
      cfg.grid.push_back(q);
    }
  } else {
    // the origin, a real point and off-axis points inside the disc of radius r
    cfg.grid = {Quaternion{}, Quaternion{0.3 * cfg.r}, Quaternion{0.2 * cfg.r, 0.5 * cfg.r, 0.0, 0.0}};
    if (cfg.field == Field::quaternion) cfg.grid.push_back(Quaternion{-0.1 * cfg.r, 0.0, 0.3 * cfg.r, 0.4 * cfg.r});
  }

  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    if (!t.is_object()) fail("$.tolerances", "expected an object");
    for (const auto& [key, val] : t.items()) {
      const std::string p = "$.tolerances." + key;
      double* slot = key == "moment"         ? &cfg.tol.moment
                     : key == "coisometry"   ? &cfg.tol.coisometry
                     : key == "kernel"       ? &cfg.tol.kernel
                     : key == "reproduction" ? &cfg.tol.reproduction
                                             : nullptr;
      if (slot == nullptr) fail(p, "unknown tolerance");
      *slot = number(val, p);
      if (!(*slot > 0.0)) fail(p, "must be positive");
    }
  }

  if (doc.contains("output") && !doc["output"].is_null()) {
    if (!doc["output"].is_string()) fail("$.output", "expected a string");
    cfg.output = doc["output"].get<std::string>();
  }
  return cfg;
}

Json RunConfig::echo() const {
  Json j;
  j["field"] = field == Field::complex ? "complex" : "quaternion";
  j["dim"] = dim;
  Json cs = Json::array();
  for (const auto& m : coeffs) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m(i, k), field));
      rows.push_back(std::move(row));
    }
    cs.push_back(std::move(rows));
  }
  j["coeffs"] = std::move(cs);
  j["r"] = r;
  j["r0"] = r0;
  j["N_list"] = n_list;
  j["cutoff"] = cutoff;
  j["coefficient_symmetry"] = coefficient_symmetry ? Json(*coefficient_symmetry) : Json(nullptr);
  j["nmax"] = nmax;
  j["coisometry_depth"] = coisometry_depth;
  Json g = Json::array();
  for (const auto& q : grid) g.push_back(scalar_json(q, field));
  j["grid"] = std::move(g);
  j["seed"] = seed;
  j["tolerances"] = {{"moment", tol.moment},
                     {"coisometry", tol.coisometry},
                     {"kernel", tol.kernel},
                     {"reproduction", tol.reproduction}};
  return j;
}

}  // namespace krein::cli
