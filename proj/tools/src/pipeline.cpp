#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "krein/cli.hpp"

namespace krein::cli {

namespace {

template <class T>
T from_quaternion(const Quaternion& q) {
  if constexpr (FieldTraits<T>::is_quaternion)
    return q;
  else
    return Complex(q.w, q.x);
}

template <class T>
OperatorSeries<T> series_of(const RunConfig& cfg) {
  std::vector<Matrix<T>> cs;
  for (const auto& q : cfg.coeffs) {
    Matrix<T> m(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t k = 0; k < q.cols(); ++k) m(i, k) = from_quaternion<T>(q(i, k));
    cs.push_back(std::move(m));
  }
  return OperatorSeries<T>(std::move(cs), cfg.r0);
}

/// Unit vector with standard normal components.
template <class T>
std::vector<T> random_unit(std::mt19937_64& g, std::size_t d) {
  std::normal_distribution<double> nd;
  std::vector<T> v(d);
  double s = 0.0;
  for (auto& e : v) {
    if constexpr (FieldTraits<T>::is_quaternion)
      e = Quaternion{nd(g), nd(g), nd(g), nd(g)};
    else
      e = Complex(nd(g), nd(g));
    s += norm(e);
  }
  for (auto& e : v) e = e * (1.0 / std::sqrt(s));
  return v;
}

template <class T>
Record run_one(const RunConfig& cfg, const OperatorSeries<T>& phi, const OperatorSeries<T>& realized,
               std::size_t n) {
  Record rec;
  rec.n = n;
  const GramSpec<T> spec(realized, cfg.r, n);
  const auto op = build_form_matrix(spec);
  const auto basis = spectral_split(op.P, cfg.cutoff);
  const auto model = build_model_space(basis, spec);
  const auto real = build_realization(model, basis, spec);

  rec.signature = basis.signature;
  rec.max_abs_eigenvalue = basis.max_abs;
  rec.near_cutoff = basis.near_cutoff;
  if (!basis.near_cutoff.empty())
    rec.warnings.push_back(std::to_string(basis.near_cutoff.size()) +
                           " kept eigenvalue(s) within three decades of the cutoff");

  if (cfg.coefficient_symmetry)
    rec.moment_errors = krein_coefficient_moment_check(real, phi, Signature(*cfg.coefficient_symmetry), cfg.nmax);
  else
    rec.moment_errors = moment_check(real, phi, cfg.nmax);

  rec.coisometry = coisometry_defect(real, cfg.coisometry_depth);
  rec.shift = real.norm;

  std::vector<T> grid;
  for (const auto& q : cfg.grid) grid.push_back(from_quaternion<T>(q));
  const auto phs = sharp(realized);
  for (const T& z : grid)
    for (const T& w : grid) {
      const auto closed = kernel_phi(phs, z, w);
      const auto synth = synthesized_kernel(model, z, w);
      const auto resolv = kernel_reconstruct(real, z, w);
      rec.kernel_discrepancy = std::max(
          {rec.kernel_discrepancy, (closed - synth).norm_fro(), (closed - resolv).norm_fro(), (synth - resolv).norm_fro()});
    }

  std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
  for (const T& a : grid)
    for (const T& p : grid) {
      const auto xi = random_unit<T>(rng, cfg.dim);
      const auto eta = random_unit<T>(rng, cfg.dim);
      const T lhs = form_coeff(cauchy_vector(a, xi, n, cfg.r), cauchy_vector(p, eta, n, cfg.r), spec);
      const T rhs = inner(matvec(kernel_phi(phs, p, a), xi), eta);
      rec.reproduction_discrepancy = std::max(rec.reproduction_discrepancy, std::sqrt(norm(lhs - rhs)));
    }

  rec.norm = norm_bound_check(spec, 256);
  return rec;
}

template <class T>
std::vector<Record> sweep(const RunConfig& cfg) {
  const auto phi = series_of<T>(cfg);
  const auto realized =
      cfg.coefficient_symmetry ? times_signature(phi, Signature(*cfg.coefficient_symmetry)) : phi;

  const std::size_t jobs = cfg.n_list.size();
  std::vector<Record> out(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        out[i] = run_one(cfg, phi, realized, cfg.n_list[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = thread_count(jobs);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t i = 0; i < jobs; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw PipelineError(cfg.n_list[i], e.what());
    }
  }
  return out;
}

}  // namespace

bool Record::moments_pass(const Tolerances& t) const {
  return std::all_of(moment_errors.begin(), moment_errors.end(), [&](double e) { return e <= t.moment; });
}
bool Record::coisometry_pass(const Tolerances& t) const { return coisometry.observable <= t.coisometry; }
bool Record::kernel_pass(const Tolerances& t) const { return kernel_discrepancy <= t.kernel; }
bool Record::reproduction_pass(const Tolerances& t) const { return reproduction_discrepancy <= t.reproduction; }
bool Record::pass(const Tolerances& t) const {
  return moments_pass(t) && coisometry_pass(t) && kernel_pass(t) && reproduction_pass(t) && norm.pass;
}

bool Report::pass() const {
  return std::all_of(records.begin(), records.end(), [&](const Record& r) { return r.pass(config.tol); });
}

std::size_t thread_count(std::size_t jobs) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KREIN_REALIZE_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0)
      throw ConfigError(std::string("KREIN_REALIZE_THREADS: expected a positive integer, got \"") + env + "\"");
    cap = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(cap, jobs));
}

Report run_pipeline(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  rep.records = cfg.field == Field::complex ? sweep<Complex>(cfg) : sweep<Quaternion>(cfg);
  return rep;
}

}  // namespace krein::cli
