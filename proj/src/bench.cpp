#include "polyeig/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "polyeig/generator.hpp"
#include "polyeig/solve.hpp"

namespace polyeig {

namespace {

struct SuiteSpec {
  const char* name;
  GeneratorKind kind;
  bool sweep_degree;  // sweep d at n = 2, otherwise sweep n at d = 2
};

constexpr SuiteSpec kSuites[] = {
    {"scalar-d", GeneratorKind::Scalar, true},
    {"general-d", GeneratorKind::General, true},
    {"hess-d", GeneratorKind::Hessenberg, true},
    {"tri-d", GeneratorKind::Tridiagonal, true},
    {"general-n", GeneratorKind::General, false},
    {"hess-n", GeneratorKind::Hessenberg, false},
    {"tri-n", GeneratorKind::Tridiagonal, false},
};

const SuiteSpec& suite_spec(const std::string& suite) {
  for (const SuiteSpec& s : kSuites)
    if (suite == s.name) return s;
  throw std::invalid_argument("unknown bench suite '" + suite + "'");
}

}  // namespace

std::vector<std::string> bench_suites() {
  std::vector<std::string> out;
  for (const SuiteSpec& s : kSuites) out.emplace_back(s.name);
  return out;
}

std::vector<int> bench_grid(const std::string& suite) {
  const SuiteSpec& s = suite_spec(suite);
  if (s.kind == GeneratorKind::Scalar) return {50, 100, 200, 400, 800, 1600, 3200};
  if (s.sweep_degree) return {50, 100, 200, 400, 800};
  return {20, 40, 80, 160};
}

std::vector<BenchRow> run_bench(const std::string& suite, int repeats, std::uint64_t seed) {
  const SuiteSpec& s = suite_spec(suite);
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  std::vector<BenchRow> rows;
  for (const int param : bench_grid(suite)) {
    const int n = s.sweep_degree ? (s.kind == GeneratorKind::Scalar ? 1 : 2) : param;
    const int d = s.sweep_degree ? param : 2;
    BenchRow row{suite, param, 0.0, 0.0};
    for (int rep = 0; rep < repeats; ++rep) {
      // Fresh problem per repeat so the mean is over the ensemble, not one draw.
      const std::uint64_t derived =
          seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(param) * 1000u + rep);
      const MatrixPolynomial p = generate(s.kind, n, d, derived);
      SolveOptions opts;
      opts.seed = derived;
      const auto t0 = std::chrono::steady_clock::now();
      const std::vector<EigenResult> results = solve(p, opts);
      const auto t1 = std::chrono::steady_clock::now();
      row.mean_seconds += std::chrono::duration<double>(t1 - t0).count();
      for (const EigenResult& e : results) row.max_berr = std::max(row.max_berr, e.berr);
    }
    row.mean_seconds /= repeats;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "suite,param,mean_seconds,max_berr\n";
  char buf[160];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.9g,%.17g\n", r.suite.c_str(), r.param,
                  r.mean_seconds, r.max_berr);
    out += buf;
  }
  return out;
}

double fitted_slope(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("slope fit needs at least two rows");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(rows.size());
  for (const BenchRow& r : rows) {
    const double x = std::log(static_cast<double>(r.param));
    const double y = std::log(r.mean_seconds);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace polyeig
