#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polyeig {

// One grid point of a timing sweep.
struct BenchRow {
  std::string suite;
  int param = 0;  // the swept quantity: degree for *-d suites, dimension for *-n
  double mean_seconds = 0.0;
  double max_berr = 0.0;
};

// Suites: scalar-d, general-d, hess-d, tri-d (degree sweeps at n = 2) and
// general-n, hess-n, tri-n (dimension sweeps at d = 2).
std::vector<std::string> bench_suites();
std::vector<int> bench_grid(const std::string& suite);

std::vector<BenchRow> run_bench(const std::string& suite, int repeats, std::uint64_t seed);

// Header `suite,param,mean_seconds,max_berr`, one row per grid point.
std::string bench_csv(const std::vector<BenchRow>& rows);

// Least-squares slope of log(seconds) against log(param).
double fitted_slope(const std::vector<BenchRow>& rows);

}  // namespace polyeig
