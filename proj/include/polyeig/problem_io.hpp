#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyeig/core.hpp"
#include "polyeig/solve.hpp"

namespace polyeig {

// Every malformed input surfaces as one of these (never a crash), carrying
// 1-based line/column of the offending token when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

// Text format: header `pep n d structure`, then d+1 coefficient blocks of
// n rows, each row n complex entries written as `re,im`; `#` starts a
// comment.  JSON alternative selected by a `.json` path extension.
MatrixPolynomial parse_problem_text(const std::string& content);
MatrixPolynomial parse_problem_json(const std::string& content);
MatrixPolynomial parse_problem(const std::string& path);

// Emitters round-trip bit-exactly (17 significant digits).
std::string emit_problem_text(const MatrixPolynomial& p);
std::string emit_problem_json(const MatrixPolynomial& p);
void write_problem(const MatrixPolynomial& p, const std::string& path);

// One solve run plus the aggregates the reports quote.
struct RunReport {
  int n = 0;
  int d = 0;
  Structure structure = Structure::General;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  double max_berr = 0.0;
  double avg_berr = 0.0;
  std::vector<EigenResult> results;
};

RunReport run_with_report(const MatrixPolynomial& p, const SolveOptions& opts);

// Renderings: human-readable table, `schema: 1` JSON, and CSV with columns
// kind,lambda_re,lambda_im,berr,cond,status,iterations.
std::string report_text(const RunReport& r);
std::string report_json(const RunReport& r);
std::string report_csv(const RunReport& r);

}  // namespace polyeig
