#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyeig/bench.hpp"
#include "polyeig/core.hpp"
#include "polyeig/generator.hpp"
#include "polyeig/metrics.hpp"
#include "polyeig/pellet.hpp"
#include "polyeig/pivoted_qr.hpp"
#include "polyeig/prep.hpp"
#include "polyeig/problem_io.hpp"
#include "polyeig/solve.hpp"

namespace {

using namespace polyeig;

std::uint64_t default_seed() {
  const char* env = std::getenv("POLYEIG_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    std::cerr << "warning: ignoring non-numeric POLYEIG_SEED '" << env << "'\n";
    return 1;
  }
  return v;
}

cd parse_complex_arg(const std::string& text) {
  const char* begin = text.c_str();
  char* next = nullptr;
  const double re = std::strtod(begin, &next);
  if (next == begin) throw CLI::ValidationError("coeffs", "non-numeric entry '" + text + "'");
  double im = 0.0;
  if (*next == ',') {
    const char* im_text = next + 1;
    im = std::strtod(im_text, &next);
    if (next == im_text)
      throw CLI::ValidationError("coeffs", "non-numeric entry '" + text + "'");
  }
  if (*next != '\0')
    throw CLI::ValidationError("coeffs", "expected 're,im', got '" + text + "'");
  return {re, im};
}

void deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file '" + out_path + "'");
  out << text;
}

std::string render(const RunReport& report, bool as_json, bool as_csv) {
  if (as_json) return report_json(report);
  if (as_csv) return report_csv(report);
  return report_text(report);
}

// Independent post-solve verification: recomputed residuals for pairs that
// stopped on the backward-error criterion, null-basis residuals for the
// zero/infinite bookkeeping, Pellet containment, and count conservation.
int run_check(const MatrixPolynomial& p, const SolveOptions& opts) {
  const RunReport report = run_with_report(p, opts);
  const int n = p.n(), d = p.degree();
  const CoefficientWeights w = coefficient_weights(p);
  int violations = 0;
  const auto flag = [&](const std::string& msg) {
    ++violations;
    std::cout << "violation: " << msg << "\n";
  };

  if (static_cast<int>(report.results.size()) == n * d)
    std::cout << "ok: eigenvalue count " << report.results.size() << " = n*d\n";
  else
    flag("expected " + std::to_string(n * d) + " eigenvalues, got " +
         std::to_string(report.results.size()));

  const double eta_bound = 10.0 * (2.0 * n + 1.0) * eps;
  const double a0_norm = p.coeff(0).norm();
  const double ad_norm = p.coeff(d).norm();
  int eta_checked = 0, null_checked = 0, converged = 0;
  for (size_t idx = 0; idx < report.results.size(); ++idx) {
    const EigenResult& e = report.results[idx];
    if (polyeig::converged(e.status)) ++converged;
    const std::string label = "eigenvalue #" + std::to_string(idx + 1);
    if (e.kind == EigenKind::Finite) {
      if (!std::isfinite(e.lambda.real()) || !std::isfinite(e.lambda.imag())) {
        flag(label + ": non-finite value reported as finite kind");
        continue;
      }
      if (e.status == StopReason::Criterion1 || e.status == StopReason::Criterion3) {
        const auto [eta_r, eta_l] = backward_error(p, e.lambda, e.x, e.y, w);
        ++eta_checked;
        if (!(eta_r <= eta_bound))
          flag(label + ": recomputed backward error " + std::to_string(eta_r) +
               " exceeds bound");
        if (!(eta_l <= eta_bound))
          flag(label + ": recomputed left backward error " + std::to_string(eta_l) +
               " exceeds bound");
      }
    } else {
      // Null-basis quality for the deflated ends.
      const Matrix& a = e.kind == EigenKind::Zero ? p.coeff(0) : p.coeff(d);
      const double scale = e.kind == EigenKind::Zero ? a0_norm : ad_norm;
      ++null_checked;
      if (e.x.size() != n || e.x.norm() == 0.0 || (a * e.x).norm() > 1e-8 * scale * e.x.norm())
        flag(label + ": right null residual above 1e-8 of coefficient norm");
      if (e.y.size() != n || e.y.norm() == 0.0 ||
          (a.adjoint() * e.y).norm() > 1e-8 * scale * e.y.norm())
        flag(label + ": left null residual above 1e-8 of coefficient norm");
    }
  }
  std::cout << "ok: recomputed " << eta_checked << " backward errors, " << null_checked
            << " null residuals, " << converged << "/" << report.results.size()
            << " converged\n";

  // Pellet annulus from independently recomputed endpoint singular values.
  EndpointSingularValues ends;
  const RankReveal r0 = rank_reveal(p.coeff(0));
  const RankReveal rd = rank_reveal(p.coeff(d));
  ends.a0_invertible = r0.rank == n;
  ends.ad_invertible = rd.rank == n;
  if (ends.a0_invertible) ends.a0_sigma_min = singular_vectors(qr_col_pivot(p.coeff(0))).sigma;
  if (ends.ad_invertible) ends.ad_sigma_min = singular_vectors(qr_col_pivot(p.coeff(d))).sigma;
  const PelletBounds bounds = pellet_bounds(w.norms, ends);
  int outside = 0;
  for (const EigenResult& e : report.results) {
    if (e.kind != EigenKind::Finite || !polyeig::converged(e.status)) continue;
    const double mod = std::abs(e.lambda);
    if (mod > bounds.upper * (1.0 + 1e-8) || mod < bounds.lower * (1.0 - 1e-8)) ++outside;
  }
  if (outside)
    flag(std::to_string(outside) + " converged eigenvalues outside the Pellet annulus");
  else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "ok: Pellet annulus [%.6g, %.6g] contains all %s\n",
                  bounds.lower, bounds.upper, "converged finite eigenvalues");
    std::cout << buf;
  }

  std::cout << (violations ? "check failed\n" : "check passed\n");
  return violations ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial eigenvalue solver"};
  app.require_subcommand(1);
  const std::uint64_t env_seed = default_seed();

  std::string in_path, out_path, suite;
  std::string kind_name = "general";
  std::vector<std::string> coeff_args;
  std::uint64_t seed = env_seed;
  int max_iter = SolveOptions{}.max_iterations;
  int repeats = 5, gen_n = 4, gen_d = 2, gen_k = 1;
  bool as_json = false, as_csv = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem file and report");
  solve_cmd->add_option("file", in_path, "problem file (.json or text)")->required();
  CLI::Option* json_flag = solve_cmd->add_flag("--json", as_json, "JSON report");
  solve_cmd->add_flag("--csv", as_csv, "CSV report")->excludes(json_flag);
  solve_cmd->add_option("--max-iter", max_iter, "iteration cap per eigenvalue");
  solve_cmd->add_option("--seed", seed, "probe seed");
  solve_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  CLI::App* roots_cmd = app.add_subcommand("roots", "scalar polynomial roots");
  roots_cmd->add_option("file", in_path, "scalar problem file");
  roots_cmd->add_option("--coeffs", coeff_args, "coefficients a0 a1 ... ad as re,im");
  CLI::Option* roots_json = roots_cmd->add_flag("--json", as_json, "JSON report");
  roots_cmd->add_flag("--csv", as_csv, "CSV report")->excludes(roots_json);
  roots_cmd->add_option("--max-iter", max_iter, "iteration cap per root");
  roots_cmd->add_option("--seed", seed, "probe seed");
  roots_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  CLI::App* bench_cmd = app.add_subcommand("bench", "timing sweeps over seeded ensembles");
  bench_cmd->add_option("--suite", suite, "one of scalar-d, general-d, general-n, hess-d, hess-n, tri-d, tri-n")
      ->required();
  bench_cmd->add_option("--repeats", repeats, "problems per grid point (default 5)");
  bench_cmd->add_option("--seed", seed, "ensemble seed");
  bench_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  CLI::App* check_cmd = app.add_subcommand("check", "solve and independently verify");
  check_cmd->add_option("file", in_path, "problem file")->required();
  check_cmd->add_option("--max-iter", max_iter, "iteration cap per eigenvalue");
  check_cmd->add_option("--seed", seed, "probe seed");

  CLI::App* gen_cmd = app.add_subcommand("gen", "emit a seeded random problem");
  gen_cmd->add_option("--kind", kind_name,
                      "general, hessenberg, tridiagonal, scalar, hermitian-coefficients, "
                      "rank-deficient-ends");
  gen_cmd->add_option("--n", gen_n, "dimension");
  gen_cmd->add_option("--d", gen_d, "degree");
  gen_cmd->add_option("--k", gen_k, "end nullity for rank-deficient-ends");
  gen_cmd->add_option("--seed", seed, "generator seed");
  gen_cmd->add_option("--out", out_path, "write the problem here instead of stdout");

  try {
    app.parse(argc, argv);

    SolveOptions opts;
    opts.max_iterations = max_iter;
    opts.seed = seed;

    if (solve_cmd->parsed()) {
      deliver(render(run_with_report(parse_problem(in_path), opts), as_json, as_csv), out_path);
      return 0;
    }
    if (roots_cmd->parsed()) {
      if (in_path.empty() == coeff_args.empty())
        throw CLI::ValidationError("roots", "need exactly one of <file> or --coeffs");
      MatrixPolynomial p = [&] {
        if (!in_path.empty()) {
          MatrixPolynomial q = parse_problem(in_path);
          if (q.n() != 1)
            throw std::invalid_argument("roots needs a scalar problem (n = 1), file has n = " +
                                        std::to_string(q.n()));
          return q;
        }
        std::vector<Matrix> coeffs;
        for (const std::string& a : coeff_args)
          coeffs.push_back(Matrix::Constant(1, 1, parse_complex_arg(a)));
        return MatrixPolynomial(std::move(coeffs), Structure::Scalar);
      }();
      deliver(render(run_with_report(p, opts), as_json, as_csv), out_path);
      return 0;
    }
    if (bench_cmd->parsed()) {
      deliver(bench_csv(run_bench(suite, repeats, seed)), out_path);
      return 0;
    }
    if (check_cmd->parsed()) return run_check(parse_problem(in_path), opts);
    if (gen_cmd->parsed()) {
      const auto kind = generator_kind_from(kind_name);
      if (!kind) throw std::invalid_argument("unknown generator kind '" + kind_name + "'");
      const MatrixPolynomial p = generate(*kind, gen_n, gen_d, seed, gen_k);
      if (out_path.empty())
        std::cout << emit_problem_text(p);
      else
        write_problem(p, out_path);
      return 0;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return dynamic_cast<const CLI::Success*>(&e) ? code : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << (in_path.empty() ? "" : in_path + ": ") << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
