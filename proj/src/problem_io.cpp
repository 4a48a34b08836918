#include "polyeig/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace polyeig {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

namespace {

std::optional<Structure> structure_from(const std::string& name) {
  for (Structure s : {Structure::General, Structure::Hessenberg,
                      Structure::Tridiagonal, Structure::Scalar})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

// Whitespace-separated tokens with 1-based positions; `#` comments run to
// end of line.
std::vector<Token> tokenize(const std::string& content) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < content.size()) {
    const char ch = content[i];
    if (ch == '\n') { ++line; col = 1; ++i; continue; }
    if (ch == '#') {
      while (i < content.size() && content[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) { ++col; ++i; continue; }
    Token t{{}, line, col};
    while (i < content.size() && !std::isspace(static_cast<unsigned char>(content[i])) &&
           content[i] != '#') {
      t.text.push_back(content[i]);
      ++i; ++col;
    }
    out.push_back(std::move(t));
  }
  return out;
}

int parse_int(const Token& t, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw ParseError(std::string("expected integer ") + what + ", got '" + t.text + "'",
                     t.line, t.column);
  return value;
}

// strtod rather than from_chars: overflowing literals should saturate to
// +-inf, not fail.  Tokens never contain whitespace, so no skipping happens.
cd parse_entry(const Token& t) {
  const char* begin = t.text.c_str();
  char* next = nullptr;
  const double re = std::strtod(begin, &next);
  if (next == begin)
    throw ParseError("non-numeric token '" + t.text + "'", t.line, t.column);
  if (*next != ',')
    throw ParseError("expected 're,im' pair, got '" + t.text + "'", t.line, t.column);
  const char* im_text = next + 1;
  const double im = std::strtod(im_text, &next);
  if (next == im_text)
    throw ParseError("non-numeric token '" + t.text + "'", t.line,
                     t.column + static_cast<int>(im_text - begin));
  if (*next != '\0')
    throw ParseError("trailing characters in entry '" + t.text + "'", t.line, t.column);
  return {re, im};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int line_of_offset(const std::string& content, size_t byte, int* column) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < content.size(); ++i) {
    if (content[i] == '\n') { ++line; col = 1; }
    else ++col;
  }
  *column = col;
  return line;
}

}  // namespace

MatrixPolynomial parse_problem_text(const std::string& content) {
  const std::vector<Token> tokens = tokenize(content);
  if (tokens.empty()) throw ParseError("empty problem file", 1, 1);
  if (tokens[0].text != "pep")
    throw ParseError("expected header 'pep n d structure', got '" + tokens[0].text + "'",
                     tokens[0].line, tokens[0].column);
  if (tokens.size() < 4)
    throw ParseError("incomplete header: need 'pep n d structure'", tokens[0].line,
                     tokens[0].column);
  const int n = parse_int(tokens[1], "n");
  const int d = parse_int(tokens[2], "d");
  if (n < 1) throw ParseError("dimension n must be >= 1", tokens[1].line, tokens[1].column);
  if (d < 1) throw ParseError("degree d must be >= 1", tokens[2].line, tokens[2].column);
  const auto structure = structure_from(tokens[3].text);
  if (!structure)
    throw ParseError("unknown structure tag '" + tokens[3].text + "'", tokens[3].line,
                     tokens[3].column);

  // An optional problem name may follow the tag on the header line.
  size_t pos = 4;
  if (pos < tokens.size() && tokens[pos].line == tokens[0].line) ++pos;

  std::vector<Matrix> coeffs(d + 1, Matrix::Zero(n, n));
  for (int k = 0; k <= d; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (pos >= tokens.size()) {
          const Token& last = tokens.back();
          throw ParseError("file ends inside coefficient " + std::to_string(k) + ": expected " +
                               std::to_string((d + 1) * n * n) + " entries",
                           last.line, last.column);
        }
        const Token& t = tokens[pos++];
        const cd value = parse_entry(t);
        if (value != cd(0.0, 0.0) && !structure_admits(*structure, i, j))
          throw ParseError("nonzero entry (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") violates structure tag '" +
                               to_string(*structure) + "'",
                           t.line, t.column);
        coeffs[k](i, j) = value;
      }
  if (pos < tokens.size())
    throw ParseError("unexpected trailing data '" + tokens[pos].text + "'", tokens[pos].line,
                     tokens[pos].column);
  return MatrixPolynomial(std::move(coeffs), *structure);
}

MatrixPolynomial parse_problem_json(const std::string& content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    int column = 1;
    const int line = line_of_offset(content, e.byte > 0 ? e.byte - 1 : 0, &column);
    throw ParseError(e.what(), line, column);
  } catch (const nlohmann::json::exception& e) {  // e.g. number overflow
    throw ParseError(e.what(), 0, 0);
  }
  try {
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object", 0, 0);
    if (doc.value("schema", 0) != 1) throw ParseError("missing or unsupported 'schema' (want 1)", 0, 0);
    const int n = doc.at("n").get<int>();
    const int d = doc.at("d").get<int>();
    if (n < 1) throw ParseError("dimension n must be >= 1", 0, 0);
    if (d < 1) throw ParseError("degree d must be >= 1", 0, 0);
    const auto structure = structure_from(doc.at("structure").get<std::string>());
    if (!structure) throw ParseError("unknown structure tag", 0, 0);
    const auto& blocks = doc.at("coefficients");
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != d + 1)
      throw ParseError("'coefficients' must hold d+1 blocks", 0, 0);
    std::vector<Matrix> coeffs(d + 1, Matrix::Zero(n, n));
    for (int k = 0; k <= d; ++k) {
      const auto& block = blocks.at(k);
      if (!block.is_array() || static_cast<int>(block.size()) != n)
        throw ParseError("coefficient " + std::to_string(k) + " must hold n rows", 0, 0);
      for (int i = 0; i < n; ++i) {
        const auto& row = block.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
          throw ParseError("coefficient " + std::to_string(k) + " row " + std::to_string(i + 1) +
                               " must hold n entries", 0, 0);
        for (int j = 0; j < n; ++j) {
          const auto& entry = row.at(j);
          if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
              !entry.at(1).is_number())
            throw ParseError("entries must be [re, im] number pairs", 0, 0);
          const cd value(entry.at(0).get<double>(), entry.at(1).get<double>());
          if (value != cd(0.0, 0.0) && !structure_admits(*structure, i, j))
            throw ParseError("nonzero entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") violates structure tag '" +
                                 to_string(*structure) + "'", 0, 0);
          coeffs[k](i, j) = value;
        }
      }
    }
    return MatrixPolynomial(std::move(coeffs), *structure);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

namespace {

bool has_json_extension(const std::string& path) {
  const size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return false;
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == "json";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

MatrixPolynomial parse_problem(const std::string& path) {
  const std::string content = read_file(path);
  return has_json_extension(path) ? parse_problem_json(content) : parse_problem_text(content);
}

std::string emit_problem_text(const MatrixPolynomial& p) {
  std::string out = "pep " + std::to_string(p.n()) + " " + std::to_string(p.degree()) + " " +
                    to_string(p.structure()) + "\n";
  for (int k = 0; k <= p.degree(); ++k) {
    out += "\n";
    for (int i = 0; i < p.n(); ++i) {
      for (int j = 0; j < p.n(); ++j) {
        if (j) out += " ";
        const cd v = p.coeff(k)(i, j);
        out += format_double(v.real()) + "," + format_double(v.imag());
      }
      out += "\n";
    }
  }
  return out;
}

std::string emit_problem_json(const MatrixPolynomial& p) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["n"] = p.n();
  doc["d"] = p.degree();
  doc["structure"] = to_string(p.structure());
  auto& blocks = doc["coefficients"] = nlohmann::ordered_json::array();
  for (int k = 0; k <= p.degree(); ++k) {
    auto& block = blocks.emplace_back(nlohmann::ordered_json::array());
    for (int i = 0; i < p.n(); ++i) {
      auto& row = block.emplace_back(nlohmann::ordered_json::array());
      for (int j = 0; j < p.n(); ++j) {
        const cd v = p.coeff(k)(i, j);
        row.push_back({v.real(), v.imag()});
      }
    }
  }
  return doc.dump(2) + "\n";
}

void write_problem(const MatrixPolynomial& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << (has_json_extension(path) ? emit_problem_json(p) : emit_problem_text(p));
}

RunReport run_with_report(const MatrixPolynomial& p, const SolveOptions& opts) {
  RunReport r;
  r.n = p.n();
  r.d = p.degree();
  r.structure = p.structure();
  r.seed = opts.seed;
  const auto t0 = std::chrono::steady_clock::now();
  r.results = solve(p, opts);
  const auto t1 = std::chrono::steady_clock::now();
  r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  double sum = 0.0;
  for (const EigenResult& e : r.results) {
    r.max_berr = std::max(r.max_berr, e.berr);
    sum += e.berr;
  }
  r.avg_berr = r.results.empty() ? 0.0 : sum / static_cast<double>(r.results.size());
  return r;
}

std::string report_text(const RunReport& r) {
  int finite = 0, zero = 0, infinite = 0, converged = 0;
  for (const EigenResult& e : r.results) {
    if (e.kind == EigenKind::Finite) ++finite;
    if (e.kind == EigenKind::Zero) ++zero;
    if (e.kind == EigenKind::Infinite) ++infinite;
    if (polyeig::converged(e.status)) ++converged;
  }
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "problem: n=%d d=%d structure=%s seed=%llu\n", r.n, r.d,
                to_string(r.structure).c_str(), static_cast<unsigned long long>(r.seed));
  out += buf;
  std::snprintf(buf, sizeof buf,
                "eigenvalues: %zu (finite %d, zero %d, infinite %d), converged %d\n",
                r.results.size(), finite, zero, infinite, converged);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-9s %23s %23s %9s %9s %-10s %5s\n", "kind", "lambda_re",
                "lambda_im", "berr", "cond", "status", "iters");
  out += buf;
  for (const EigenResult& e : r.results) {
    std::snprintf(buf, sizeof buf, "%-9s %23.16e %23.16e %9.2e %8.2e%s %-10s %5d\n",
                  to_string(e.kind).c_str(), e.lambda.real(), e.lambda.imag(), e.berr, e.cond,
                  e.cond_unreliable ? "*" : " ", to_string(e.status).c_str(), e.iterations);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "max berr %.3e, avg berr %.3e, wall %.6f s\n", r.max_berr,
                r.avg_berr, r.wall_seconds);
  out += buf;
  return out;
}

std::string report_json(const RunReport& r) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["problem"] = {{"n", r.n}, {"d", r.d}, {"structure", to_string(r.structure)}};
  doc["seed"] = r.seed;
  doc["wall_seconds"] = r.wall_seconds;
  doc["max_berr"] = r.max_berr;
  doc["avg_berr"] = r.avg_berr;
  auto& list = doc["eigenvalues"] = nlohmann::ordered_json::array();
  for (const EigenResult& e : r.results) {
    // Lambda components travel as strings so infinite eigenvalues survive
    // JSON's finite-number restriction.
    list.push_back({{"kind", to_string(e.kind)},
                    {"lambda_re", format_double(e.lambda.real())},
                    {"lambda_im", format_double(e.lambda.imag())},
                    {"berr", e.berr},
                    {"cond", e.cond},
                    {"cond_unreliable", e.cond_unreliable},
                    {"status", to_string(e.status)},
                    {"iterations", e.iterations}});
  }
  return doc.dump(2) + "\n";
}

std::string report_csv(const RunReport& r) {
  std::string out = "kind,lambda_re,lambda_im,berr,cond,status,iterations\n";
  for (const EigenResult& e : r.results)
    out += to_string(e.kind) + "," + format_double(e.lambda.real()) + "," +
           format_double(e.lambda.imag()) + "," + format_double(e.berr) + "," +
           format_double(e.cond) + "," + to_string(e.status) + "," +
           std::to_string(e.iterations) + "\n";
  return out;
}

}  // namespace polyeig
