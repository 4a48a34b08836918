#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "polyeig/core.hpp"

namespace polyeig {

// Seeded problem families.  Coefficient entries have real and imaginary
// parts uniform on [-1, 1].  HermitianCoefficients symmetrizes every
// coefficient and makes the leading one positive definite (C C* + I);
// RankDeficientEnds annihilates k directions of A_0 and of A_d.
enum class GeneratorKind {
  General,
  Hessenberg,
  Tridiagonal,
  Scalar,
  HermitianCoefficients,
  RankDeficientEnds,
};

std::string to_string(GeneratorKind k);
std::optional<GeneratorKind> generator_kind_from(const std::string& name);

// Deterministic under (kind, n, d, seed, k).  Scalar forces n = 1; k is
// read only by RankDeficientEnds and must satisfy 1 <= k < n there.
MatrixPolynomial generate(GeneratorKind kind, int n, int d, std::uint64_t seed,
                          int k = 1);

}  // namespace polyeig
