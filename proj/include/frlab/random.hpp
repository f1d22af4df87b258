#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "frlab/linalg.hpp"

namespace frlab {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

/// Complex Gaussian coordinates, normalised to unit length.
inline ComplexVector random_unit_vector(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (auto& z : v) z = complex_gaussian(rng);
  const double n = v.norm();
  if (n > 0.0) v *= 1.0 / n;
  return v;
}

/// `count` unit test vectors drawn from a fresh generator seeded with `seed`.
inline std::vector<ComplexVector> random_unit_vectors(std::size_t dim, std::size_t count,
                                                      std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<ComplexVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit_vector(dim, rng));
  return out;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_gaussian(rng);
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  return hermitian_part(random_matrix(n, n, rng));
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace frlab
