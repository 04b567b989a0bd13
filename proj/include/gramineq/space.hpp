#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gramineq/errors.hpp"
#include "gramineq/exponents.hpp"

namespace gramineq {

enum class Field { Real, Complex };

using Scalar = std::complex<double>;
using Vec = std::vector<Scalar>;

/// Inner product, linear in the first slot, conjugate-linear in the second:
/// sum_k u_k * conj(v_k). Real inputs give a real result.
Scalar inner(const Vec& u, const Vec& v);

double norm_sq(const Vec& v);
double norm(const Vec& v);

bool is_finite(const Scalar& s);

/// n vectors of dimension d over a declared scalar field. Real systems
/// reject nonzero imaginary parts at construction. n = 0 is permitted.
struct VectorSystem {
  Field field = Field::Real;
  std::size_t dim = 0;
  std::vector<Vec> vectors;

  static VectorSystem make(Field field, std::size_t dim, std::vector<Vec> vectors);

  std::size_t size() const { return vectors.size(); }
};

/// Weight vector: original scalars plus cached moduli.
struct Coefficients {
  std::vector<Scalar> values;
  std::vector<double> moduli;

  static Coefficients from_values(std::vector<Scalar> values);

  std::size_t size() const { return values.size(); }
};

/// values[i] = inner(x, Y.vectors[i]).
Coefficients fourier_coeffs(const Vec& x, const VectorSystem& Y);

/// n x n matrix of absolute inner products |(y_i, y_j)|, with the row/total
/// aggregates every bound consumes.
struct AbsGram {
  std::size_t n = 0;
  std::vector<double> entries;  // row-major, n*n

  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  std::span<const double> row(std::size_t i) const;

  double row_sum(std::size_t i) const;
  double row_max(std::size_t i) const;
  /// (sum_j G_ij^q)^(1/q); q = infinity means row_max, q = 1 means row_sum.
  double row_qnorm(std::size_t i, const Exponent& q) const;
  double total_sum() const;
  double global_max() const;
  /// sum_{i,j} G_ij^2
  double sum_squares() const;

  std::vector<double> row_sums() const;
  std::vector<double> row_maxes() const;
  std::vector<double> row_qnorms(const Exponent& q) const;
};

/// OpenMP kernel (rows in parallel); entry-wise identical to the serial path.
AbsGram gram_abs(const VectorSystem& Y);
/// Serial reference, kept for testing and benchmarking.
AbsGram gram_abs_serial(const VectorSystem& Y);

/// First n standard basis vectors in dimension d; gram_abs is the identity.
VectorSystem canonical_orthonormal(std::size_t n, std::size_t d, Field field);

}  // namespace gramineq
