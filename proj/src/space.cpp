#include "gramineq/space.hpp"

#include <algorithm>
#include <cmath>

namespace gramineq {

Exponent Exponent::finite(double v) {
  if (!std::isfinite(v) || v <= 1.0) {
    throw ParamError("finite exponent must satisfy 1 < v < infinity, got " +
                     std::to_string(v));
  }
  return Exponent(Kind::Finite, v);
}

Exponent Exponent::conjugate() const {
  switch (kind_) {
    case Kind::One:
      return infinity();
    case Kind::Infinity:
      return one();
    case Kind::Finite:
      return finite(value_ / (value_ - 1.0));
  }
  return one();
}

double Exponent::inverse() const {
  switch (kind_) {
    case Kind::One:
      return 1.0;
    case Kind::Infinity:
      return 0.0;
    case Kind::Finite:
      return 1.0 / value_;
  }
  return 1.0;
}

std::string Exponent::str() const {
  switch (kind_) {
    case Kind::One:
      return "1";
    case Kind::Infinity:
      return "inf";
    case Kind::Finite: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", value_);
      return buf;
    }
  }
  return "?";
}

double holder_norm(std::span<const double> xs, const Exponent& e) {
  if (xs.empty()) return 0.0;
  switch (e.kind()) {
    case Exponent::Kind::One: {
      double s = 0.0;
      for (double x : xs) s += x;
      return s;
    }
    case Exponent::Kind::Infinity: {
      double m = 0.0;
      for (double x : xs) m = std::max(m, x);
      return m;
    }
    case Exponent::Kind::Finite: {
      double m = 0.0;
      for (double x : xs) m = std::max(m, x);
      if (m == 0.0) return 0.0;
      // scale by the max so large exponents cannot overflow
      double s = 0.0;
      for (double x : xs) s += std::pow(x / m, e.value());
      return m * std::pow(s, 1.0 / e.value());
    }
  }
  return 0.0;
}

bool is_finite(const Scalar& s) {
  return std::isfinite(s.real()) && std::isfinite(s.imag());
}

Scalar inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("inner: dimensions " + std::to_string(u.size()) +
                            " vs " + std::to_string(v.size()));
  }
  Scalar acc{0.0, 0.0};
  for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * std::conj(v[k]);
  return acc;
}

double norm_sq(const Vec& v) {
  double s = 0.0;
  for (const Scalar& c : v) s += std::norm(c);
  return s;
}

double norm(const Vec& v) { return std::sqrt(norm_sq(v)); }

VectorSystem VectorSystem::make(Field field, std::size_t dim, std::vector<Vec> vectors) {
  for (const Vec& v : vectors) {
    if (v.size() != dim) {
      throw ValidationError("vector length " + std::to_string(v.size()) +
                            " does not match declared dimension " + std::to_string(dim));
    }
    for (const Scalar& s : v) {
      if (!is_finite(s)) throw ValidationError("non-finite scalar in vector system");
      if (field == Field::Real && s.imag() != 0.0) {
        throw ValidationError("real system contains a nonzero imaginary part");
      }
    }
  }
  return VectorSystem{field, dim, std::move(vectors)};
}

Coefficients Coefficients::from_values(std::vector<Scalar> values) {
  std::vector<double> moduli;
  moduli.reserve(values.size());
  for (const Scalar& s : values) {
    if (!is_finite(s)) throw ValidationError("non-finite coefficient");
    moduli.push_back(std::abs(s));
  }
  return Coefficients{std::move(values), std::move(moduli)};
}

Coefficients fourier_coeffs(const Vec& x, const VectorSystem& Y) {
  std::vector<Scalar> values;
  values.reserve(Y.size());
  for (const Vec& y : Y.vectors) values.push_back(inner(x, y));
  return Coefficients::from_values(std::move(values));
}

std::span<const double> AbsGram::row(std::size_t i) const {
  if (i >= n) throw IndexError("gram row index " + std::to_string(i) + " out of range");
  return {entries.data() + i * n, n};
}

double AbsGram::row_sum(std::size_t i) const {
  double s = 0.0;
  for (double e : row(i)) s += e;
  return s;
}

double AbsGram::row_max(std::size_t i) const {
  double m = 0.0;
  for (double e : row(i)) m = std::max(m, e);
  return m;
}

double AbsGram::row_qnorm(std::size_t i, const Exponent& q) const {
  return holder_norm(row(i), q);
}

double AbsGram::total_sum() const {
  double s = 0.0;
  for (double e : entries) s += e;
  return s;
}

double AbsGram::global_max() const {
  double m = 0.0;
  for (double e : entries) m = std::max(m, e);
  return m;
}

double AbsGram::sum_squares() const {
  double s = 0.0;
  for (double e : entries) s += e * e;
  return s;
}

std::vector<double> AbsGram::row_sums() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = row_sum(i);
  return out;
}

std::vector<double> AbsGram::row_maxes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = row_max(i);
  return out;
}

std::vector<double> AbsGram::row_qnorms(const Exponent& q) const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = row_qnorm(i, q);
  return out;
}

namespace {

// Fills entries[i][j] for j >= i of one row; mirrored below the diagonal.
inline void gram_row(const VectorSystem& Y, std::size_t i, std::size_t n,
                     std::vector<double>& entries) {
  for (std::size_t j = i; j < n; ++j) {
    double e = std::abs(inner(Y.vectors[i], Y.vectors[j]));
    entries[i * n + j] = e;
    entries[j * n + i] = e;
  }
}

}  // namespace

AbsGram gram_abs(const VectorSystem& Y) {
  const std::size_t n = Y.size();
  AbsGram G{n, std::vector<double>(n * n, 0.0)};
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    gram_row(Y, static_cast<std::size_t>(i), n, G.entries);
  }
  return G;
}

AbsGram gram_abs_serial(const VectorSystem& Y) {
  const std::size_t n = Y.size();
  AbsGram G{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) gram_row(Y, i, n, G.entries);
  return G;
}

VectorSystem canonical_orthonormal(std::size_t n, std::size_t d, Field field) {
  if (n > d) {
    throw NotEmbeddable("cannot embed " + std::to_string(n) +
                        " orthonormal vectors in dimension " + std::to_string(d));
  }
  std::vector<Vec> vectors(n, Vec(d, Scalar{0.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i) vectors[i][i] = Scalar{1.0, 0.0};
  return VectorSystem{field, d, std::move(vectors)};
}

}  // namespace gramineq
