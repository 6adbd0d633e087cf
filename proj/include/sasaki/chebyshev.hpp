#pragma once

// Chebyshev series on [0, 1] (argument x = 2 sigma - 1) and the
// Chebyshev-Lobatto grid used for grid functions of sigma.

#include "sasaki/core.hpp"
#include "sasaki/taylor.hpp"

namespace sasaki {

// N >= 2 Lobatto nodes on [0, 1], ascending: sigma_i = (1 - cos(pi i/(N-1))) / 2.
Vec chebyshev_grid(int count);
// Clenshaw-Curtis weights on [0, 1] for the Lobatto grid (sum to 1).
Vec clenshaw_curtis_weights(int count);

class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  explicit ChebyshevSeries(Vec coeffs) : c_(std::move(coeffs)) {}
  // Interpolant of values on chebyshev_grid(values.size()).
  static ChebyshevSeries interpolate(const Vec& values);

  const Vec& coeffs() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }
  double operator()(double sigma) const;
  // Exact Taylor jet of the interpolant at a sigma jet.
  Jet<double> operator()(const Jet<double>& sigma) const;
  ChebyshevSeries derivative() const;
  // Antiderivative vanishing at sigma = 0.
  ChebyshevSeries integral() const;
  // Keeps the first `modes` coefficients.
  ChebyshevSeries truncated(int modes) const;

 private:
  Vec c_;
};

}  // namespace sasaki
