#pragma once

// Sasaki-Futaki invariant of the polarization (xi_w, J) on S^{2n+1},
// evaluated on torus directions X_b = sum_j b_j H_j.

#include "sasaki/core.hpp"
#include "sasaki/quadrature.hpp"

#include <string_view>

namespace sasaki {

struct FutakiInput {
  std::vector<double> b;

  FutakiInput() = default;
  explicit FutakiInput(std::vector<double> coeffs);
};

enum class FutakiMethod { closed, chart, sphere };

FutakiMethod parse_futaki_method(std::string_view name);
std::string_view to_string(FutakiMethod m);

// A_j = W - (n+1) w_j
std::vector<double> a_coefficients(const Weight& w);

double futaki_closed(const Weight& w, const FutakiInput& b);
// chart: orthant integral with its prefactor, order = spec.order per axis.
// sphere: -int f_b (s - s0) d mu_{g_w}, f_b = eta_w(X_b) = sum b_j r_j / D.
double futaki_numeric(const Weight& w, const FutakiInput& b, FutakiMethod method,
                      const QuadratureSpec& spec);

struct ClassifyReport {
  std::vector<double> A;
  bool csc = false;
  bool einstein = false;
  double futaki_norm = 0;  // max_j |F(e_j)|
  double lambda = 0;       // eta-Einstein constant 2(n+1) l / a - 2 when csc
  double folded_scale = 0; // a / l when w = l (1, ..., 1)
  // FD confirmation of Ric = 2n g (only evaluated when csc); negative when skipped.
  double einstein_residual = -1;
};

ClassifyReport classify(const Weight& w, double a, bool fd_confirm = true);

}  // namespace sasaki
