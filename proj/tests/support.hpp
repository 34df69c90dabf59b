#pragma once

// Shared helpers for the test suites: deterministic samplers and small
// builders used across modules.

#include "core/blaschke.hpp"
#include "core/rng.hpp"
#include "core/series.hpp"

namespace daafd::testsupport {

inline PowerSeries random_polynomial(Rng& rng, int N, int rows, int cols, int degree,
                                     int max_degree) {
  PowerSeries f(N, rows, cols, max_degree);
  for (const auto& alpha : multi_indices_up_to(N, degree)) f.set_coeff(alpha, rng.cmatrix(rows, cols));
  return f;
}

inline PowerSeries random_scalar_polynomial(Rng& rng, int N, int degree, int max_degree) {
  return random_polynomial(rng, N, 1, 1, degree, max_degree);
}

// C * e_w as a truncated series (C is rows x cols, e_w the normalized kernel).
inline PowerSeries kernel_term(const BallPoint& w, const Matrix& C, int max_degree) {
  CauchySeries cau = expand_cauchy(w, max_degree);
  PowerSeries out(w.dim(), static_cast<int>(C.rows()), static_cast<int>(C.cols()), max_degree);
  double scale = std::sqrt(1.0 - w.norm_sq());
  for (const auto& [alpha, v] : cau.series.coeffs()) out.set_coeff(alpha, scale * v(0, 0) * C);
  return out;
}

inline ColVec nonzero_vector(Rng& rng, int n) {
  ColVec c = rng.ccol(n);
  while (c.norm() < 1e-6) c = rng.ccol(n);
  return c;
}

inline BlaschkeChain random_chain(Rng& rng, int N, int n, int len, double point_radius = 0.8) {
  BlaschkeChain chain(n, N);
  for (int j = 0; j < len; ++j)
    chain.push(elementary_factor(rng.ball_point(N, point_radius), nonzero_vector(rng, chain.width())));
  return chain;
}

}  // namespace daafd::testsupport
