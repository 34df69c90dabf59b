#pragma once

#include "blaschke.hpp"

namespace daafd {

// Closed form of b_a(z) - b_a(alpha) with alpha = -a/||a||; requires a != 0.
// Agrees with direct subtraction of the two factor evaluations.
RowVec factor_difference(const BallPoint& a, const BallPoint& z);

// Residual of the eigenvalue identity behind the closed form above: the
// matrix a*a (1 - sqrt(1-aa*))/(aa*) - I_N has eigenvalue -sqrt(1-aa*) on
// span(a*) and -1 on its complement; returns |min_i |lambda_i| - sqrt(1-aa*)|.
double remark_eigen_residual(const BallPoint& a);

// One boundary-normalized factor: B_a(z) W = (I 0) + A(z), where W makes the
// constant part exactly (I 0) and A vanishes at alpha.
struct NormalizedFactor {
  BallPoint a;
  BallPoint alpha;  // -a/||a||, on the sphere
  Matrix U;         // n x n unitary
  Matrix W;         // (N+n-1) x (N+n-1) unitary completion

  int rows() const { return static_cast<int>(U.rows()); }
  int dim() const { return a.dim(); }
  int out_width() const { return rows() + dim() - 1; }

  Matrix embed() const;  // F = (I_n 0), n x (N+n-1)
  Matrix eval_A(const BallPoint& z) const;
  Matrix eval(const BallPoint& z) const { return embed() + eval_A(z); }
};

NormalizedFactor build_normalized_factor(const BallPoint& a, const Matrix& U);

struct NormalizedFactorSeq {
  int N = 1;
  std::vector<NormalizedFactor> factors;  // k-th has 1+k(N-1) rows, k = 0,1,...
  double tail_condition_value = 0.0;      // sum_k sqrt(1 - ||a_k||^2)

  int size() const { return static_cast<int>(factors.size()); }
  static NormalizedFactorSeq from_points(const std::vector<BallPoint>& points);
};

// Z_m(z) = product of the first m normalized factors; m = 0 gives the width-1
// row (1).
RowVec partial_product(const NormalizedFactorSeq& seq, const BallPoint& z, int m);

struct ConvergenceRow {
  int m;
  double increment;     // || Z_m - Z_{m-1} || after zero-padding to a common width
  double cauchy_bound;  // ||A_m(z)|| e^{2K_m}
  double step1_lhs;     // || Z_m - E_m ||
  double step1_rhs;     // prod_{k<=m} (1+||A_k||) - 1
  double lower_lhs;     // || Z_m(z) ||
  double lower_rhs;     // 1 - sum_{k<=m} ||A_k(z)||
  double K;             // running sum of ||A_k(z)||
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double tail_condition_value = 0.0;
  double a_norm_sum = 0.0;              // K at the last factor
  bool lower_bound_applicable = false;  // sum ||A_k(z)|| < 1/2
  bool divergent_tail_flag = false;     // summability condition looks violated
};

ConvergenceReport convergence_report(const NormalizedFactorSeq& seq, const BallPoint& z,
                                     int m_max);

}  // namespace daafd
