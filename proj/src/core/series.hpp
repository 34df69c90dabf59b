#pragma once

#include <map>

#include "ball.hpp"
#include "multiindex.hpp"

namespace daafd {

// Truncated multi-index power series f(z) = sum_alpha z^alpha f_alpha with
// complex matrix coefficients, the working representation of every function
// on the ball. Absent index == zero coefficient. Values are immutable once
// built and safe to share across threads; all operations below are pure.
class PowerSeries {
 public:
  PowerSeries(int N, int rows, int cols, int max_degree);

  static PowerSeries zero(int N, int rows, int cols, int max_degree) {
    return PowerSeries(N, rows, cols, max_degree);
  }
  static PowerSeries constant(int N, const Matrix& value, int max_degree);
  // the scalar monomial z_axis
  static PowerSeries coordinate(int N, int axis, int max_degree);

  int dim() const { return N_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int max_degree() const { return max_degree_; }

  // Exact-zero coefficients are not stored.
  void set_coeff(const MultiIndex& alpha, const Matrix& value);
  const Matrix* coeff(const MultiIndex& alpha) const;
  const std::map<MultiIndex, Matrix>& coeffs() const { return coeffs_; }
  std::size_t term_count() const { return coeffs_.size(); }

  Matrix eval(const BallPoint& z) const { return eval_raw(z.coords()); }
  Matrix eval_raw(const RowVec& z) const;

 private:
  int N_, rows_, cols_, max_degree_;
  std::map<MultiIndex, Matrix> coeffs_;
};

PowerSeries series_add(const PowerSeries& f, const PowerSeries& g);
PowerSeries series_sub(const PowerSeries& f, const PowerSeries& g);
PowerSeries series_scale(const PowerSeries& f, Complex lambda);
// Coefficient of the product at alpha is sum_{beta+gamma=alpha} f_beta g_gamma.
// Result truncated at min of the operand bounds unless max_degree >= 0 is given.
PowerSeries series_matmul(const PowerSeries& f, const PowerSeries& g, int max_degree = -1);
PowerSeries truncate(const PowerSeries& f, int new_degree);

// [f,g] = sum_alpha (alpha!/|alpha|!) g_alpha^* f_alpha  (m x m)
Matrix da_inner_matrix(const PowerSeries& f, const PowerSeries& g);
// <f,g> = Tr [f,g]
Complex da_inner_scalar(const PowerSeries& f, const PowerSeries& g);
double da_norm_sq(const PowerSeries& f);
double da_norm(const PowerSeries& f);

// Gleason backward shift along `axis` (0-based): coefficient of the result at
// alpha - e_axis is (alpha_axis/|alpha|) f_alpha; the constant term is dropped.
PowerSeries gleason_Ru(const PowerSeries& f, int axis);

struct CauchySeries {
  PowerSeries series;
  double tail_bound;  // DA-norm bound on the discarded tail: ||a||^{D+1}/(1-||a||)
};

// Truncated expansion of z -> 1/(1 - <z,a>) = sum_alpha (|alpha|!/alpha!) z^alpha conj(a)^alpha.
CauchySeries expand_cauchy(const BallPoint& a, int max_degree);

}  // namespace daafd
