#include "infprod.hpp"

#include <cmath>

namespace daafd {

namespace {

BallPoint opposite_boundary(const BallPoint& a) {
  if (a.norm() == 0.0) throw std::invalid_argument("infprod: requires a != 0");
  return BallPoint::closure(-a.coords() / a.norm());
}

}  // namespace

RowVec factor_difference(const BallPoint& a, const BallPoint& z) {
  if (a.dim() != z.dim()) throw std::invalid_argument("factor_difference: dimension mismatch");
  double t = a.norm_sq();
  if (t == 0.0) throw std::invalid_argument("factor_difference: requires a != 0");
  double s = std::sqrt(1.0 - t);
  int N = a.dim();
  const RowVec& av = a.coords();
  const RowVec& zv = z.coords();
  RowVec alpha = -av / std::sqrt(t);

  Matrix outer = av.adjoint() * av;  // a*a, N x N
  Matrix core = ((1.0 - s) / t) * outer - Matrix::Identity(N, N);
  Complex za = ball_inner(zv, av);
  Complex aa = ball_inner(alpha, av);  // = -sqrt(t)
  RowVec num = (zv - alpha) * core + aa * zv - za * alpha;
  Complex denom = (Complex(1.0, 0.0) - za) * (1.0 + std::sqrt(t));
  // the closed form carries the automorphism-convention sign; flip it so the
  // result is b_a(z) - b_a(alpha) in the orientation used everywhere here
  return (-s / denom) * num;
}

double remark_eigen_residual(const BallPoint& a) {
  double t = a.norm_sq();
  if (t == 0.0) throw std::invalid_argument("remark_eigen_residual: requires a != 0");
  double s = std::sqrt(1.0 - t);
  int N = a.dim();
  Matrix core = ((1.0 - s) / t) * (a.coords().adjoint() * a.coords()) - Matrix::Identity(N, N);
  Eigen::ComplexEigenSolver<Matrix> es(core);
  double min_mod = std::numeric_limits<double>::infinity();
  for (int i = 0; i < N; ++i) min_mod = std::min(min_mod, std::abs(es.eigenvalues()(i)));
  return std::abs(min_mod - s);
}

Matrix NormalizedFactor::embed() const {
  int n = rows();
  Matrix f = Matrix::Zero(n, out_width());
  f.leftCols(n) = Matrix::Identity(n, n);
  return f;
}

Matrix NormalizedFactor::eval_A(const BallPoint& z) const {
  int n = rows();
  int N = dim();
  RowVec diff = factor_difference(a, z);
  Matrix mid = Matrix::Zero(n, out_width());
  mid.block(0, 0, 1, N) = diff;  // lower-right block stays zero: A(alpha) = 0
  return U * mid * W;
}

NormalizedFactor build_normalized_factor(const BallPoint& a, const Matrix& U) {
  int n = static_cast<int>(U.rows());
  if (U.cols() != n) throw std::invalid_argument("build_normalized_factor: U must be square");
  if ((U.adjoint() * U - Matrix::Identity(n, n)).norm() > 1e-8)
    throw std::invalid_argument("build_normalized_factor: U is not unitary");
  BallPoint alpha = opposite_boundary(a);
  int N = a.dim();

  RowVec b_alpha = blaschke_vector(a, alpha);  // a unit row; analytically equal to alpha
  Matrix constant_part = Matrix::Zero(n, n + N - 1);
  constant_part.block(0, 0, 1, N) = b_alpha;
  if (n > 1) constant_part.block(1, N, n - 1, n - 1) = Matrix::Identity(n - 1, n - 1);
  constant_part = U * constant_part;  // coisometric since ||b_alpha|| = 1

  Matrix W = complete_isometry(constant_part.adjoint());
  Matrix check = constant_part * W;
  check.leftCols(n) -= Matrix::Identity(n, n);
  if (check.norm() > 1e-10)
    throw std::runtime_error("build_normalized_factor: normalization failed");
  return NormalizedFactor{a, alpha, U, std::move(W)};
}

NormalizedFactorSeq NormalizedFactorSeq::from_points(const std::vector<BallPoint>& points) {
  if (points.empty()) throw std::invalid_argument("infprod: empty point sequence");
  NormalizedFactorSeq seq;
  seq.N = points.front().dim();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const BallPoint& a = points[k];
    if (a.dim() != seq.N) throw std::invalid_argument("infprod: inconsistent dimensions");
    int rows = 1 + static_cast<int>(k) * (seq.N - 1);
    seq.factors.push_back(build_normalized_factor(a, Matrix::Identity(rows, rows)));
    seq.tail_condition_value += std::sqrt(1.0 - a.norm_sq());
  }
  return seq;
}

RowVec partial_product(const NormalizedFactorSeq& seq, const BallPoint& z, int m) {
  if (m < 0 || m > seq.size()) throw std::invalid_argument("partial_product: m out of range");
  RowVec cur = RowVec::Ones(1);
  for (int k = 0; k < m; ++k) {
    const NormalizedFactor& f = seq.factors[static_cast<std::size_t>(k)];
    if (f.rows() != static_cast<int>(cur.size()))
      throw std::logic_error("partial_product: width bookkeeping broken");
    cur = cur * f.eval(z);
  }
  return cur;
}

ConvergenceReport convergence_report(const NormalizedFactorSeq& seq, const BallPoint& z,
                                     int m_max) {
  if (m_max < 1 || m_max > seq.size())
    throw std::invalid_argument("convergence_report: m_max out of range");
  ConvergenceReport rep;
  rep.tail_condition_value = seq.tail_condition_value;

  // summability heuristic: no decay between the two halves of the prefix
  if (seq.size() >= 8) {
    double first = 0.0, second = 0.0;
    int half = seq.size() / 2;
    for (int k = 0; k < seq.size(); ++k) {
      double s = std::sqrt(1.0 - seq.factors[static_cast<std::size_t>(k)].a.norm_sq());
      (k < half ? first : second) += s;
    }
    rep.divergent_tail_flag = second >= first;
  }

  RowVec prev = RowVec::Ones(1);
  double K = 0.0;
  double prod_bound = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    const NormalizedFactor& f = seq.factors[static_cast<std::size_t>(m - 1)];
    double an = f.eval_A(z).operatorNorm();
    K += an;
    prod_bound *= 1.0 + an;

    RowVec cur = prev * f.eval(z);
    RowVec padded = RowVec::Zero(cur.size());
    padded.head(prev.size()) = prev;

    ConvergenceRow row;
    row.m = m;
    row.increment = (cur - padded).norm();
    row.cauchy_bound = an * std::exp(2.0 * K);
    RowVec em = RowVec::Zero(cur.size());
    em(0) = Complex(1.0, 0.0);
    row.step1_lhs = (cur - em).norm();
    row.step1_rhs = prod_bound - 1.0;
    row.lower_lhs = cur.norm();
    row.lower_rhs = 1.0 - K;
    row.K = K;
    rep.rows.push_back(row);
    prev = std::move(cur);
  }
  rep.a_norm_sum = K;
  rep.lower_bound_applicable = K < 0.5;
  return rep;
}

}  // namespace daafd
