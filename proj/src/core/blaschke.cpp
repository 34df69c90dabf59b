#include "blaschke.hpp"

#include <cmath>

namespace daafd {

namespace {

void check_pair(const BallPoint& a, const BallPoint& z) {
  if (a.dim() != z.dim()) throw std::invalid_argument("blaschke: dimension mismatch");
  if (a.norm() >= 1.0) throw std::invalid_argument("blaschke: base point must be interior");
}

}  // namespace

Complex cauchy_kernel_normalized(const BallPoint& a, const BallPoint& z) {
  check_pair(a, z);
  double na2 = a.norm_sq();
  return std::sqrt(1.0 - na2) / (Complex(1.0, 0.0) - ball_inner(z.coords(), a.coords()));
}

RowVec blaschke_vector(const BallPoint& a, const BallPoint& z) {
  check_pair(a, z);
  const RowVec& av = a.coords();
  const RowVec& zv = z.coords();
  double na2 = a.norm_sq();
  Complex denom = Complex(1.0, 0.0) - ball_inner(zv, av);
  RowVec diff = zv - av;
  // (I - a*a)^{-1/2} = I + ((1-||a||^2)^{-1/2} - 1) a*a/||a||^2
  RowVec transformed = diff;
  if (na2 > 0.0) {
    Complex proj = ball_inner(diff, av) / na2;  // component of diff along a
    transformed += (1.0 / std::sqrt(1.0 - na2) - 1.0) * proj * av;
  }
  return (std::sqrt(1.0 - na2) / denom) * transformed;
}

RowVec blaschke_vector_rudin(const BallPoint& a, const BallPoint& z) {
  check_pair(a, z);
  const RowVec& av = a.coords();
  const RowVec& zv = z.coords();
  double t = a.norm_sq();
  if (t == 0.0) throw std::invalid_argument("blaschke_vector_rudin: requires a != 0");
  double s = std::sqrt(1.0 - t);
  Complex za = ball_inner(zv, av);
  RowVec along = (za / t) * av;  // projection of z onto the a-direction
  // quotient form, oriented to vanish at a with b_a(0) = -a (the automorphism
  // convention has the opposite global sign)
  RowVec num = (along - av) + s * (zv - along);
  return num / (Complex(1.0, 0.0) - za);
}

double kernel_identity_residual(const BallPoint& a, const BallPoint& z, const BallPoint& w) {
  if (z.norm() >= 1.0 || w.norm() >= 1.0)
    throw std::invalid_argument("kernel_identity_residual: z, w must be interior");
  RowVec bz = blaschke_vector(a, z);
  RowVec bw = blaschke_vector(a, w);
  Complex lhs = (Complex(1.0, 0.0) - ball_inner(bz, bw)) /
                (Complex(1.0, 0.0) - ball_inner(z.coords(), w.coords()));
  Complex rhs = (1.0 - a.norm_sq()) /
                ((Complex(1.0, 0.0) - ball_inner(z.coords(), a.coords())) *
                 std::conj(Complex(1.0, 0.0) - ball_inner(w.coords(), a.coords())));
  return std::abs(lhs - rhs);
}

Matrix unitary_completion(const ColVec& c) {
  int n = static_cast<int>(c.size());
  double nc = c.norm();
  if (!(nc > 0.0) || !c.allFinite()) throw std::invalid_argument("unitary_completion: zero vector");
  ColVec q = c / nc;

  if (n == 1) {
    Matrix u(1, 1);
    u(0, 0) = q(0);
    return u;
  }
  // Householder H with H q = -phi e_1, then U = H diag(-phi, I), so that
  // U e_1 = q exactly and q = e_1 yields the identity.
  Complex q0 = q(0);
  double aq0 = std::abs(q0);
  Complex phi = aq0 > 0.0 ? q0 / aq0 : Complex(1.0, 0.0);
  ColVec v = q;
  v(0) += phi;
  double vn2 = v.squaredNorm();
  Matrix H = Matrix::Identity(n, n) - (2.0 / vn2) * (v * v.adjoint());
  Matrix U = H;
  U.col(0) *= -phi;
  return U;
}

Matrix complete_isometry(const Matrix& V) {
  int d = static_cast<int>(V.rows());
  int r = static_cast<int>(V.cols());
  if (r > d) throw std::invalid_argument("complete_isometry: more columns than rows");
  if ((V.adjoint() * V - Matrix::Identity(r, r)).norm() > 1e-8)
    throw std::invalid_argument("complete_isometry: input is not an isometry");
  Eigen::HouseholderQR<Matrix> qr(V);
  Matrix Q = qr.householderQ();
  // Fix the free phases so the completion is deterministic, then keep the
  // exact input columns in front.
  Matrix out(d, d);
  out.leftCols(r) = V;
  Matrix rest = Q.rightCols(d - r);
  for (int j = 0; j < d - r; ++j) {
    // phase-normalize on the largest-modulus entry
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < d; ++i) {
      double m = std::abs(rest(i, j));
      if (m > best) {
        best = m;
        imax = i;
      }
    }
    Complex p = rest(imax, j);
    rest.col(j) *= std::conj(p) / std::abs(p);
  }
  out.rightCols(d - r) = rest;
  return out;
}

Matrix BlaschkeFactor::eval(const BallPoint& z) const {
  int n = rows();
  int N = dim();
  RowVec b = blaschke_vector(a, z);
  Matrix inner = Matrix::Zero(n, N + n - 1);
  inner.block(0, 0, 1, N) = b;
  if (n > 1) inner.block(1, N, n - 1, n - 1) = Matrix::Identity(n - 1, n - 1);
  return U * inner;
}

BlaschkeFactor elementary_factor(const BallPoint& a, const ColVec& c) {
  if (a.norm() >= 1.0) throw std::invalid_argument("elementary_factor: point must be interior");
  return BlaschkeFactor{a, unitary_completion(c), c, std::nullopt};
}

PowerSeries factor_series(const BlaschkeFactor& factor, int max_degree) {
  int n = factor.rows();
  int N = factor.dim();
  const RowVec& av = factor.a.coords();
  double na2 = factor.a.norm_sq();

  // b_a as a series: sqrt(1-||a||^2) * cauchy(a) * [(z-a)(I-a*a)^{-1/2}]
  CauchySeries cau = expand_cauchy(factor.a, max_degree);
  PowerSeries scalar = series_scale(cau.series, Complex(std::sqrt(1.0 - na2), 0.0));

  PowerSeries linear(N, 1, N, max_degree);  // the degree-one polynomial part
  RowVec a_transformed = av;
  if (na2 > 0.0) a_transformed += (1.0 / std::sqrt(1.0 - na2) - 1.0) * av;
  linear.set_coeff(MultiIndex(N), Matrix(-a_transformed));
  for (int u = 0; u < N; ++u) {
    RowVec row = RowVec::Zero(N);
    row(u) = Complex(1.0, 0.0);
    if (na2 > 0.0) row += (1.0 / std::sqrt(1.0 - na2) - 1.0) * (std::conj(av(u)) / na2) * av;
    linear.set_coeff(MultiIndex::unit(N, u), Matrix(row));
  }
  PowerSeries b_series = series_matmul(scalar, linear, max_degree);

  PowerSeries out(N, n, N + n - 1, max_degree);
  for (const auto& [alpha, coeff] : b_series.coeffs()) {
    Matrix inner = Matrix::Zero(n, N + n - 1);
    inner.block(0, 0, 1, N) = coeff;
    out.set_coeff(alpha, factor.U * inner);
  }
  if (n > 1) {
    Matrix inner = Matrix::Zero(n, N + n - 1);
    inner.block(1, N, n - 1, n - 1) = Matrix::Identity(n - 1, n - 1);
    const Matrix* c0 = out.coeff(MultiIndex(N));
    Matrix add = factor.U * inner;
    out.set_coeff(MultiIndex(N), c0 ? Matrix(*c0 + add) : add);
  }
  return out;
}

Matrix BlaschkeChain::eval(const BallPoint& z) const {
  Matrix cur = Matrix::Identity(rows_, rows_);
  for (const auto& f : factors_) cur = cur * f.eval(z);
  return cur;
}

PowerSeries BlaschkeChain::to_series(int max_degree) const {
  PowerSeries cur = PowerSeries::constant(dim_, Matrix::Identity(rows_, rows_), max_degree);
  for (const auto& f : factors_) cur = series_matmul(cur, factor_series(f, max_degree), max_degree);
  return cur;
}

}  // namespace daafd
