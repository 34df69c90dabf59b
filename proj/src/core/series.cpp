#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace daafd {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

PowerSeries::PowerSeries(int N, int rows, int cols, int max_degree)
    : N_(N), rows_(rows), cols_(cols), max_degree_(max_degree) {
  require(N >= 1, "PowerSeries: dimension must be >= 1");
  require(rows >= 1 && cols >= 1, "PowerSeries: shape must be positive");
  require(max_degree >= 0, "PowerSeries: max_degree must be >= 0");
}

PowerSeries PowerSeries::constant(int N, const Matrix& value, int max_degree) {
  PowerSeries f(N, static_cast<int>(value.rows()), static_cast<int>(value.cols()), max_degree);
  f.set_coeff(MultiIndex(N), value);
  return f;
}

PowerSeries PowerSeries::coordinate(int N, int axis, int max_degree) {
  require(max_degree >= 1, "coordinate: max_degree must be >= 1");
  PowerSeries f(N, 1, 1, max_degree);
  Matrix one(1, 1);
  one(0, 0) = Complex(1.0, 0.0);
  f.set_coeff(MultiIndex::unit(N, axis), one);
  return f;
}

void PowerSeries::set_coeff(const MultiIndex& alpha, const Matrix& value) {
  require(alpha.dim() == N_, "set_coeff: index dimension mismatch");
  require(alpha.degree() <= max_degree_, "set_coeff: degree above truncation bound");
  require(value.rows() == rows_ && value.cols() == cols_, "set_coeff: coefficient shape mismatch");
  if (value.isZero(0.0)) {
    coeffs_.erase(alpha);
    return;
  }
  coeffs_[alpha] = value;
}

const Matrix* PowerSeries::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? nullptr : &it->second;
}

Matrix PowerSeries::eval_raw(const RowVec& z) const {
  require(static_cast<int>(z.size()) == N_, "eval: point dimension mismatch");
  // per-axis power tables up to the highest stored degree
  int top = 0;
  for (const auto& [a, c] : coeffs_) top = std::max(top, a.degree());
  std::vector<std::vector<Complex>> pow_table(static_cast<std::size_t>(N_));
  for (int u = 0; u < N_; ++u) {
    auto& t = pow_table[static_cast<std::size_t>(u)];
    t.resize(static_cast<std::size_t>(top) + 1);
    t[0] = Complex(1.0, 0.0);
    for (int k = 1; k <= top; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * z(u);
  }
  Matrix out = Matrix::Zero(rows_, cols_);
  for (const auto& [a, c] : coeffs_) {
    Complex mono(1.0, 0.0);
    for (int u = 0; u < N_; ++u) mono *= pow_table[static_cast<std::size_t>(u)][static_cast<std::size_t>(a[u])];
    out += mono * c;
  }
  return out;
}

namespace {

void require_same_space(const PowerSeries& f, const PowerSeries& g) {
  require(f.dim() == g.dim() && f.rows() == g.rows() && f.cols() == g.cols(),
          "series: shape/dimension mismatch");
}

}  // namespace

PowerSeries series_add(const PowerSeries& f, const PowerSeries& g) {
  require_same_space(f, g);
  int d = std::max(f.max_degree(), g.max_degree());
  PowerSeries out(f.dim(), f.rows(), f.cols(), d);
  for (const auto& [a, c] : f.coeffs()) out.set_coeff(a, c);
  for (const auto& [a, c] : g.coeffs()) {
    const Matrix* e = out.coeff(a);
    out.set_coeff(a, e ? Matrix(*e + c) : c);
  }
  return out;
}

PowerSeries series_sub(const PowerSeries& f, const PowerSeries& g) {
  return series_add(f, series_scale(g, Complex(-1.0, 0.0)));
}

PowerSeries series_scale(const PowerSeries& f, Complex lambda) {
  PowerSeries out(f.dim(), f.rows(), f.cols(), f.max_degree());
  if (lambda == Complex(0.0, 0.0)) return out;
  for (const auto& [a, c] : f.coeffs()) out.set_coeff(a, lambda * c);
  return out;
}

PowerSeries series_matmul(const PowerSeries& f, const PowerSeries& g, int max_degree) {
  require(f.dim() == g.dim(), "series_matmul: dimension mismatch");
  require(f.cols() == g.rows(), "series_matmul: inner shape mismatch");
  int d = max_degree >= 0 ? max_degree : std::min(f.max_degree(), g.max_degree());
  PowerSeries out(f.dim(), f.rows(), g.cols(), d);
  std::map<MultiIndex, Matrix> acc;
  for (const auto& [af, cf] : f.coeffs()) {
    if (af.degree() > d) continue;
    for (const auto& [ag, cg] : g.coeffs()) {
      if (af.degree() + ag.degree() > d) continue;
      MultiIndex a = af.plus(ag);
      auto it = acc.find(a);
      if (it == acc.end())
        acc.emplace(a, cf * cg);
      else
        it->second += cf * cg;
    }
  }
  for (const auto& [a, c] : acc) out.set_coeff(a, c);
  return out;
}

PowerSeries truncate(const PowerSeries& f, int new_degree) {
  PowerSeries out(f.dim(), f.rows(), f.cols(), new_degree);
  for (const auto& [a, c] : f.coeffs())
    if (a.degree() <= new_degree) out.set_coeff(a, c);
  return out;
}

Matrix da_inner_matrix(const PowerSeries& f, const PowerSeries& g) {
  require_same_space(f, g);
  Matrix out = Matrix::Zero(f.cols(), f.cols());
  for (const auto& [a, cf] : f.coeffs()) {
    const Matrix* cg = g.coeff(a);
    if (!cg) continue;
    out += da_weight(a) * (cg->adjoint() * cf);
  }
  return out;
}

Complex da_inner_scalar(const PowerSeries& f, const PowerSeries& g) {
  return da_inner_matrix(f, g).trace();
}

double da_norm_sq(const PowerSeries& f) {
  double s = 0.0;
  for (const auto& [a, c] : f.coeffs()) s += da_weight(a) * c.squaredNorm();
  return s;
}

double da_norm(const PowerSeries& f) { return std::sqrt(da_norm_sq(f)); }

PowerSeries gleason_Ru(const PowerSeries& f, int axis) {
  require(axis >= 0 && axis < f.dim(), "gleason_Ru: axis out of range");
  PowerSeries out(f.dim(), f.rows(), f.cols(), std::max(0, f.max_degree() - 1));
  for (const auto& [a, c] : f.coeffs()) {
    if (a[axis] == 0) continue;
    double factor = static_cast<double>(a[axis]) / static_cast<double>(a.degree());
    out.set_coeff(a.bump(axis, -1), factor * c);
  }
  return out;
}

CauchySeries expand_cauchy(const BallPoint& a, int max_degree) {
  int N = a.dim();
  require(a.norm() < 1.0, "expand_cauchy: point must be interior");
  PowerSeries s(N, 1, 1, max_degree);
  // conj(a)^alpha decays; indices with a zero coordinate raised to a positive
  // power contribute nothing and are skipped by the pruning in set_coeff.
  for (const auto& alpha : multi_indices_up_to(N, max_degree)) {
    Complex v(1.0, 0.0);
    for (int u = 0; u < N; ++u) {
      Complex base = std::conj(a.coords()(u));
      for (int j = 0; j < alpha[u]; ++j) v *= base;
    }
    if (v == Complex(0.0, 0.0)) continue;
    Matrix m(1, 1);
    m(0, 0) = da_inverse_weight(alpha) * v;
    s.set_coeff(alpha, m);
  }
  double na = a.norm();
  double tail = std::pow(na, max_degree + 1) / (1.0 - na);
  return CauchySeries{std::move(s), tail};
}

}  // namespace daafd
