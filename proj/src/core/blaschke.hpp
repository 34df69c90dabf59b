#pragma once

#include <optional>
#include <vector>

#include "series.hpp"

namespace daafd {

// e_a(z) = sqrt(1-||a||^2) / (1 - <z,a>), the unit-norm kernel direction at a.
Complex cauchy_kernel_normalized(const BallPoint& a, const BallPoint& z);

// b_a(z) = [sqrt(1-||a||^2)/(1-<z,a>)] (z-a)(I - a*a)^{-1/2}, a 1xN row.
// The inverse square root uses the rank-one closed form, so it is exact.
RowVec blaschke_vector(const BallPoint& a, const BallPoint& z);

// Alternative closed form of b_a (quotient form with the a*a projection
// spelled out); must agree with blaschke_vector to ~1e-12. Requires a != 0.
RowVec blaschke_vector_rudin(const BallPoint& a, const BallPoint& z);

// | (1 - b_a(z) b_a(w)*) / (1 - <z,w>) - (1-||a||^2) / ((1-<z,a>) conj(1-<w,a>)) |
double kernel_identity_residual(const BallPoint& a, const BallPoint& z, const BallPoint& w);

// Deterministic unitary with first column c/||c||; Householder-based, returns
// the identity when c is already along e_1.
Matrix unitary_completion(const ColVec& c);

// Deterministic unitary [V | K] extending an isometry V (d x r, V*V = I_r).
Matrix complete_isometry(const Matrix& V);

// One elementary factor B(z) = U diag(b_a(z), I_{n-1}), of shape n x (N+n-1).
// Contractive inside the ball, coisometric on the sphere, and c* B(a) = 0.
struct BlaschkeFactor {
  BallPoint a;
  Matrix U;               // n x n unitary, first column c/||c||
  ColVec c;               // the generating vector
  std::optional<Matrix> W;  // boundary normalizer used by infinite products

  int rows() const { return static_cast<int>(U.rows()); }
  int dim() const { return a.dim(); }
  int out_width() const { return rows() + dim() - 1; }
  Matrix eval(const BallPoint& z) const;
};

BlaschkeFactor elementary_factor(const BallPoint& a, const ColVec& c);

// Truncated power-series expansion of the factor (n x (N+n-1)).
PowerSeries factor_series(const BlaschkeFactor& factor, int max_degree);

// Left-to-right product of elementary factors with matching widths; the empty
// chain evaluates to the identity.
class BlaschkeChain {
 public:
  BlaschkeChain(int rows, int dim) : rows_(rows), dim_(dim) {
    if (rows < 1 || dim < 1) throw std::invalid_argument("BlaschkeChain: bad shape");
  }

  void push(BlaschkeFactor f) {
    if (f.dim() != dim_) throw std::invalid_argument("BlaschkeChain: dimension mismatch");
    if (f.rows() != width()) throw std::invalid_argument("BlaschkeChain: width mismatch");
    factors_.push_back(std::move(f));
  }

  int rows() const { return rows_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(factors_.size()); }
  int width() const { return rows_ + size() * (dim_ - 1); }
  const std::vector<BlaschkeFactor>& factors() const { return factors_; }

  Matrix eval(const BallPoint& z) const;
  PowerSeries to_series(int max_degree) const;

 private:
  int rows_, dim_;
  std::vector<BlaschkeFactor> factors_;
};

}  // namespace daafd
