#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace daafd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RowVec = Eigen::RowVectorXcd;
using ColVec = Eigen::VectorXcd;

// <z, w> = z w* (row-vector convention).
inline Complex ball_inner(const RowVec& z, const RowVec& w) {
  if (z.size() != w.size()) throw std::invalid_argument("ball_inner: dimension mismatch");
  Complex s(0.0, 0.0);
  for (Eigen::Index i = 0; i < z.size(); ++i) s += z(i) * std::conj(w(i));
  return s;
}

// Point of the unit ball of C^N (row vector). interior() enforces ||z|| < 1
// strictly; closure() admits unit-sphere samples and flags them, for the
// boundary checks only.
class BallPoint {
 public:
  static BallPoint interior(RowVec z) {
    double n = z.norm();
    if (!z.allFinite()) throw std::invalid_argument("BallPoint: non-finite coordinates");
    if (n >= 1.0) throw std::invalid_argument("BallPoint: norm must be < 1");
    return BallPoint(std::move(z), false);
  }

  static BallPoint closure(RowVec z) {
    double n = z.norm();
    if (!z.allFinite()) throw std::invalid_argument("BallPoint: non-finite coordinates");
    if (n > 1.0 + 1e-12) throw std::invalid_argument("BallPoint: norm must be <= 1");
    return BallPoint(std::move(z), n >= 1.0 - 1e-12);
  }

  static BallPoint origin(int dim) { return BallPoint(RowVec::Zero(dim), false); }

  const RowVec& coords() const { return z_; }
  int dim() const { return static_cast<int>(z_.size()); }
  double norm() const { return z_.norm(); }
  double norm_sq() const { return z_.squaredNorm(); }
  bool on_boundary() const { return boundary_; }

 private:
  BallPoint(RowVec z, bool boundary) : z_(std::move(z)), boundary_(boundary) {}
  RowVec z_;
  bool boundary_;
};

}  // namespace daafd
