#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ball.hpp"

namespace daafd {

// Deterministic random source. The transforms (Box-Muller etc.) are local so
// results do not depend on standard-library distribution internals, which the
// reproducibility contract of the CLI relies on.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive range
  int uniform_int(int lo, int hi) {
    auto span = static_cast<uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
  }

  double gaussian() {
    double u = uniform();
    if (u < 1e-300) u = 1e-300;
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
  }

  Complex cgaussian() {
    double u = uniform();
    if (u < 1e-300) u = 1e-300;
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double t = 6.283185307179586477 * v;
    return Complex(r * std::cos(t), r * std::sin(t)) * 0.7071067811865475244;
  }

  RowVec crow(int n) {
    RowVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cgaussian();
    return v;
  }

  ColVec ccol(int n) {
    ColVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cgaussian();
    return v;
  }

  Matrix cmatrix(int r, int c) {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = cgaussian();
    return m;
  }

  // uniform on the unit sphere of C^N
  RowVec unit_sphere(int N) {
    RowVec v = crow(N);
    double n = v.norm();
    while (n < 1e-12) {
      v = crow(N);
      n = v.norm();
    }
    return v / n;
  }

  // uniform in the ball of radius rmax of C^N (volume measure)
  RowVec ball(int N, double rmax) {
    RowVec dir = unit_sphere(N);
    double r = rmax * std::pow(uniform(), 1.0 / (2.0 * N));
    return r * dir;
  }

  BallPoint ball_point(int N, double rmax) { return BallPoint::interior(ball(N, rmax)); }

  BallPoint sphere_point(int N) { return BallPoint::closure(unit_sphere(N)); }

  // Haar-ish unitary: QR of a Gaussian matrix with the R diagonal phase fixed.
  Matrix unitary(int n) {
    Matrix g = cmatrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      Complex d = r(i, i);
      double ad = std::abs(d);
      q.col(i) *= (ad > 1e-300) ? d / ad : Complex(1.0, 0.0);
    }
    return q;
  }

  uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace daafd
