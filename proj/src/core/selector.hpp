#pragma once

#include <cstdint>
#include <functional>

#include "series.hpp"

namespace daafd {

// Rank-r orthogonal projection P = V V* stored through its isometry factor.
struct Projection {
  Matrix V;  // d x r, V*V = I_r

  int d() const { return static_cast<int>(V.rows()); }
  int r() const { return static_cast<int>(V.cols()); }
  Matrix matrix() const { return V * V.adjoint(); }
  Matrix apply(const Matrix& X) const { return V * (V.adjoint() * X); }

  static Projection identity(int d) { return Projection{Matrix::Identity(d, d)}; }
  static Projection canonical(int d, int r) {
    return Projection{Matrix(Matrix::Identity(d, d).leftCols(r))};
  }
};

// (1 - ||w||^2) ||Bval P Fval||_F^2
double msp_objective(const Matrix& Bval, const Projection& P, const Matrix& Fval,
                     const BallPoint& w);

struct StiefelOptions {
  int starts = 8;        // spectral starts plus seeded random ones
  int max_iters = 200;
  double rel_tol = 1e-10;
  uint64_t seed = 42;
};

// Maximizes ||Bval V V* Fval||_F^2 over d x r isometries V by projected
// gradient ascent with QR retraction, multi-start. r == d short-circuits to
// the identity.
Projection optimize_projection(const Matrix& Bval, const Matrix& Fval, int r,
                               const StiefelOptions& opts = {});

struct SearchConfig {
  int budget = 2000;       // size of the global candidate set
  double r_max = 0.95;     // radial cap of the scan; refinement may exceed it
  double refine_tol = 1e-8;
  int max_refine_iters = 400;
  uint64_t seed = 42;
  int threads = 1;
  StiefelOptions stiefel;
};

struct SelectionResult {
  BallPoint w;
  Projection P;
  double value = 0.0;
  int candidates = 0;
  int refine_iters = 0;
};

using MatrixFn = std::function<Matrix(const BallPoint&)>;

// Two-phase search for the maximizer of (1-||w||^2) ||B(w) P F(w)||_F^2 over
// interior points w and rank-r projections P: a deterministic low-discrepancy
// scan of the ball followed by simplex refinement. The projection is
// re-optimized at every probe. Deterministic for a fixed seed, independent of
// the thread count.
SelectionResult select_max(const MatrixFn& B, const PowerSeries& F, int r,
                           const SearchConfig& cfg);

}  // namespace daafd
