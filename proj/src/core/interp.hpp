#pragma once

#include "blaschke.hpp"

namespace daafd {

// Tangential conditions c_j* f(a_j) = 0, j = 1..M, for f with n rows.
struct InterpolationProblem {
  int n = 1;
  std::vector<BallPoint> points;
  std::vector<ColVec> vectors;

  int size() const { return static_cast<int>(points.size()); }
  void validate() const;
};

// Single condition: the elementary factor with c* B(a) = 0.
BlaschkeFactor solve_single(const BallPoint& a, const ColVec& c);

struct InterpCondition {
  int index;         // position in the problem
  bool skipped;      // condition already satisfied by the accumulated chain
  int factor_index;  // index into the chain, -1 when skipped
};

struct InterpSolution {
  BlaschkeChain chain;
  std::vector<InterpCondition> conditions;

  int skips() const {
    int s = 0;
    for (const auto& c : conditions) s += c.skipped ? 1 : 0;
    return s;
  }
};

// Absorbs the conditions in the given order. At step j the row
// c_j* (B_1...B_{j-1})(a_j) is computed; if its norm is below
// skip_tol * ||c_j|| * ||B(a_j)|| the condition is recorded as skipped,
// otherwise the row's adjoint seeds the next elementary factor at a_j.
InterpSolution solve_multi(const InterpolationProblem& problem, double skip_tol = 1e-10);

}  // namespace daafd
