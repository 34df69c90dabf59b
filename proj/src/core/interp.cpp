#include "interp.hpp"

namespace daafd {

void InterpolationProblem::validate() const {
  if (n < 1) throw std::invalid_argument("interp: row dimension must be >= 1");
  if (points.empty()) throw std::invalid_argument("interp: need at least one condition");
  if (points.size() != vectors.size())
    throw std::invalid_argument("interp: points/vectors count mismatch");
  int N = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != N) throw std::invalid_argument("interp: inconsistent point dimension");
    if (p.norm() >= 1.0) throw std::invalid_argument("interp: points must be interior");
  }
  for (const auto& c : vectors) {
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("interp: vector size mismatch");
    if (!c.allFinite()) throw std::invalid_argument("interp: non-finite vector");
    if (c.norm() == 0.0) throw std::invalid_argument("interp: zero condition vector");
  }
}

BlaschkeFactor solve_single(const BallPoint& a, const ColVec& c) {
  return elementary_factor(a, c);
}

InterpSolution solve_multi(const InterpolationProblem& problem, double skip_tol) {
  problem.validate();
  int N = problem.points.front().dim();
  BlaschkeChain chain(problem.n, N);
  std::vector<InterpCondition> conditions;
  conditions.reserve(problem.points.size());

  for (int j = 0; j < problem.size(); ++j) {
    const BallPoint& a = problem.points[static_cast<std::size_t>(j)];
    const ColVec& c = problem.vectors[static_cast<std::size_t>(j)];
    Matrix prefix = chain.eval(a);                 // n x width
    RowVec row = c.adjoint() * prefix;             // residual condition row
    double scale = c.norm() * prefix.norm();
    if (row.norm() <= skip_tol * scale) {
      conditions.push_back({j, true, -1});
      continue;
    }
    ColVec next_c = row.adjoint();
    chain.push(elementary_factor(a, next_c));
    conditions.push_back({j, false, chain.size() - 1});
  }
  return InterpSolution{std::move(chain), std::move(conditions)};
}

}  // namespace daafd
