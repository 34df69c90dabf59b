#include "verify.hpp"

#include <cmath>

#include "infprod.hpp"
#include "rng.hpp"

namespace daafd {

namespace {

PowerSeries random_polynomial(Rng& rng, int N, int degree, int max_degree) {
  PowerSeries f(N, 1, 1, max_degree);
  for (const auto& alpha : multi_indices_up_to(N, degree)) {
    Matrix m(1, 1);
    m(0, 0) = rng.cgaussian();
    f.set_coeff(alpha, m);
  }
  return f;
}

double kernel_identity_case(Rng& rng, int N) {
  BallPoint a = rng.ball_point(N, 0.9);
  BallPoint z = rng.ball_point(N, 0.95);
  BallPoint w = rng.ball_point(N, 0.95);
  return kernel_identity_residual(a, z, w);
}

double formula_agreement_case(Rng& rng, int N) {
  RowVec av = rng.unit_sphere(N) * rng.uniform(0.05, 0.9);
  BallPoint a = BallPoint::interior(av);
  BallPoint z = rng.ball_point(N, 0.95);
  return (blaschke_vector(a, z) - blaschke_vector_rudin(a, z)).norm();
}

double coisometry_case(Rng& rng, int N, int chain_len) {
  int n = rng.uniform_int(1, 3);
  BlaschkeChain chain(n, N);
  for (int j = 0; j < chain_len; ++j) {
    BallPoint a = rng.ball_point(N, 0.8);
    ColVec c = rng.ccol(chain.width());
    while (c.norm() < 1e-6) c = rng.ccol(chain.width());
    chain.push(elementary_factor(a, c));
  }
  BallPoint zeta = rng.sphere_point(N);
  Matrix prod = chain.eval(zeta);
  return (prod * prod.adjoint() - Matrix::Identity(n, n)).norm();
}

double gleason_case(Rng& rng, int N) {
  PowerSeries f = random_polynomial(rng, N, 6, 8);
  BallPoint z = rng.ball_point(N, 0.9);
  Matrix lhs = f.eval(z) - f.eval(BallPoint::origin(N));
  Matrix rhs = Matrix::Zero(1, 1);
  for (int u = 0; u < N; ++u) rhs += z.coords()(u) * gleason_Ru(f, u).eval(z);
  return (lhs - rhs).norm();
}

double remark_case(Rng& rng, int N) {
  RowVec av = rng.unit_sphere(N) * rng.uniform(1e-3, 0.95);
  return remark_eigen_residual(BallPoint::interior(av));
}

template <typename Case>
VerifyRow run_cases(const char* name, int ncases, double tol, uint64_t seed, bool inject,
                    Case one_case) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < ncases; ++i) worst = std::max(worst, one_case(rng));
  if (inject) worst += 10.0 * tol;
  return VerifyRow{name, ncases, worst, tol, worst <= tol};
}

}  // namespace

std::vector<VerifyRow> run_verification(int ncases, uint64_t seed, bool inject_fault) {
  std::vector<VerifyRow> rows;
  if (ncases <= 0) return rows;
  uint64_t salt = 0;
  auto next_seed = [&] { return seed + 0x9e3779b97f4a7c15ull * ++salt; };

  for (int N : {1, 2, 3}) {
    std::string name = "kernel_identity_N" + std::to_string(N);
    rows.push_back(run_cases(name.c_str(), ncases, 1e-10, next_seed(), inject_fault,
                             [N](Rng& rng) { return kernel_identity_case(rng, N); }));
  }
  for (int N : {1, 2, 3}) {
    std::string name = "blaschke_form_agreement_N" + std::to_string(N);
    rows.push_back(run_cases(name.c_str(), ncases, 1e-12, next_seed(), inject_fault,
                             [N](Rng& rng) { return formula_agreement_case(rng, N); }));
  }
  for (int N : {1, 2, 3}) {
    std::string name = "coisometry_factor_N" + std::to_string(N);
    rows.push_back(run_cases(name.c_str(), ncases, 1e-8, next_seed(), inject_fault,
                             [N](Rng& rng) { return coisometry_case(rng, N, 1); }));
  }
  for (int N : {1, 2, 3}) {
    std::string name = "coisometry_chain3_N" + std::to_string(N);
    rows.push_back(run_cases(name.c_str(), std::max(1, ncases / 5), 1e-8, next_seed(),
                             inject_fault, [N](Rng& rng) { return coisometry_case(rng, N, 3); }));
  }
  for (int N : {2, 3}) {
    std::string name = "gleason_identity_N" + std::to_string(N);
    rows.push_back(run_cases(name.c_str(), std::max(1, ncases / 10), 1e-12, next_seed(),
                             inject_fault, [N](Rng& rng) { return gleason_case(rng, N); }));
  }
  for (int N : {1, 2, 3}) {
    std::string name = "factor_difference_eigen_N" + std::to_string(N);
    rows.push_back(run_cases(name.c_str(), ncases, 1e-12, next_seed(), inject_fault,
                             [N](Rng& rng) { return remark_case(rng, N); }));
  }
  return rows;
}

bool all_pass(const std::vector<VerifyRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace daafd
