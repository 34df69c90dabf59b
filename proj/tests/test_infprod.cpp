#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "core/infprod.hpp"

using namespace daafd;

namespace {

BallPoint opposite(const BallPoint& a) {
  return BallPoint::closure(-a.coords() / a.norm());
}

// points along a fixed direction with 1 - ||a_k||^2 = 4^{-k}, k = 1..count
std::vector<BallPoint> geometric_points(int N, int count) {
  RowVec dir = RowVec::Zero(N);
  dir(0) = Complex(0.6, 0.8);  // unit modulus direction
  if (N > 1) {
    dir(0) = Complex(0.6, 0.0);
    dir(1) = Complex(0.0, 0.8);
  }
  std::vector<BallPoint> pts;
  for (int k = 1; k <= count; ++k) {
    double norm = std::sqrt(1.0 - std::pow(4.0, -k));
    pts.push_back(BallPoint::interior(norm * dir));
  }
  return pts;
}

}  // namespace

TEST_CASE("factor_difference: closed form vs direct subtraction") {
  Rng rng(601);
  // z = alpha vanishes
  for (int rep = 0; rep < 10; ++rep) {
    int N = 1 + (rep % 3);
    RowVec av = rng.unit_sphere(N) * rng.uniform(0.1, 0.9);
    BallPoint a = BallPoint::interior(av);
    CHECK(factor_difference(a, opposite(a)).norm() < 1e-13);
  }
  // disk case against the rational form directly
  {
    RowVec av(1), zv(1);
    av << Complex(0.5, 0.0);
    zv << Complex(0.2, 0.0);
    BallPoint a = BallPoint::interior(av);
    BallPoint z = BallPoint::interior(zv);
    RowVec direct = blaschke_vector_rudin(a, z) - blaschke_vector_rudin(a, opposite(a));
    CHECK((factor_difference(a, z) - direct).norm() < 1e-13);
  }
  for (int N : {1, 2, 3}) {
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
      RowVec av = rng.unit_sphere(N) * rng.uniform(0.05, 0.95);
      BallPoint a = BallPoint::interior(av);
      BallPoint z = rng.ball_point(N, 0.9);
      RowVec direct = blaschke_vector_rudin(a, z) - blaschke_vector_rudin(a, opposite(a));
      worst = std::max(worst, (factor_difference(a, z) - direct).norm());
    }
    CHECK(worst <= 1e-11);
  }
  CHECK_THROWS_AS(factor_difference(BallPoint::origin(2), BallPoint::origin(2)),
                  std::invalid_argument);
}

TEST_CASE("factor_difference: uniform bound 4 sqrt(1-aa*) / (1-||z||)") {
  Rng rng(602);
  for (int N : {1, 2, 3}) {
    for (int rep = 0; rep < 500; ++rep) {
      RowVec av = rng.unit_sphere(N) * rng.uniform(0.05, 0.999);
      BallPoint a = BallPoint::interior(av);
      BallPoint z = rng.ball_point(N, 0.95);
      double bound = 4.0 * std::sqrt(1.0 - a.norm_sq()) / (1.0 - z.norm());
      CHECK(factor_difference(a, z).norm() <= bound + 1e-12);
    }
  }
}

TEST_CASE("eigenvalue identity of the difference core matrix") {
  // disk: the matrix is the scalar (1 - sqrt(1-a^2)) - 1
  RowVec a1(1);
  a1 << Complex(0.6, 0.0);
  CHECK(remark_eigen_residual(BallPoint::interior(a1)) <= 1e-12);

  Rng rng(603);
  for (int rep = 0; rep < 200; ++rep) {
    int N = 1 + (rep % 3);
    RowVec av = rng.unit_sphere(N) * rng.uniform(1e-3, 0.99);
    CHECK(remark_eigen_residual(BallPoint::interior(av)) <= 1e-10);
  }
  for (int rep = 0; rep < 100; ++rep) {
    RowVec av = rng.unit_sphere(3) * rng.uniform(0.1, 0.9);
    CHECK(remark_eigen_residual(BallPoint::interior(av)) <= 1e-12);
  }
}

TEST_CASE("normalized factors: constant part is exactly (I 0)") {
  Rng rng(604);
  for (int rep = 0; rep < 40; ++rep) {
    int N = 1 + (rep % 3);
    int n = rng.uniform_int(1, 4);
    RowVec av = rng.unit_sphere(N) * rng.uniform(0.1, 0.95);
    BallPoint a = BallPoint::interior(av);
    Matrix U = rng.unitary(n);
    NormalizedFactor f = build_normalized_factor(a, U);

    // b_a(alpha) is the unit row alpha itself
    RowVec b_alpha = blaschke_vector(a, f.alpha);
    CHECK(std::abs(b_alpha.norm() - 1.0) <= 1e-12);
    CHECK((b_alpha - f.alpha.coords()).norm() <= 1e-12);

    Matrix at_alpha = f.eval(f.alpha);
    Matrix expect = f.embed();
    CHECK((at_alpha - expect).norm() <= 1e-12);
    CHECK(f.eval_A(f.alpha).norm() <= 1e-12);

    // rehovot-type bound carries over to the embedded difference
    BallPoint z = rng.ball_point(N, 0.9);
    double bound = 4.0 * std::sqrt(1.0 - a.norm_sq()) / (1.0 - z.norm());
    CHECK(f.eval_A(z).operatorNorm() <= bound + 1e-12);
  }
}

TEST_CASE("partial products: widths, disk oracle, incremental accumulation") {
  Rng rng(605);
  // width-1 start
  auto pts = geometric_points(2, 6);
  NormalizedFactorSeq seq = NormalizedFactorSeq::from_points(pts);
  BallPoint z = rng.ball_point(2, 0.5);
  RowVec z0 = partial_product(seq, z, 0);
  CHECK(z0.size() == 1);
  CHECK(z0(0) == Complex(1, 0));
  for (int m = 1; m <= 6; ++m) CHECK(partial_product(seq, z, m).size() == 1 + m * (2 - 1));

  // disk case: scalar product of b_a(z)/b_a(alpha)
  std::vector<BallPoint> dpts;
  for (double r : {0.5, 0.7, 0.85}) {
    RowVec v(1);
    v << Complex(r * 0.8, r * 0.6);
    dpts.push_back(BallPoint::interior(v));
  }
  NormalizedFactorSeq dseq = NormalizedFactorSeq::from_points(dpts);
  BallPoint zd = rng.ball_point(1, 0.7);
  Complex expected(1, 0);
  for (const auto& a : dpts) {
    Complex ba = blaschke_vector(a, zd)(0);
    Complex balpha = blaschke_vector(a, opposite(a))(0);
    expected *= ba / balpha;
  }
  CHECK(std::abs(partial_product(dseq, zd, 3)(0) - expected) <= 1e-12);

  // factor-by-factor accumulation at z = 0
  BallPoint origin = BallPoint::origin(2);
  RowVec acc = RowVec::Ones(1);
  for (int k = 0; k < 6; ++k) {
    acc = acc * seq.factors[static_cast<std::size_t>(k)].eval(origin);
    CHECK((acc - partial_product(seq, origin, k + 1)).norm() <= 1e-13);
  }
}

TEST_CASE("partial products are coisometric on the sphere") {
  Rng rng(606);
  auto pts = geometric_points(2, 8);
  NormalizedFactorSeq seq = NormalizedFactorSeq::from_points(pts);
  for (int rep = 0; rep < 30; ++rep) {
    BallPoint zeta = rng.sphere_point(2);
    RowVec zm = partial_product(seq, zeta, 8);
    CHECK(std::abs(zm.squaredNorm() - 1.0) <= 1e-8);
  }
}

TEST_CASE("convergence diagnostics: every bound holds on the geometric sequence") {
  auto pts = geometric_points(2, 14);
  NormalizedFactorSeq seq = NormalizedFactorSeq::from_points(pts);
  CHECK(seq.tail_condition_value == doctest::Approx(1.0 - std::pow(2.0, -14)).epsilon(1e-12));

  Rng rng(607);
  for (int rep = 0; rep < 5; ++rep) {
    BallPoint z = rng.ball_point(2, 0.5);
    ConvergenceReport rep_c = convergence_report(seq, z, 12);
    REQUIRE(rep_c.rows.size() == 12);
    CHECK_FALSE(rep_c.divergent_tail_flag);
    double prevK = 0.0;
    for (const auto& row : rep_c.rows) {
      CHECK(row.increment <= row.cauchy_bound + 1e-10);
      CHECK(row.step1_lhs <= row.step1_rhs + 1e-10);
      CHECK(row.lower_lhs <= std::exp(row.K) + 1e-10);  // growth envelope
      CHECK(row.K >= prevK);
      prevK = row.K;
    }
    if (rep_c.lower_bound_applicable) {
      for (const auto& row : rep_c.rows) CHECK(row.lower_lhs >= row.lower_rhs - 1e-10);
    }
  }

  // a tail of the sequence has small total difference norm: the lower bound
  // becomes applicable and must hold
  std::vector<BallPoint> tail(pts.begin() + 7, pts.end());
  NormalizedFactorSeq tail_seq = NormalizedFactorSeq::from_points(tail);
  BallPoint z = BallPoint::origin(2);
  ConvergenceReport tail_rep = convergence_report(tail_seq, z, static_cast<int>(tail.size()));
  CHECK(tail_rep.lower_bound_applicable);
  for (const auto& row : tail_rep.rows) CHECK(row.lower_lhs >= row.lower_rhs - 1e-10);

  // single factor: trivial prefix
  ConvergenceReport one = convergence_report(seq, z, 1);
  CHECK(one.rows.size() == 1);
  CHECK(one.rows[0].increment <= one.rows[0].cauchy_bound + 1e-12);
}

TEST_CASE("non-decaying sequences raise the divergence flag") {
  std::vector<BallPoint> pts;
  RowVec dir(2);
  dir << Complex(1, 0), Complex(0, 0);
  for (int k = 0; k < 10; ++k) pts.push_back(BallPoint::interior(0.5 * dir));
  NormalizedFactorSeq seq = NormalizedFactorSeq::from_points(pts);
  BallPoint z = BallPoint::origin(2);
  ConvergenceReport rep = convergence_report(seq, z, 10);
  CHECK(rep.divergent_tail_flag);
}
