#include "selector.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "rng.hpp"

namespace daafd {

double msp_objective(const Matrix& Bval, const Projection& P, const Matrix& Fval,
                     const BallPoint& w) {
  if (Bval.cols() != P.d() || P.d() != Fval.rows())
    throw std::invalid_argument("msp_objective: shapes do not compose");
  double pre = 1.0 - w.norm_sq();
  return pre * (Bval * P.apply(Fval)).squaredNorm();
}

namespace {

double stiefel_value(const Matrix& G, const Matrix& H, const Matrix& V) {
  Matrix a = V.adjoint() * (G * V);
  Matrix b = V.adjoint() * (H * V);
  return (a * b).trace().real();
}

Matrix qr_retract(const Matrix& X) {
  int d = static_cast<int>(X.rows());
  int r = static_cast<int>(X.cols());
  Eigen::HouseholderQR<Matrix> qr(X);
  Matrix Q = qr.householderQ() * Matrix::Identity(d, r);
  Matrix R = qr.matrixQR().topRows(r);
  for (int j = 0; j < r; ++j) {
    Complex piv = R(j, j);
    double m = std::abs(piv);
    if (m > 1e-300) Q.col(j) *= piv / m;  // keep the map deterministic
  }
  return Q;
}

// Ascent on the Stiefel manifold from one start; returns the reached value.
double ascend(const Matrix& G, const Matrix& H, Matrix& V, int max_iters, double rel_tol) {
  double v = stiefel_value(G, H, V);
  double eta = 1.0 / (G.norm() * H.norm() + 1e-300);
  for (int it = 0; it < max_iters; ++it) {
    Matrix GV = G * V;
    Matrix HV = H * V;
    Matrix grad = 2.0 * (HV * (V.adjoint() * GV) + GV * (V.adjoint() * HV));
    Matrix vg = V.adjoint() * grad;
    Matrix tang = grad - V * (0.5 * (vg + vg.adjoint()));
    if (tang.norm() <= 1e-14 * (1.0 + std::abs(v))) break;

    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Matrix Vn = qr_retract(V + eta * tang);
      double vn = stiefel_value(G, H, Vn);
      if (vn > v) {
        double gain = (vn - v) / std::max(std::abs(v), 1e-300);
        V = std::move(Vn);
        v = vn;
        eta *= 1.5;
        improved = true;
        if (gain < rel_tol) return v;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
  }
  return v;
}

// at most min(rows, cols) columns come back; callers pad or skip short starts
Matrix top_left_singular(const Matrix& A, int r) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU);
  Matrix u = svd.matrixU();
  return u.leftCols(std::min<Eigen::Index>(r, u.cols()));
}

}  // namespace

Projection optimize_projection(const Matrix& Bval, const Matrix& Fval, int r,
                               const StiefelOptions& opts) {
  int d = static_cast<int>(Bval.cols());
  if (Fval.rows() != d) throw std::invalid_argument("optimize_projection: shape mismatch");
  if (r < 1 || r > d) throw std::invalid_argument("optimize_projection: rank out of range");
  if (r == d) return Projection::identity(d);

  Matrix G = Bval.adjoint() * Bval;
  Matrix H = Fval * Fval.adjoint();

  std::vector<Matrix> starts;
  starts.reserve(static_cast<std::size_t>(opts.starts));
  // spectral starts: dominant subspaces of B, of F, and of their sum
  {
    Eigen::JacobiSVD<Matrix> svdB(Bval, Eigen::ComputeThinV);
    starts.push_back(svdB.matrixV().leftCols(std::min<int>(r, svdB.matrixV().cols())));
  }
  starts.push_back(top_left_singular(Fval, r));
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(G + H);
    Matrix vecs = es.eigenvectors();  // ascending eigenvalues
    starts.push_back(vecs.rightCols(r));
  }
  Rng rng(opts.seed ^ 0x5d2f3c1b9a8e7ull);
  while (static_cast<int>(starts.size()) < opts.starts)
    starts.push_back(qr_retract(rng.cmatrix(d, r)));

  Matrix bestV;
  double best = -1.0;
  for (auto& V0 : starts) {
    if (V0.cols() != r) continue;
    Matrix V = qr_retract(V0);
    double v = ascend(G, H, V, opts.max_iters, opts.rel_tol);
    if (v > best) {
      best = v;
      bestV = V;
    }
  }
  return Projection{bestV};
}

namespace {

double halton(uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<uint64_t>(base));
    i /= static_cast<uint64_t>(base);
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

// Low-discrepancy direction on the unit sphere of C^N.
RowVec halton_direction(uint64_t idx, int N) {
  RowVec v(N);
  for (int i = 0; i < N; ++i) {
    double u = std::max(halton(idx, kPrimes[2 * i]), 1e-12);
    double t = halton(idx, kPrimes[2 * i + 1]);
    double amp = std::sqrt(-2.0 * std::log(u));
    v(i) = Complex(amp * std::cos(6.283185307179586477 * t),
                   amp * std::sin(6.283185307179586477 * t));
  }
  double n = v.norm();
  if (n < 1e-12) {
    v = RowVec::Zero(N);
    v(0) = Complex(1.0, 0.0);
    return v;
  }
  return v / n;
}

// Radial-spherical product grid of the ball, origin first.
std::vector<RowVec> scan_candidates(int N, int budget, double r_max) {
  std::vector<RowVec> out;
  out.reserve(static_cast<std::size_t>(budget));
  out.push_back(RowVec::Zero(N));
  if (budget <= 1) return out;
  int shells = std::max(2, static_cast<int>(std::llround(std::cbrt(static_cast<double>(budget)))));
  int dirs = (budget - 1 + shells - 1) / shells;
  for (int i = 0; i < shells && static_cast<int>(out.size()) < budget; ++i) {
    double rho = r_max * std::pow(static_cast<double>(i + 1) / shells, 1.0 / (2.0 * N));
    for (int j = 0; j < dirs && static_cast<int>(out.size()) < budget; ++j) {
      out.push_back(rho * halton_direction(static_cast<uint64_t>(j + 1), N));
    }
  }
  return out;
}

struct Probe {
  double value = -1.0;
  Projection P;
};

void run_chunked(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    int lo = static_cast<int>(static_cast<long long>(count) * t / workers);
    int hi = static_cast<int>(static_cast<long long>(count) * (t + 1) / workers);
    pool.emplace_back([lo, hi, t, &body, &errors] {
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

SelectionResult select_max(const MatrixFn& B, const PowerSeries& F, int r,
                           const SearchConfig& cfg) {
  if (cfg.budget < 1) throw std::invalid_argument("select_max: budget must be >= 1");
  int N = F.dim();
  int d = F.rows();
  if (r < 1 || r > d) throw std::invalid_argument("select_max: rank out of range");

  if (F.coeffs().empty()) {
    return SelectionResult{BallPoint::origin(N), Projection::canonical(d, r), 0.0, 0, 0};
  }

  StiefelOptions sopts = cfg.stiefel;
  sopts.seed = cfg.seed;

  auto probe = [&](const BallPoint& w) -> Probe {
    Matrix Bval = B(w);
    Matrix Fval = F.eval(w);
    Projection P = (r == static_cast<int>(Fval.rows()))
                       ? Projection::identity(r)
                       : optimize_projection(Bval, Fval, r, sopts);
    return Probe{msp_objective(Bval, P, Fval, w), std::move(P)};
  };

  // phase 1: deterministic global scan
  std::vector<RowVec> cands = scan_candidates(N, cfg.budget, cfg.r_max);
  std::vector<Probe> results(cands.size());
  run_chunked(static_cast<int>(cands.size()), cfg.threads, [&](int i) {
    results[static_cast<std::size_t>(i)] = probe(BallPoint::interior(cands[static_cast<std::size_t>(i)]));
  });
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value > results[best_i].value) best_i = i;  // first-found tie-break

  BallPoint best_w = BallPoint::interior(cands[best_i]);
  Projection best_P = results[best_i].P;
  double best_v = results[best_i].value;

  // phase 2: Nelder-Mead on the 2N real coordinates, clamped into the ball
  const double hard_cap = 0.999;
  auto clamp = [&](Eigen::VectorXd x) -> BallPoint {
    RowVec w(N);
    for (int i = 0; i < N; ++i) w(i) = Complex(x(2 * i), x(2 * i + 1));
    double n = w.norm();
    if (n > hard_cap) w *= hard_cap / n;
    return BallPoint::interior(w);
  };
  auto pack = [&](const BallPoint& w) {
    Eigen::VectorXd x(2 * N);
    for (int i = 0; i < N; ++i) {
      x(2 * i) = w.coords()(i).real();
      x(2 * i + 1) = w.coords()(i).imag();
    }
    return x;
  };

  int refine_iters = 0;
  auto eval_pt = [&](const Eigen::VectorXd& x) -> double {
    BallPoint w = clamp(x);
    Probe p = probe(w);
    if (p.value > best_v) {
      best_v = p.value;
      best_w = w;
      best_P = std::move(p.P);
    }
    return -p.value;  // simplex minimizes
  };

  int dim = 2 * N;
  std::vector<Eigen::VectorXd> xs;
  std::vector<double> fs;
  xs.reserve(static_cast<std::size_t>(dim + 1));
  Eigen::VectorXd x0 = pack(best_w);
  xs.push_back(x0);
  fs.push_back(eval_pt(x0));
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd xk = x0;
    xk(k) += 0.05;
    xs.push_back(xk);
    fs.push_back(eval_pt(xk));
  }

  auto order = [&] {
    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> nx(xs.size());
    std::vector<double> nf(fs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      nx[i] = xs[idx[i]];
      nf[i] = fs[idx[i]];
    }
    xs = std::move(nx);
    fs = std::move(nf);
  };

  for (; refine_iters < cfg.max_refine_iters; ++refine_iters) {
    order();
    double diam = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) diam = std::max(diam, (xs[i] - xs[0]).norm());
    if (diam < cfg.refine_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) centroid += xs[i];
    centroid /= static_cast<double>(dim);

    Eigen::VectorXd xr = centroid + (centroid - xs.back());
    double fr = eval_pt(xr);
    if (fr < fs[0]) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs.back());
      double fe = eval_pt(xe);
      if (fe < fr) {
        xs.back() = xe;
        fs.back() = fe;
      } else {
        xs.back() = xr;
        fs.back() = fr;
      }
    } else if (fr < fs[fs.size() - 2]) {
      xs.back() = xr;
      fs.back() = fr;
    } else {
      Eigen::VectorXd xc = centroid + 0.5 * (xs.back() - centroid);
      double fc = eval_pt(xc);
      if (fc < fs.back()) {
        xs.back() = xc;
        fs.back() = fc;
      } else {
        for (std::size_t i = 1; i < xs.size(); ++i) {
          xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
          fs[i] = eval_pt(xs[i]);
        }
      }
    }
  }

  return SelectionResult{std::move(best_w), std::move(best_P), best_v,
                         static_cast<int>(cands.size()), refine_iters};
}

}  // namespace daafd
