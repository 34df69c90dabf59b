#include "engine.hpp"

#include <cmath>

#include "rng.hpp"

namespace daafd {

void EngineConfig::validate() const {
  if (max_steps < 0) throw std::invalid_argument("config: max_steps must be >= 0");
  if (budget < 1) throw std::invalid_argument("config: budget must be >= 1");
  if (max_degree != 0 && max_degree < 2)
    throw std::invalid_argument("config: max_degree must be >= 2 (or 0 for the default)");
  if (!(r_max > 0.0 && r_max < 1.0)) throw std::invalid_argument("config: r_max must be in (0,1)");
  if (!(stop_tol > 0.0) || !(ledger_tol > 0.0) || !(div_tol > 0.0) || !(skip_tol > 0.0) ||
      !(refine_tol > 0.0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  for (int r : rank_schedule)
    if (r < 1) throw std::invalid_argument("config: ranks must be >= 1");
}

DivisionError::DivisionError(int step, double res, double tol)
    : std::runtime_error("division: residual " + std::to_string(res) + " exceeds " +
                         std::to_string(tol) + " at step " + std::to_string(step)),
      step_index(step),
      residual(res),
      tolerance(tol) {}

std::pair<PowerSeries, PowerSeries> extract_term(const PowerSeries& F, const BallPoint& w,
                                                 const Projection& P) {
  if (P.d() != F.rows()) throw std::invalid_argument("extract_term: projection shape mismatch");
  CauchySeries cau = expand_cauchy(w, F.max_degree());
  // c_w(w) = sum_{|alpha|<=D} (|alpha|!/alpha!) |w^alpha|^2, real positive
  double norm_at_w = cau.series.eval(w)(0, 0).real();
  Matrix C = P.apply(F.eval(w)) / norm_at_w;

  PowerSeries H0(F.dim(), F.rows(), F.cols(), F.max_degree());
  for (const auto& [alpha, coeff] : cau.series.coeffs()) H0.set_coeff(alpha, coeff(0, 0) * C);
  PowerSeries H = series_sub(F, H0);
  return {std::move(H0), std::move(H)};
}

PowerSeries divide_by_factor(const PowerSeries& H, const BlaschkeFactor& factor, int max_degree,
                             double div_tol, double* range_residual) {
  if (H.rows() != factor.rows()) throw std::invalid_argument("divide_by_factor: row mismatch");
  if (H.dim() != factor.dim()) throw std::invalid_argument("divide_by_factor: dimension mismatch");
  PowerSeries Bs = factor_series(factor, max_degree);

  // adjoint in the weighted coefficient geometry:
  //   G_alpha = (1/wt(alpha)) sum_{beta >= alpha} wt(beta) B_{beta-alpha}^* H_beta
  std::map<MultiIndex, Matrix> acc;
  for (const auto& [beta, hb] : H.coeffs()) {
    double wb = da_weight(beta);
    for (const auto& [gamma, bg] : Bs.coeffs()) {
      if (!beta.dominates(gamma)) continue;
      MultiIndex alpha = beta.minus(gamma);
      Matrix contrib = wb * (bg.adjoint() * hb);
      auto it = acc.find(alpha);
      if (it == acc.end())
        acc.emplace(std::move(alpha), std::move(contrib));
      else
        it->second += contrib;
    }
  }
  PowerSeries G(H.dim(), factor.out_width(), H.cols(), max_degree);
  for (const auto& [alpha, m] : acc) G.set_coeff(alpha, m / da_weight(alpha));

  double hn = da_norm(H);
  double rr = 0.0;
  if (hn > 0.0) {
    PowerSeries back = series_matmul(Bs, G, max_degree);
    rr = da_norm(series_sub(H, back)) / hn;
  }
  if (range_residual)
    *range_residual = rr;  // caller decides what to do with it
  else if (rr > 10.0 * div_tol)
    throw DivisionError(-1, rr, 10.0 * div_tol);
  return G;
}

namespace {

struct StepOutcome {
  DecompositionStep step;
  PowerSeries next;
};

// One extraction + division round at a fixed (w, P). Factors with rank > 1
// are built by absorbing the projection's basis vectors as repeated-point
// conditions; degenerate directions are skipped exactly as in solve_multi.
StepOutcome run_step(const PowerSeries& Fk, const BallPoint& w, const Projection& P,
                     int requested_rank, int k, const EngineConfig& cfg, double selection_value) {
  auto [H0, H] = extract_term(Fk, w, P);
  Matrix M = P.apply(Fk.eval(w));
  double term_energy = da_norm_sq(H0);
  double ideal_energy = (1.0 - w.norm_sq()) * M.squaredNorm();

  InterpolationProblem sub;
  sub.n = Fk.rows();
  for (int j = 0; j < P.r(); ++j) {
    sub.points.push_back(w);
    sub.vectors.push_back(P.V.col(j));
  }
  InterpSolution sol = solve_multi(sub, cfg.skip_tol);

  PowerSeries next = std::move(H);
  double div_defect = 0.0;
  for (const auto& f : sol.chain.factors()) {
    double before = da_norm_sq(next);
    double rr = 0.0;
    next = divide_by_factor(next, f, cfg.max_degree, cfg.div_tol, &rr);
    if (rr > 10.0 * cfg.div_tol) throw DivisionError(k, rr, 10.0 * cfg.div_tol);
    div_defect += before - da_norm_sq(next);
  }

  DecompositionStep step{k,
                         w,
                         P,
                         requested_rank,
                         std::move(M),
                         sol.chain.factors(),
                         selection_value,
                         term_energy,
                         da_norm_sq(next),
                         0.0,
                         std::abs(term_energy - ideal_energy) + std::abs(div_defect)};
  return StepOutcome{std::move(step), std::move(next)};
}

DecompositionReport decompose_impl(const PowerSeries& F, const EngineConfig& raw_cfg,
                                   const DecompositionReport* recorded) {
  raw_cfg.validate();
  EngineConfig cfg = raw_cfg;
  cfg.max_degree = raw_cfg.degree_for(F.dim());  // resolved, so reports replay bit-for-bit
  DecompositionReport report;
  report.N = F.dim();
  report.rows = F.rows();
  report.cols = F.cols();
  report.max_degree = cfg.max_degree;
  report.config = cfg;

  PowerSeries Fk = truncate(F, cfg.max_degree);
  double total = da_norm_sq(Fk);
  report.input_energy = total;
  if (total == 0.0) {
    report.final_residual_energy = 0.0;
    return report;
  }

  BlaschkeChain chain(F.rows(), F.dim());
  double captured = 0.0;
  int max_steps = recorded ? static_cast<int>(recorded->steps.size()) : cfg.max_steps;

  for (int k = 0; k < max_steps; ++k) {
    double residual = da_norm_sq(Fk);
    if (residual <= cfg.stop_tol * total) break;

    int d = Fk.rows();
    int r = std::min(cfg.rank_at(k), d);

    BallPoint w = BallPoint::origin(F.dim());
    Projection P = Projection::canonical(d, r);
    double value = 0.0;
    if (recorded) {
      const DecompositionStep& rec = recorded->steps[static_cast<std::size_t>(k)];
      w = rec.w;
      P = rec.P;
      r = rec.requested_rank;
      Matrix Bval = chain.eval(w);
      value = msp_objective(Bval, P, Fk.eval(w), w);
    } else {
      SearchConfig sc;
      sc.budget = cfg.budget;
      sc.r_max = cfg.r_max;
      sc.refine_tol = cfg.refine_tol;
      sc.seed = cfg.seed;
      sc.threads = cfg.threads;
      SelectionResult sel =
          select_max([&chain](const BallPoint& z) { return chain.eval(z); }, Fk, r, sc);
      w = sel.w;
      P = sel.P;
      value = sel.value;
      if (sel.value == 0.0) break;  // nothing left the search can see
    }

    StepOutcome out = run_step(Fk, w, P, r, k, cfg, value);
    captured += out.step.term_energy;
    out.step.ledger_defect = total - captured - out.step.residual_energy;
    for (const auto& f : out.step.factors) chain.push(f);
    Fk = std::move(out.next);
    report.steps.push_back(std::move(out.step));
  }

  report.final_residual_energy = da_norm_sq(Fk);

  // fixed interior spot checks of the reconstruction
  Rng rng(cfg.seed ^ 0x2c6fe96ee78b6955ull);
  PowerSeries F0 = truncate(F, cfg.max_degree);
  for (int i = 0; i < 5; ++i) {
    BallPoint z = rng.ball_point(F.dim(), 0.5);
    double err = (F0.eval(z) - reconstruct(report, z, static_cast<int>(report.steps.size()) - 1))
                     .norm();
    report.samples.push_back(ReconstructionSample{z, err});
  }
  return report;
}

}  // namespace

DecompositionReport run_decomposition(const PowerSeries& F, const EngineConfig& cfg) {
  return decompose_impl(F, cfg, nullptr);
}

DecompositionReport replay_decomposition(const PowerSeries& F, const EngineConfig& cfg,
                                         const DecompositionReport& recorded) {
  return decompose_impl(F, cfg, &recorded);
}

Matrix reconstruct(const DecompositionReport& report, const BallPoint& z, int upto) {
  Matrix acc = Matrix::Zero(report.rows, report.cols);
  Matrix prefix = Matrix::Identity(report.rows, report.rows);  // the chain before step k
  int limit = std::min<int>(upto, static_cast<int>(report.steps.size()) - 1);
  for (int k = 0; k <= limit; ++k) {
    const DecompositionStep& s = report.steps[static_cast<std::size_t>(k)];
    Complex e = cauchy_kernel_normalized(s.w, z);
    double pre = std::sqrt(1.0 - s.w.norm_sq());
    acc += pre * e * (prefix * s.M);
    for (const auto& f : s.factors) prefix = prefix * f.eval(z);
  }
  return acc;
}

}  // namespace daafd
