#pragma once

#include <string>

#include "interp.hpp"
#include "selector.hpp"

namespace daafd {

struct EngineConfig {
  int max_steps = 50;
  std::vector<int> rank_schedule;  // empty -> rank 1 at every step
  int budget = 2000;
  int max_degree = 0;  // 0 -> by dimension: 24 for N <= 2, 12 beyond
  double r_max = 0.95;
  double stop_tol = 1e-6;    // relative residual energy
  double ledger_tol = 1e-6;  // relative energy-identity defect
  double div_tol = 1e-8;     // relative division residual
  double skip_tol = 1e-10;
  double refine_tol = 1e-8;
  uint64_t seed = 42;
  int threads = 1;

  int rank_at(int k) const {
    if (rank_schedule.empty()) return 1;
    if (k < static_cast<int>(rank_schedule.size()))
      return rank_schedule[static_cast<std::size_t>(k)];
    return rank_schedule.back();
  }
  int degree_for(int N) const { return max_degree > 0 ? max_degree : (N <= 2 ? 24 : 12); }
  void validate() const;
};

struct DecompositionStep {
  int k;
  BallPoint w;
  Projection P;
  int requested_rank;
  Matrix M;  // P F_k(w_k), the matrix entering the expansion term
  std::vector<BlaschkeFactor> factors;  // elementary factors absorbed this step
  double selection_value;
  double term_energy;
  double residual_energy;  // energy of F_{k+1}
  double ledger_defect;    // ||F||^2 - sum of term energies - residual energy
  double tail_budget;      // truncation discard attributable to this step
};

struct ReconstructionSample {
  BallPoint z;
  double abs_error;
};

struct DecompositionReport {
  int N = 1, rows = 1, cols = 1, max_degree = 0;
  double input_energy = 0.0;
  EngineConfig config;
  std::vector<DecompositionStep> steps;
  double final_residual_energy = 0.0;
  std::vector<ReconstructionSample> samples;
};

// Raised when a residual handed to the division step is too far from the
// factor's range; carries the offending step.
class DivisionError : public std::runtime_error {
 public:
  DivisionError(int step_index, double residual, double tolerance);
  int step_index;
  double residual;
  double tolerance;
};

// Splits F into the kernel-direction term at w and the remainder:
// H0 = P F(w) c_w(z) / c_w(w) with c_w the truncated Cauchy expansion, so the
// split is exactly orthogonal in the truncated space and P H(w) = 0 holds to
// roundoff. Returns (H0, H).
std::pair<PowerSeries, PowerSeries> extract_term(const PowerSeries& F, const BallPoint& w,
                                                 const Projection& P);

// Minimal-norm preimage under multiplication by the factor: the adjoint of
// the multiplication operator on the degree-bounded coefficient space (the
// operator is a partial isometry, so the adjoint inverts it on its range).
// If range_residual is given it receives ||B F_next - H|| / ||H||.
PowerSeries divide_by_factor(const PowerSeries& H, const BlaschkeFactor& factor, int max_degree,
                             double div_tol = 1e-8, double* range_residual = nullptr);

DecompositionReport run_decomposition(const PowerSeries& F, const EngineConfig& cfg);

// Re-runs the recorded steps (w_k, P_k) without searching; used by --replay.
DecompositionReport replay_decomposition(const PowerSeries& F, const EngineConfig& cfg,
                                         const DecompositionReport& recorded);

// Partial sum of the expansion terms, evaluated from the stored factors by
// rational evaluation. upto = -1 gives the zero matrix.
Matrix reconstruct(const DecompositionReport& report, const BallPoint& z, int upto);

}  // namespace daafd
