#pragma once

#include <string>
#include <vector>

#include "engine.hpp"
#include "infprod.hpp"
#include "interp.hpp"

namespace daafd {

// Input/validation failures surfaced to the CLI as exit code 1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Function spec format:
// { "N": int, "rows": int, "cols": int, "max_degree": int,
//   "coeffs": [ { "alpha": [int,...], "value": [[ [re,im], ... ]] } ] }
PowerSeries series_from_json(const std::string& text);
std::string series_to_json(const PowerSeries& f);

EngineConfig config_from_json(const std::string& text);  // absent keys keep defaults
std::string config_to_json(const EngineConfig& cfg);

std::string report_to_json(const DecompositionReport& report);
DecompositionReport report_from_json(const std::string& text);

// columns: step, w (2N floats), rank, term_energy, residual_energy, ledger_defect
std::string energies_csv(const DecompositionReport& report);

// { "N": int, "n": int, "points": [[[re,im],...],...], "vectors": [[[re,im],...],...] }
InterpolationProblem interp_problem_from_json(const std::string& text);
std::string interp_solution_to_json(const InterpSolution& sol, int n, int N);

// { "N": int, "points": [[[re,im],...],...] }  /  { "z": [[re,im],...] }
std::vector<BallPoint> points_from_json(const std::string& text);
BallPoint z_from_json(const std::string& text);

// columns: m, increment, cauchy_bound, step1_lhs, step1_rhs,
//          lower_bound_lhs, lower_bound_rhs, K
std::string infprod_csv(const ConvergenceReport& report);

struct VerifyRow {
  std::string check;
  int cases;
  double max_residual;
  double tolerance;
  bool pass;
};
std::string verify_csv(const std::vector<VerifyRow>& rows);

// fixed %.17g rendering used by every CSV writer (byte-stable across runs)
std::string format_double(double v);

}  // namespace daafd
