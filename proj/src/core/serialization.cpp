#include "serialization.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace daafd {

using nlohmann::json;

namespace {

json parse_checked(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to(const Complex& c) { return json::array({c.real(), c.imag()}); }

Matrix matrix_from(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) throw ParseError("bad matrix row count");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("bad matrix column count");
    for (int k = 0; k < cols; ++k) m(i, k) = complex_from(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json matrix_to(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RowVec rowvec_from(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty coordinate list");
  RowVec v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i]);
  return v;
}

json rowvec_to(const RowVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to(v(i)));
  return out;
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PowerSeries series_from_json(const std::string& text) {
  json j = parse_checked(text);
  int N = int_field(j, "N");
  int rows = int_field(j, "rows");
  int cols = int_field(j, "cols");
  int max_degree = int_field(j, "max_degree");
  try {
    PowerSeries f(N, rows, cols, max_degree);
    if (j.contains("coeffs")) {
      if (!j["coeffs"].is_array()) throw ParseError("'coeffs' must be an array");
      for (const json& entry : j["coeffs"]) {
        if (!entry.contains("alpha") || !entry["alpha"].is_array())
          throw ParseError("coefficient entry needs an 'alpha' array");
        if (static_cast<int>(entry["alpha"].size()) != N)
          throw ParseError("'alpha' length must equal N");
        MultiIndex alpha(N);
        for (int u = 0; u < N; ++u) {
          int e = entry["alpha"][static_cast<std::size_t>(u)].get<int>();
          if (e < 0) throw ParseError("'alpha' entries must be >= 0");
          alpha = alpha.bump(u, e);
        }
        if (!entry.contains("value")) throw ParseError("coefficient entry needs a 'value'");
        f.set_coeff(alpha, matrix_from(entry["value"], rows, cols));
      }
    }
    return f;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string series_to_json(const PowerSeries& f) {
  json j;
  j["N"] = f.dim();
  j["rows"] = f.rows();
  j["cols"] = f.cols();
  j["max_degree"] = f.max_degree();
  json coeffs = json::array();
  for (const auto& [alpha, value] : f.coeffs()) {
    json entry;
    entry["alpha"] = alpha.entries();
    entry["value"] = matrix_to(value);
    coeffs.push_back(std::move(entry));
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump(2);
}

EngineConfig config_from_json(const std::string& text) {
  json j = parse_checked(text);
  EngineConfig cfg;
  auto get_int = [&](const char* key, int& target) {
    if (j.contains(key)) target = j[key].get<int>();
  };
  auto get_double = [&](const char* key, double& target) {
    if (j.contains(key)) target = j[key].get<double>();
  };
  get_int("max_steps", cfg.max_steps);
  get_int("budget", cfg.budget);
  get_int("max_degree", cfg.max_degree);
  get_int("threads", cfg.threads);
  get_double("r_max", cfg.r_max);
  get_double("stop_tol", cfg.stop_tol);
  get_double("ledger_tol", cfg.ledger_tol);
  get_double("div_tol", cfg.div_tol);
  get_double("skip_tol", cfg.skip_tol);
  get_double("refine_tol", cfg.refine_tol);
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("rank_schedule")) {
    const json& rs = j["rank_schedule"];
    cfg.rank_schedule.clear();
    if (rs.is_number_integer()) {
      cfg.rank_schedule.push_back(rs.get<int>());
    } else if (rs.is_array()) {
      for (const json& r : rs) cfg.rank_schedule.push_back(r.get<int>());
    } else {
      throw ParseError("'rank_schedule' must be an integer or an array");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return cfg;
}

std::string config_to_json(const EngineConfig& cfg) {
  json j;
  j["max_steps"] = cfg.max_steps;
  j["rank_schedule"] = cfg.rank_schedule.empty() ? json(1) : json(cfg.rank_schedule);
  j["budget"] = cfg.budget;
  j["max_degree"] = cfg.max_degree;
  j["r_max"] = cfg.r_max;
  j["stop_tol"] = cfg.stop_tol;
  j["ledger_tol"] = cfg.ledger_tol;
  j["div_tol"] = cfg.div_tol;
  j["skip_tol"] = cfg.skip_tol;
  j["refine_tol"] = cfg.refine_tol;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j.dump(2);
}

namespace {

json factor_to_json(const BlaschkeFactor& f) {
  json j;
  j["a"] = rowvec_to(f.a.coords());
  j["U"] = matrix_to(f.U);
  j["c"] = matrix_to(Matrix(f.c));
  if (f.W) j["W"] = matrix_to(*f.W);
  return j;
}

BlaschkeFactor factor_from_json(const json& j) {
  RowVec a = rowvec_from(j.at("a"));
  int n = static_cast<int>(j.at("U").size());
  Matrix U = matrix_from(j.at("U"), n, n);
  Matrix c = matrix_from(j.at("c"), n, 1);
  BlaschkeFactor f{BallPoint::interior(std::move(a)), std::move(U), ColVec(c.col(0)),
                   std::nullopt};
  if (j.contains("W")) {
    int q = static_cast<int>(j.at("W").size());
    f.W = matrix_from(j.at("W"), q, q);
  }
  return f;
}

}  // namespace

std::string report_to_json(const DecompositionReport& report) {
  json j;
  j["input"] = {{"N", report.N},
                {"rows", report.rows},
                {"cols", report.cols},
                {"max_degree", report.max_degree},
                {"energy", report.input_energy}};
  j["config"] = json::parse(config_to_json(report.config));
  json steps = json::array();
  for (const auto& s : report.steps) {
    json sj;
    sj["k"] = s.k;
    sj["w"] = rowvec_to(s.w.coords());
    sj["rank"] = s.requested_rank;
    sj["V"] = matrix_to(s.P.V);
    sj["M"] = matrix_to(s.M);
    json factors = json::array();
    for (const auto& f : s.factors) factors.push_back(factor_to_json(f));
    sj["factors"] = std::move(factors);
    sj["selection_value"] = s.selection_value;
    sj["term_energy"] = s.term_energy;
    sj["residual_energy"] = s.residual_energy;
    sj["ledger_defect"] = s.ledger_defect;
    sj["tail_budget"] = s.tail_budget;
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  j["final_residual_energy"] = report.final_residual_energy;
  json samples = json::array();
  for (const auto& s : report.samples)
    samples.push_back({{"z", rowvec_to(s.z.coords())}, {"abs_error", s.abs_error}});
  j["reconstruction_samples"] = std::move(samples);
  return j.dump(2);
}

DecompositionReport report_from_json(const std::string& text) {
  json j = parse_checked(text);
  try {
    DecompositionReport report;
    const json& input = j.at("input");
    report.N = int_field(input, "N");
    report.rows = int_field(input, "rows");
    report.cols = int_field(input, "cols");
    report.max_degree = int_field(input, "max_degree");
    report.input_energy = input.at("energy").get<double>();
    report.config = config_from_json(j.at("config").dump());
    for (const json& sj : j.at("steps")) {
      RowVec w = rowvec_from(sj.at("w"));
      int d = static_cast<int>(sj.at("V").size());
      int r = static_cast<int>(sj.at("V")[0].size());
      Matrix V = matrix_from(sj.at("V"), d, r);
      Matrix M = matrix_from(sj.at("M"), d, static_cast<int>(sj.at("M")[0].size()));
      std::vector<BlaschkeFactor> factors;
      for (const json& fj : sj.at("factors")) factors.push_back(factor_from_json(fj));
      DecompositionStep step{int_field(sj, "k"),
                             BallPoint::interior(std::move(w)),
                             Projection{std::move(V)},
                             int_field(sj, "rank"),
                             std::move(M),
                             std::move(factors),
                             sj.at("selection_value").get<double>(),
                             sj.at("term_energy").get<double>(),
                             sj.at("residual_energy").get<double>(),
                             sj.at("ledger_defect").get<double>(),
                             sj.at("tail_budget").get<double>()};
      report.steps.push_back(std::move(step));
    }
    report.final_residual_energy = j.at("final_residual_energy").get<double>();
    if (j.contains("reconstruction_samples")) {
      for (const json& s : j["reconstruction_samples"]) {
        report.samples.push_back(ReconstructionSample{
            BallPoint::interior(rowvec_from(s.at("z"))), s.at("abs_error").get<double>()});
      }
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string energies_csv(const DecompositionReport& report) {
  std::ostringstream out;
  out << "step";
  for (int u = 0; u < report.N; ++u) out << ",w" << u << "_re,w" << u << "_im";
  out << ",rank,term_energy,residual_energy,ledger_defect\n";
  for (const auto& s : report.steps) {
    out << s.k;
    for (int u = 0; u < report.N; ++u)
      out << "," << format_double(s.w.coords()(u).real()) << ","
          << format_double(s.w.coords()(u).imag());
    out << "," << s.requested_rank << "," << format_double(s.term_energy) << ","
        << format_double(s.residual_energy) << "," << format_double(s.ledger_defect) << "\n";
  }
  return out.str();
}

InterpolationProblem interp_problem_from_json(const std::string& text) {
  json j = parse_checked(text);
  InterpolationProblem p;
  try {
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
      throw ParseError("missing 'points' array");
    if (!j.contains("vectors") || !j["vectors"].is_array() || j["vectors"].empty())
      throw ParseError("missing 'vectors' array");
    // N and n may be stated explicitly or inferred from the first entries
    int N = j.contains("N") ? int_field(j, "N") : static_cast<int>(j["points"][0].size());
    p.n = j.contains("n") ? int_field(j, "n") : static_cast<int>(j["vectors"][0].size());
    for (const json& pt : j["points"]) {
      RowVec v = rowvec_from(pt);
      if (static_cast<int>(v.size()) != N) throw ParseError("point dimension != N");
      p.points.push_back(BallPoint::interior(std::move(v)));
    }
    for (const json& cv : j["vectors"]) {
      RowVec v = rowvec_from(cv);
      if (static_cast<int>(v.size()) != p.n) throw ParseError("vector dimension != n");
      p.vectors.push_back(ColVec(v.transpose()));
    }
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return p;
}

std::string interp_solution_to_json(const InterpSolution& sol, int n, int N) {
  json j;
  j["N"] = N;
  j["n"] = n;
  j["width"] = sol.chain.width();
  j["factor_count"] = sol.chain.size();
  json conds = json::array();
  for (const auto& c : sol.conditions)
    conds.push_back({{"index", c.index}, {"skipped", c.skipped}, {"factor_index", c.factor_index}});
  j["conditions"] = std::move(conds);
  json factors = json::array();
  for (const auto& f : sol.chain.factors()) factors.push_back(factor_to_json(f));
  j["factors"] = std::move(factors);
  return j.dump(2);
}

std::vector<BallPoint> points_from_json(const std::string& text) {
  json j = parse_checked(text);
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
    throw ParseError("missing 'points' array");
  int N = j.contains("N") ? int_field(j, "N") : static_cast<int>(j["points"][0].size());
  std::vector<BallPoint> out;
  try {
    for (const json& pt : j["points"]) {
      RowVec v = rowvec_from(pt);
      if (static_cast<int>(v.size()) != N) throw ParseError("point dimension != N");
      out.push_back(BallPoint::interior(std::move(v)));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (out.empty()) throw ParseError("'points' must be non-empty");
  return out;
}

BallPoint z_from_json(const std::string& text) {
  json j = parse_checked(text);
  if (!j.contains("z")) throw ParseError("missing 'z'");
  try {
    return BallPoint::interior(rowvec_from(j["z"]));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string infprod_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "m,increment,cauchy_bound,step1_lhs,step1_rhs,lower_bound_lhs,lower_bound_rhs,K\n";
  for (const auto& r : report.rows) {
    out << r.m << "," << format_double(r.increment) << "," << format_double(r.cauchy_bound) << ","
        << format_double(r.step1_lhs) << "," << format_double(r.step1_rhs) << ","
        << format_double(r.lower_lhs) << "," << format_double(r.lower_rhs) << ","
        << format_double(r.K) << "\n";
  }
  return out.str();
}

std::string verify_csv(const std::vector<VerifyRow>& rows) {
  std::ostringstream out;
  out << "check,cases,max_residual,tolerance,pass\n";
  for (const auto& r : rows) {
    out << r.check << "," << r.cases << "," << format_double(r.max_residual) << ","
        << format_double(r.tolerance) << "," << (r.pass ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace daafd
