#include "daafd.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/engine.hpp"
#include "core/serialization.hpp"
#include "core/verify.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

daafd_status fail(daafd_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Maps the C++ error taxonomy onto status codes at the boundary.
template <typename Fn>
daafd_status guarded(Fn&& fn) {
  try {
    fn();
    return DAAFD_OK;
  } catch (const daafd::ParseError& e) {
    return fail(DAAFD_ERR_PARSE, e.what());
  } catch (const daafd::DivisionError& e) {
    return fail(DAAFD_ERR_DIVISION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DAAFD_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(DAAFD_ERR_INTERNAL, e.what());
  }
}

void write_complex_matrix(const daafd::Matrix& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      *out++ = m(i, j).real();
      *out++ = m(i, j).imag();
    }
}

daafd::BallPoint read_point(const double* z, int N) {
  daafd::RowVec v(N);
  for (int i = 0; i < N; ++i) v(i) = daafd::Complex(z[2 * i], z[2 * i + 1]);
  return daafd::BallPoint::interior(std::move(v));
}

}  // namespace

struct daafd_series {
  daafd::PowerSeries value;
};
struct daafd_config {
  daafd::EngineConfig value;
};
struct daafd_report {
  daafd::DecompositionReport value;
};

extern "C" {

const char* daafd_version(void) { return "0.1.0"; }

const char* daafd_last_error(void) { return g_last_error.c_str(); }

void daafd_string_free(char* s) { std::free(s); }

daafd_status daafd_series_parse(const char* json, daafd_series** out) {
  if (!json || !out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] { *out = new daafd_series{daafd::series_from_json(json)}; });
}

daafd_status daafd_series_to_json(const daafd_series* s, char** json_out) {
  if (!s || !json_out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] { *json_out = dup_string(daafd::series_to_json(s->value)); });
}

void daafd_series_free(daafd_series* s) { delete s; }

int daafd_series_dim(const daafd_series* s) { return s ? s->value.dim() : -1; }
int daafd_series_rows(const daafd_series* s) { return s ? s->value.rows() : -1; }
int daafd_series_cols(const daafd_series* s) { return s ? s->value.cols() : -1; }
int daafd_series_max_degree(const daafd_series* s) { return s ? s->value.max_degree() : -1; }

daafd_status daafd_series_eval(const daafd_series* s, const double* z, double* out) {
  if (!s || !z || !out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] {
    daafd::Matrix m = s->value.eval(read_point(z, s->value.dim()));
    write_complex_matrix(m, out);
  });
}

daafd_status daafd_config_default(daafd_config** out) {
  if (!out) return fail(DAAFD_ERR_INVALID, "null argument");
  *out = new daafd_config{daafd::EngineConfig{}};
  return DAAFD_OK;
}

daafd_status daafd_config_parse(const char* json, daafd_config** out) {
  if (!json || !out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] { *out = new daafd_config{daafd::config_from_json(json)}; });
}

daafd_status daafd_config_set_seed(daafd_config* c, unsigned long long seed) {
  if (!c) return fail(DAAFD_ERR_INVALID, "null argument");
  c->value.seed = seed;
  return DAAFD_OK;
}

daafd_status daafd_config_set_threads(daafd_config* c, int threads) {
  if (!c || threads < 1) return fail(DAAFD_ERR_INVALID, "threads must be >= 1");
  c->value.threads = threads;
  return DAAFD_OK;
}

void daafd_config_free(daafd_config* c) { delete c; }

daafd_status daafd_decompose(const daafd_series* f, const daafd_config* c, daafd_report** out) {
  if (!f || !c || !out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] { *out = new daafd_report{daafd::run_decomposition(f->value, c->value)}; });
}

daafd_status daafd_decompose_replay(const daafd_series* f, const daafd_config* c,
                                    const char* recorded_report_json, daafd_report** out) {
  if (!f || !c || !recorded_report_json || !out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] {
    daafd::DecompositionReport recorded = daafd::report_from_json(recorded_report_json);
    *out = new daafd_report{daafd::replay_decomposition(f->value, c->value, recorded)};
  });
}

int daafd_report_step_count(const daafd_report* r) {
  return r ? static_cast<int>(r->value.steps.size()) : -1;
}

daafd_status daafd_report_to_json(const daafd_report* r, char** json_out) {
  if (!r || !json_out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] { *json_out = dup_string(daafd::report_to_json(r->value)); });
}

daafd_status daafd_report_energies_csv(const daafd_report* r, char** csv_out) {
  if (!r || !csv_out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] { *csv_out = dup_string(daafd::energies_csv(r->value)); });
}

daafd_status daafd_report_reconstruct(const daafd_report* r, const double* z, int upto,
                                      double* out) {
  if (!r || !z || !out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] {
    daafd::Matrix m = daafd::reconstruct(r->value, read_point(z, r->value.N), upto);
    write_complex_matrix(m, out);
  });
}

void daafd_report_free(daafd_report* r) { delete r; }

daafd_status daafd_interp(const char* problem_json, char** chain_json_out) {
  if (!problem_json || !chain_json_out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] {
    daafd::InterpolationProblem p = daafd::interp_problem_from_json(problem_json);
    daafd::InterpSolution sol = daafd::solve_multi(p);
    *chain_json_out =
        dup_string(daafd::interp_solution_to_json(sol, p.n, p.points.front().dim()));
  });
}

daafd_status daafd_verify(int ncases, unsigned long long seed, int inject_fault, char** csv_out,
                          int* all_pass_out) {
  if (ncases < 0 || !csv_out || !all_pass_out) return fail(DAAFD_ERR_INVALID, "bad argument");
  return guarded([&] {
    auto rows = daafd::run_verification(ncases, seed, inject_fault != 0);
    *csv_out = dup_string(daafd::verify_csv(rows));
    *all_pass_out = daafd::all_pass(rows) ? 1 : 0;
  });
}

daafd_status daafd_infprod(const char* points_json, const char* z_json, int m_max,
                           char** csv_out) {
  if (!points_json || !z_json || !csv_out) return fail(DAAFD_ERR_INVALID, "null argument");
  return guarded([&] {
    auto pts = daafd::points_from_json(points_json);
    daafd::BallPoint z = daafd::z_from_json(z_json);
    if (m_max < 1 || m_max > static_cast<int>(pts.size()))
      throw std::invalid_argument("m_max out of range for the given points");
    auto seq = daafd::NormalizedFactorSeq::from_points(pts);
    auto rep = daafd::convergence_report(seq, z, m_max);
    *csv_out = dup_string(daafd::infprod_csv(rep));
  });
}

}  // extern "C"
