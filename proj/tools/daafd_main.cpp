// Command-line front end. Talks to the library exclusively through the C API
// in daafd.h: files in, files out, deterministic for a fixed seed.
//
// Exit codes: 0 success, 1 parse/validation failure, 2 division abort.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "daafd.h"

namespace {

int status_to_exit(daafd_status st) {
  switch (st) {
    case DAAFD_OK:
      return 0;
    case DAAFD_ERR_DIVISION:
      return 2;
    default:
      return 1;
  }
}

int report_failure(const char* what, daafd_status st) {
  std::cerr << "error: " << what << ": " << daafd_last_error() << "\n";
  return status_to_exit(st);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { daafd_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("DAAFD_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 0;  // leave the config value alone
}

int cmd_decompose(const std::string& input_path, const std::string& config_path,
                  const std::string& out_path, const std::string& energies_path,
                  const std::string& replay_path, long long seed, int threads) {
  std::string input_text;
  if (!read_file(input_path, input_text)) {
    std::cerr << "error: cannot read " << input_path << "\n";
    return 1;
  }

  daafd_series* series = nullptr;
  daafd_status st = daafd_series_parse(input_text.c_str(), &series);
  if (st != DAAFD_OK) return report_failure(input_path.c_str(), st);

  daafd_config* config = nullptr;
  if (!config_path.empty()) {
    std::string config_text;
    if (!read_file(config_path, config_text)) {
      std::cerr << "error: cannot read " << config_path << "\n";
      daafd_series_free(series);
      return 1;
    }
    st = daafd_config_parse(config_text.c_str(), &config);
  } else {
    st = daafd_config_default(&config);
  }
  if (st != DAAFD_OK) {
    daafd_series_free(series);
    return report_failure("config", st);
  }
  if (seed >= 0) daafd_config_set_seed(config, static_cast<unsigned long long>(seed));
  int t = resolve_threads(threads);
  if (t > 0) daafd_config_set_threads(config, t);

  daafd_report* report = nullptr;
  if (!replay_path.empty()) {
    std::string recorded;
    if (!read_file(replay_path, recorded)) {
      std::cerr << "error: cannot read " << replay_path << "\n";
      daafd_config_free(config);
      daafd_series_free(series);
      return 1;
    }
    st = daafd_decompose_replay(series, config, recorded.c_str(), &report);
  } else {
    st = daafd_decompose(series, config, &report);
  }
  daafd_config_free(config);
  daafd_series_free(series);
  if (st != DAAFD_OK) return report_failure("decompose", st);

  int rc = 0;
  if (!out_path.empty()) {
    OwnedString json;
    st = daafd_report_to_json(report, &json.p);
    if (st != DAAFD_OK || !write_file(out_path, json.str())) {
      std::cerr << "error: cannot write " << out_path << "\n";
      rc = 1;
    }
  }
  if (rc == 0 && !energies_path.empty()) {
    OwnedString csv;
    st = daafd_report_energies_csv(report, &csv.p);
    if (st != DAAFD_OK || !write_file(energies_path, csv.str())) {
      std::cerr << "error: cannot write " << energies_path << "\n";
      rc = 1;
    }
  }
  if (rc == 0)
    std::cout << "decompose: " << daafd_report_step_count(report) << " steps\n";
  daafd_report_free(report);
  return rc;
}

int cmd_interp(const std::string& points_path, const std::string& out_path) {
  std::string problem;
  if (!read_file(points_path, problem)) {
    std::cerr << "error: cannot read " << points_path << "\n";
    return 1;
  }
  OwnedString chain;
  daafd_status st = daafd_interp(problem.c_str(), &chain.p);
  if (st != DAAFD_OK) return report_failure("interp", st);
  if (out_path.empty()) {
    std::cout << chain.str();
    return 0;
  }
  if (!write_file(out_path, chain.str())) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(int ncases, long long seed, bool inject_fault, const std::string& out_path) {
  OwnedString csv;
  int all_pass = 0;
  daafd_status st = daafd_verify(ncases, seed < 0 ? 42ull : static_cast<unsigned long long>(seed),
                                 inject_fault ? 1 : 0, &csv.p, &all_pass);
  if (st != DAAFD_OK) return report_failure("verify", st);
  if (out_path.empty()) {
    std::cout << csv.str();
  } else if (!write_file(out_path, csv.str())) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  if (!all_pass) {
    std::cerr << "verify: residuals above tolerance\n";
    return 1;
  }
  return 0;
}

int cmd_infprod(const std::string& points_path, const std::string& z_path, int m_max,
                const std::string& out_path) {
  std::string points, zpt;
  if (!read_file(points_path, points)) {
    std::cerr << "error: cannot read " << points_path << "\n";
    return 1;
  }
  if (!read_file(z_path, zpt)) {
    std::cerr << "error: cannot read " << z_path << "\n";
    return 1;
  }
  OwnedString csv;
  daafd_status st = daafd_infprod(points.c_str(), zpt.c_str(), m_max, &csv.p);
  if (st != DAAFD_OK) return report_failure("infprod", st);
  if (out_path.empty()) {
    std::cout << csv.str();
    return 0;
  }
  if (!write_file(out_path, csv.str())) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive Blaschke-product decomposition in the unit ball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(daafd_version()));

  // decompose
  auto* dec = app.add_subcommand("decompose", "decompose a function spec into Blaschke terms");
  std::string input, config, out, energies, replay;
  long long seed = -1;
  int threads = 0;
  dec->add_option("--input", input, "function spec JSON")->required();
  dec->add_option("--config", config, "run configuration JSON");
  dec->add_option("--out", out, "report JSON output path");
  dec->add_option("--energies", energies, "per-step energies CSV output path");
  dec->add_option("--replay", replay, "re-run the steps of a recorded report");
  dec->add_option("--seed", seed, "override the RNG seed");
  dec->add_option("--threads", threads, "worker threads (or env DAAFD_THREADS)");

  // interp
  auto* itp = app.add_subcommand("interp", "build an interpolating Blaschke chain");
  std::string itp_points, itp_out;
  itp->add_option("--points", itp_points, "interpolation problem JSON")->required();
  itp->add_option("--out", itp_out, "chain JSON output path");

  // verify
  auto* ver = app.add_subcommand("verify", "run the randomized property suites");
  int ncases = 1000;
  long long ver_seed = -1;
  bool inject_fault = false;
  std::string ver_out;
  ver->add_option("--ncases", ncases, "samples per check");
  ver->add_option("--seed", ver_seed, "RNG seed");
  ver->add_option("--out", ver_out, "residual table CSV output path");
  ver->add_flag("--inject-fault", inject_fault, "negative control: force failures")
      ->group("");  // test hook, hidden from help

  // infprod
  auto* inf = app.add_subcommand("infprod", "partial-product convergence diagnostics");
  std::string inf_points, inf_z, inf_out;
  int m_max = 0;
  inf->add_option("--points", inf_points, "point sequence JSON")->required();
  inf->add_option("--z", inf_z, "evaluation point JSON")->required();
  inf->add_option("--m-max", m_max, "number of partial products")->required();
  inf->add_option("--out", inf_out, "diagnostics CSV output path");

  CLI11_PARSE(app, argc, argv);

  if (dec->parsed()) return cmd_decompose(input, config, out, energies, replay, seed, threads);
  if (itp->parsed()) return cmd_interp(itp_points, itp_out);
  if (ver->parsed()) return cmd_verify(ncases, ver_seed, inject_fault, ver_out);
  if (inf->parsed()) return cmd_infprod(inf_points, inf_z, m_max, inf_out);
  return 1;
}
