// crawford: distance from a point to the numerical range of a matrix.
//
//   crawford chi    <matrix.json> [--center c] [--eps e] [--method sdp|oracle|both] [--json]
//   crawford export <matrix.json> --out file.dat-s [--center c]
//   crawford range  <matrix.json> [--samples m] [--out file.csv] [--svg file.svg] [--center c]
//   crawford verify <matrix.json> [--center c] [--eps e] [--seed s] [--json]
//
// Exit codes: 0 success, 2 parse/usage error, 3 solver failure, 4 I/O error,
// 5 invariant violation (verify).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crawford/crawford.hpp"
#include "crawford/matrix_io.hpp"
#include "crawford/sdpa.hpp"
#include "crawford/verify.hpp"

namespace {

using namespace crawford;

enum Exit { kOk = 0, kParse = 2, kSolver = 3, kIo = 4, kInvariant = 5 };

struct Config {
  std::string matrix_path;
  std::string center = "0";
  double epsilon = 1e-6;
  std::string method = "sdp";
  bool json = false;
  std::string out;
  std::string svg;
  std::size_t samples = 360;
  std::uint64_t seed = 42;
  bool rotate = false;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Method parse_method(const std::string& s) {
  static const std::map<std::string, Method> table{
      {"sdp", Method::SdpEllipsoid}, {"oracle", Method::OracleSweep}, {"both", Method::Both}};
  auto it = table.find(s);
  if (it == table.end()) throw ParseError("unknown method '" + s + "'");
  return it->second;
}

void check_epsilon(double eps) {
  if (!(eps > 0 && eps < 1)) throw ParseError("--eps must lie in (0, 1)");
}

int cmd_chi(const Config& cfg) {
  check_epsilon(cfg.epsilon);
  const ComplexMatrix C = read_matrix_json(cfg.matrix_path);
  CrawfordQuery q{C, GaussianRational::parse(cfg.center), cfg.epsilon, parse_method(cfg.method), cfg.rotate};
  const auto r = crawford_number(q);
  const std::size_t iterations = r.solver ? r.solver->iterations : 0;
  if (cfg.json) {
    nlohmann::ordered_json j;
    j["chi"] = r.chi;
    j["z"] = {r.nearest_point.real(), r.nearest_point.imag()};
    j["iterations"] = iterations;
    j["method"] = method_name(r.method_used);
    j["epsilon"] = cfg.epsilon;
    std::cout << j.dump() << '\n';
    return kOk;
  }
  std::cout << "chi = " << num(r.chi) << '\n';
  if (r.zero_shortcut) {
    std::cout << "note: C - cI is the zero matrix, chi = 0 without solving\n";
    return kOk;
  }
  std::cout << "nearest point = " << num(r.nearest_point.real()) << (r.nearest_point.imag() < 0 ? " - " : " + ")
            << num(std::abs(r.nearest_point.imag())) << "i\n";
  std::cout << "method = " << method_name(r.method_used) << '\n';
  if (r.solver) {
    std::cout << "scale factor = " << r.scale_factor << '\n';
    std::cout << "frobenius ceiling = " << r.frob_ceiling << '\n';
    std::cout << "iterations = " << r.solver->iterations << " (feasibility cuts " << r.solver->cuts_feasibility
              << ", objective cuts " << r.solver->cuts_objective << ", chart dimension "
              << r.solver->chart_dimension << ")\n";
  }
  if (r.oracle_chi) std::cout << "oracle chi = " << num(*r.oracle_chi) << '\n';
  if (r.discrepancy) std::cout << "discrepancy = " << num(*r.discrepancy) << '\n';
  return kOk;
}

int cmd_export(const Config& cfg) {
  if (cfg.out.empty()) throw ParseError("export requires --out");
  const ComplexMatrix C = read_matrix_json(cfg.matrix_path);
  const ComplexMatrix T = C - GaussianRational::parse(cfg.center) * ComplexMatrix::identity(C.size());
  if (T.is_zero()) throw ParseError("the translated matrix is zero; chi = 0 and there is no SDP to export");
  auto [scaled, ell] = clear_denominators(T);
  const auto inst = build_instance(hermitian_split(scaled), frobenius_ceiling(scaled));
  export_sdpa(inst, cfg.out);
  std::cout << "N = " << inst.N << '\n'
            << "mDIM = " << inst.constraints.size() << '\n'
            << "blocks = " << 2 * inst.n << " 2 1\n"
            << "b = 0 (x" << inst.N + 2 << "), " << inst.rhs[inst.N + 2] << ", " << inst.rhs[inst.N + 3] << '\n'
            << "scale factor = " << ell << '\n';
  return kOk;
}

int cmd_range(const Config& cfg) {
  if (cfg.samples < 3) throw ParseError("--samples must be at least 3");
  const ComplexMatrix C = read_matrix_json(cfg.matrix_path);
  const ComplexMatrix T = C - GaussianRational::parse(cfg.center) * ComplexMatrix::identity(C.size());
  const auto samples = sample_boundary(T.to_double(), cfg.samples);
  const std::size_t best = min_modulus_index(samples);
  if (cfg.out.empty()) {
    write_boundary_csv(std::cout, samples);
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
    write_boundary_csv(f, samples);
    if (!f) throw IoError("write failed for '" + cfg.out + "'");
    std::cout << "samples = " << samples.size() << '\n'
              << "min |z| = " << num(std::abs(samples[best].z)) << " at theta = " << num(samples[best].theta) << '\n';
  }
  if (!cfg.svg.empty()) {
    std::ofstream f(cfg.svg);
    if (!f) throw IoError("cannot open '" + cfg.svg + "' for writing");
    write_boundary_svg(f, samples, samples[best].z);
    if (!f) throw IoError("write failed for '" + cfg.svg + "'");
  }
  return kOk;
}

int cmd_verify(const Config& cfg) {
  check_epsilon(cfg.epsilon);
  const ComplexMatrix C = read_matrix_json(cfg.matrix_path);
  const auto rep = verify_matrix(C, GaussianRational::parse(cfg.center), cfg.epsilon, cfg.seed);
  if (cfg.json) {
    nlohmann::ordered_json j;
    j["sdp_chi"] = rep.sdp_chi;
    j["oracle_chi"] = rep.oracle_chi;
    j["difference"] = std::abs(rep.sdp_chi - rep.oracle_chi);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "sdp chi = " << num(rep.sdp_chi) << '\n'
              << "oracle chi = " << num(rep.oracle_chi) << '\n'
              << "difference = " << num(std::abs(rep.sdp_chi - rep.oracle_chi)) << '\n';
    for (const auto& c : rep.checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  if (rep.all_passed()) return kOk;
  for (const auto& c : rep.checks)
    if (!c.passed) std::cerr << "invariant violated: " << c.name << '\n';
  return kInvariant;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crawford number: distance from a point to the numerical range of a complex matrix"};
  app.require_subcommand(1);
  Config cfg;

  auto add_matrix = [&](CLI::App* sub) { sub->add_option("matrix", cfg.matrix_path, "matrix JSON file")->required(); };
  auto add_center = [&](CLI::App* sub) {
    sub->add_option("--center", cfg.center, "Gaussian-rational point c, e.g. \"-3-i\" or \"1/2+2/3i\"");
  };

  auto* chi = app.add_subcommand("chi", "compute chi(c, C)");
  add_matrix(chi);
  add_center(chi);
  chi->add_option("--eps", cfg.epsilon, "absolute accuracy");
  chi->add_option("--method", cfg.method, "sdp | oracle | both");
  chi->add_flag("--json", cfg.json, "machine-readable output");
  chi->add_flag("--rotate", cfg.rotate, "precondition by a Gaussian integer of argument close to -arg tr C");

  auto* exp = app.add_subcommand("export", "write the SDP instance in SDPA sparse format");
  add_matrix(exp);
  add_center(exp);
  exp->add_option("--out", cfg.out, "output .dat-s path")->required();

  auto* range = app.add_subcommand("range", "sample the boundary of the numerical range");
  add_matrix(range);
  add_center(range);
  range->add_option("--samples", cfg.samples, "number of directions");
  range->add_option("--out", cfg.out, "CSV output path (stdout if omitted)");
  range->add_option("--svg", cfg.svg, "SVG output path");

  auto* verify = app.add_subcommand("verify", "cross-check both routes and the invariant suite");
  add_matrix(verify);
  add_center(verify);
  verify->add_option("--eps", cfg.epsilon, "accuracy for both routes");
  verify->add_option("--seed", cfg.seed, "seed for randomized checks");
  verify->add_flag("--json", cfg.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (chi->parsed()) return cmd_chi(cfg);
    if (exp->parsed()) return cmd_export(cfg);
    if (range->parsed()) return cmd_range(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  }
  return kParse;
}
