/* Copyright 2026 The equitensor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: `equitensor <command> ...`; run with --help for the list.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "equitensor/clebsch_gordan.hpp"
#include "equitensor/harness.hpp"
#include "equitensor/o3.hpp"
#include "equitensor/reduced_tensor_product.hpp"
#include "equitensor/s2grid.hpp"
#include "equitensor/spherical_harmonics.hpp"
#include "equitensor/tensor_product.hpp"

using namespace equitensor;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct Globals {
  std::uint64_t seed = 0;
  double tol = -1.0;  // negative: command default
  bool json = false;

  double tolerance(double fallback) const { return tol >= 0.0 ? tol : fallback; }
};

double clean(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", clean(v));
  return buf;
}

std::string join(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + num(v[i]);
  return out;
}

// JSON numbers carry the same 12 significant digits as the text output.
double rounded(double v) { return std::strtod(num(v).c_str(), nullptr); }

json to_array(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(rounded(v[i]));
  return a;
}

json to_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_array(m.row(r).transpose()));
  return rows;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_triple(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument(std::string(what) + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.size() != 3) throw std::invalid_argument(std::string(what) + " needs three comma-separated numbers");
  return out;
}

// ---------------------------------------------------------------------------

int cmd_reduce(const Globals& g, const std::string& formula, const std::vector<std::string>& indices,
               bool basis) {
  std::map<char, Irreps> assignment;
  for (const auto& item : indices) {
    const auto eq = item.find('=');
    if (eq != 1) throw std::invalid_argument("index assignment '" + item + "' must look like i=1o");
    assignment[item[0]] = Irreps::parse(item.substr(2));
  }
  const ReducedBasis r = reduce(formula, assignment);
  if (g.json) {
    json j{{"formula", formula}, {"irreps_out", r.irreps_out.str()}, {"dim", r.irreps_out.dim()}};
    if (basis) j["Q"] = to_rows(r.Q);
    print_json(j);
    return kOk;
  }
  std::cout << r.irreps_out.str() << "\n";
  if (basis) {
    for (Eigen::Index row = 0; row < r.Q.rows(); ++row) std::cout << join(r.Q.row(row).transpose()) << "\n";
  }
  return kOk;
}

int cmd_cg(const Globals& g, int l1, int l2, int l3) {
  const auto entries = cg_entries(l1, l2, l3);
  if (g.json) {
    json rows = json::array();
    for (const auto& e : entries) rows.push_back({e.i, e.j, e.k, rounded(e.value)});
    print_json({{"l1", l1}, {"l2", l2}, {"l3", l3}, {"entries", rows}});
    return kOk;
  }
  for (const auto& e : entries) std::cout << e.i << " " << e.j << " " << e.k << " " << num(e.value) << "\n";
  return kOk;
}

int cmd_sh(const Globals& g, int lmax, const std::string& point, bool no_normalize, const std::string& norm) {
  if (lmax < 0) throw std::invalid_argument("lmax must be non-negative");
  const auto p = parse_triple(point, "--point");
  const Vector y = spherical_harmonics_point(lmax, Eigen::Vector3d(p[0], p[1], p[2]), !no_normalize,
                                             parse_sh_normalization(norm));
  if (g.json) {
    json blocks = json::array();
    for (int l = 0; l <= lmax; ++l) blocks.push_back(to_array(y.segment(l * l, 2 * l + 1)));
    print_json({{"lmax", lmax}, {"normalization", norm}, {"normalize", !no_normalize}, {"values", blocks}});
    return kOk;
  }
  for (int l = 0; l <= lmax; ++l) std::cout << "l=" << l << ": " << join(y.segment(l * l, 2 * l + 1)) << "\n";
  return kOk;
}

int cmd_wigner(const Globals& g, int l, const std::string& angles) {
  if (l < 0) throw std::invalid_argument("l must be non-negative");
  const auto a = parse_triple(angles, "--angles");
  const Matrix d = wigner_d(l, {a[0], a[1], a[2]});
  if (g.json) {
    print_json({{"l", l}, {"angles", a}, {"D", to_rows(d)}});
    return kOk;
  }
  for (Eigen::Index r = 0; r < d.rows(); ++r) std::cout << join(d.row(r).transpose()) << "\n";
  return kOk;
}

int cmd_tp_info(const Globals& g, const std::string& path) {
  const TensorProductSpec tp = tensor_product_from_json(read_file(path));
  if (g.json) {
    json j = json::parse(to_json(tp));
    j["num_paths"] = tp.instructions().size();
    j["weight_numel"] = tp.weight_numel();
    j["warnings"] = tp.warnings();
    print_json(j);
    return kOk;
  }
  std::cout << tp.describe();
  if (!tp.describe().empty() && tp.describe().back() != '\n') std::cout << "\n";
  for (const auto& w : tp.warnings()) std::cerr << "warning: " << w << "\n";
  return kOk;
}

EquivarianceReport run_tp_check(const TensorProductSpec& tp, const Globals& g, int trials, double tol) {
  std::mt19937_64 rng(g.seed);
  const Vector w = random_normal(tp.weight_numel(), rng);
  const EquivariantFn f = [&](const std::vector<Vector>& x) { return tp.evaluate(w, x[0], x[1]); };
  return check_equivariance(f, {tp.irreps_in1(), tp.irreps_in2()}, tp.irreps_out(), trials, tol, g.seed);
}

int report(const Globals& g, const EquivarianceReport& r, const std::string& what) {
  if (g.json) {
    json per_trial = json::array();
    for (const auto& t : r.trials) per_trial.push_back(t.residual);
    print_json({{"function", what},
                {"passed", r.passed()},
                {"max_residual", r.max_residual},
                {"tol", r.tol},
                {"worst_trial", r.worst_trial},
                {"residuals", per_trial}});
  } else {
    std::cout << what << ": " << r.summary() << "\n";
  }
  return r.passed() ? kOk : kVerificationFailed;
}

int cmd_tp_check(const Globals& g, const std::string& path, int trials) {
  if (trials < 1) throw std::invalid_argument("--trials must be positive");
  const TensorProductSpec tp = tensor_product_from_json(read_file(path));
  return report(g, run_tp_check(tp, g, trials, g.tolerance(1e-9)), "tensor_product");
}

int cmd_s2_roundtrip(const Globals& g, int lmax, int res_beta, int res_alpha) {
  const S2Grid grid(res_beta, res_alpha, lmax);
  std::mt19937_64 rng(g.seed);
  const S2Signal s{lmax, random_normal((lmax + 1) * (lmax + 1), rng)};
  const Matrix f = to_grid(s, grid);
  const double err = (from_grid(f, grid, lmax).coeffs - s.coeffs).cwiseAbs().maxCoeff();
  const double parseval = std::abs(grid.integrate(f.cwiseProduct(f)) - s.coeffs.squaredNorm());
  const double tol = g.tolerance(1e-9);
  const bool ok = err < tol;
  if (g.json) {
    print_json({{"L", lmax}, {"res_beta", res_beta}, {"res_alpha", res_alpha}, {"max_roundtrip_error", err},
                {"parseval_residual", parseval}, {"tol", tol}, {"passed", ok}});
  } else {
    std::cout << "max round-trip error: " << num(err) << "\n";
    std::cout << "parseval residual: " << num(parseval) << "\n";
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_check_equivariance(const Globals& g, const std::string& path, int trials) {
  if (trials < 1) throw std::invalid_argument("--trials must be positive");
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  const std::string fn = j.value("function", "tensor_product");
  const double tol = g.tolerance(j.value("tol", fn == "polynomial" ? 1e-6 : 1e-9));
  if (fn == "tensor_product") {
    return report(g, run_tp_check(tensor_product_from_json(text), g, trials, tol), fn);
  }
  if (fn == "spherical_harmonics") {
    const int lmax = j.value("lmax", 4);
    if (lmax < 0) throw std::invalid_argument("lmax must be non-negative");
    const bool normalize = j.value("normalize", true);
    const auto norm = parse_sh_normalization(j.value("normalization", std::string("norm")));
    const EquivariantFn f = [&](const std::vector<Vector>& x) {
      return spherical_harmonics_point(lmax, Eigen::Vector3d(x[0]), normalize, norm);
    };
    return report(g, check_equivariance(f, {Irreps("1o")}, Irreps::spherical_harmonics(lmax), trials, tol, g.seed), fn);
  }
  if (fn == "polynomial") {
    const Polynomial poly(Irreps::parse(j.value("irreps_out", std::string("0e+1o"))));
    const int n = j.value("num_points", 10);
    if (n < 1) throw std::invalid_argument("num_points must be positive");
    const double max_radius = j.value("max_radius", 2.0);
    const double num_neigh = j.value("num_neigh", 3.0);
    const bool broken = j.value("break_equivariance", false);
    std::mt19937_64 rng(g.seed);
    const Vector w = random_normal(poly.weight_numel(), rng);
    const auto squash = [](const Vector3& v) { return Vector3(v.x(), 1.5 * v.y(), v.z()); };
    const EquivariantFn f = [&](const std::vector<Vector>& x) {
      Eigen::MatrixX3d pos(n, 3);
      for (int i = 0; i < n; ++i) pos.row(i) = x[0].segment(3 * i, 3).transpose();
      return broken ? poly.forward(pos, max_radius, num_neigh, n, w, squash)
                    : poly.forward(pos, max_radius, num_neigh, n, w);
    };
    const Irreps cloud({MulIrrep{n, Irrep(1, -1)}});
    return report(g, check_equivariance(f, {cloud}, poly.irreps_out(), trials, tol, g.seed), fn);
  }
  throw std::invalid_argument("unknown function '" + fn + "', expected tensor_product, spherical_harmonics or polynomial");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equitensor: O(3)-equivariant tensor algebra"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance for verification commands");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::function<int()> run;

  auto* reduce_cmd = app.add_subcommand("reduce", "Decompose a tensor with index symmetries into irreps");
  std::string formula;
  std::vector<std::string> indices;
  bool basis = false;
  reduce_cmd->add_option("formula", formula, "Index formula, e.g. ij=-ji")->required();
  reduce_cmd->add_option("-i,--index", indices, "Index irreps, e.g. i=1o (repeatable)")->required();
  reduce_cmd->add_flag("--basis", basis, "Print the rows of Q");
  reduce_cmd->callback([&] { run = [&] { return cmd_reduce(g, formula, indices, basis); }; });

  auto* cg_cmd = app.add_subcommand("cg", "Print the nonzero real Clebsch-Gordan entries i j k value");
  int l1 = 0, l2 = 0, l3 = 0;
  cg_cmd->add_option("l1", l1)->required();
  cg_cmd->add_option("l2", l2)->required();
  cg_cmd->add_option("l3", l3)->required();
  cg_cmd->callback([&] { run = [&] { return cmd_cg(g, l1, l2, l3); }; });

  auto* sh_cmd = app.add_subcommand("sh", "Evaluate spherical harmonics at a point");
  int lmax = 0;
  std::string point, normalization = "norm";
  bool no_normalize = false;
  sh_cmd->add_option("--lmax", lmax)->required();
  sh_cmd->add_option("--point", point, "x,y,z")->required();
  sh_cmd->add_flag("--no-normalize", no_normalize, "Evaluate the polynomials without projecting to the sphere");
  sh_cmd->add_option("--normalization", normalization, "norm, component or integral")->capture_default_str();
  sh_cmd->callback([&] { run = [&] { return cmd_sh(g, lmax, point, no_normalize, normalization); }; });

  auto* wigner_cmd = app.add_subcommand("wigner", "Print the real Wigner D matrix");
  int l = 0;
  std::string angles;
  wigner_cmd->add_option("--l", l)->required();
  wigner_cmd->add_option("--angles", angles, "alpha,beta,gamma (Y-X-Y)")->required();
  wigner_cmd->callback([&] { run = [&] { return cmd_wigner(g, l, angles); }; });

  auto* info_cmd = app.add_subcommand("tp-info", "Print the path table of a tensor product spec");
  std::string spec_path;
  info_cmd->add_option("spec", spec_path, "JSON spec file, - for stdin")->required();
  info_cmd->callback([&] { run = [&] { return cmd_tp_info(g, spec_path); }; });

  int trials = 20;
  auto* check_cmd = app.add_subcommand("tp-check", "Run the equivariance check on a tensor product spec");
  check_cmd->add_option("spec", spec_path, "JSON spec file, - for stdin")->required();
  check_cmd->add_option("--trials", trials)->capture_default_str();
  check_cmd->add_option("--tol", g.tol, "Tolerance");
  check_cmd->callback([&] { run = [&] { return cmd_tp_check(g, spec_path, trials); }; });

  auto* s2_cmd = app.add_subcommand("s2", "Sphere grid transforms");
  s2_cmd->require_subcommand(1);
  auto* roundtrip = s2_cmd->add_subcommand("roundtrip", "from_grid(to_grid(v)) for a random band-limited v");
  int band = 5, res_beta = 0, res_alpha = 0;
  roundtrip->add_option("--L", band)->capture_default_str();
  roundtrip->add_option("--res-beta", res_beta)->required();
  roundtrip->add_option("--res-alpha", res_alpha)->required();
  roundtrip->callback([&] { run = [&] { return cmd_s2_roundtrip(g, band, res_beta, res_alpha); }; });

  auto* equi_cmd = app.add_subcommand("check-equivariance", "Equivariance harness on a JSON-described function");
  equi_cmd->add_option("spec", spec_path, "JSON file, - for stdin")->required();
  equi_cmd->add_option("--trials", trials)->capture_default_str();
  equi_cmd->add_option("--tol", g.tol, "Tolerance");
  equi_cmd->callback([&] { run = [&] { return cmd_check_equivariance(g, spec_path, trials); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
