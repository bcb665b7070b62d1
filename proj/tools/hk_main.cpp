// hk: spherical harmonic analysis on compact symmetric spaces with even
// multiplicities.  Commands: space describe, specfunc eval|dim|cfun,
// fourier forward|inverse|extend|type|synth, wave run|huygens|expcheck,
// selftest.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hk/acceptance.hpp"
#include "hk/fourier.hpp"
#include "hk/presets.hpp"
#include "hk/wave.hpp"

using json = nlohmann::ordered_json;

namespace hk {
namespace {

constexpr const char* kVersion = "1.0.0";

struct CommonFlags {
  std::string preset;
  std::string config_file;
  std::string out;
  std::string format = "csv";
  int grid = 0;
  double cutoff = -1.0;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& cf, bool needs_space = true) {
  if (needs_space) {
    cmd->add_option("--preset", cf.preset, "preset name: s3,s5,s7,su2,su3");
    cmd->add_option("--config", cf.config_file, "space configuration JSON file");
  }
  cmd->add_option("--out", cf.out, "output file (default: stdout)");
  cmd->add_option("--format", cf.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--grid", cf.grid, "grid size per torus dimension");
  cmd->add_option("--cutoff", cf.cutoff, "spectral cutoff ||mu|| <= cutoff");
  cmd->add_option("--threads", cf.threads, "worker threads (default: HK_THREADS or hardware)");
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SpaceConfig resolve_config(const CommonFlags& cf) {
  if (!cf.preset.empty() && !cf.config_file.empty())
    throw UsageError("give either --preset or --config, not both");
  SpaceConfig cfg;
  if (!cf.preset.empty()) {
    cfg = preset_config(cf.preset, cf.grid);
  } else if (!cf.config_file.empty()) {
    std::ifstream in(cf.config_file);
    if (!in) throw UsageError("cannot open config file: " + cf.config_file);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = parse_config_json(ss.str());
    if (cf.grid > 0) cfg.grid_size = cf.grid;
  } else {
    throw UsageError("a space is required: pass --preset or --config");
  }
  return cfg;
}

json config_json(const SpaceConfig& cfg) {
  json j;
  j["family"] = family_name(cfg.family);
  j["m"] = cfg.m;
  j["root_type"] = root_type_name(cfg.root_type);
  j["rank"] = cfg.rank;
  j["grid_size"] = cfg.grid_size;
  if (!cfg.preset_name.empty()) j["preset"] = cfg.preset_name;
  return j;
}

// Deterministic FNV-1a hash of the resolved configuration.
std::string config_hash(const json& cfg) {
  const std::string s = cfg.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Emitter {
  std::string command;
  json manifest_params;
  json space_cfg;  // empty when the command has no space
  std::string out_path;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write(const std::string& content) const {
    std::vector<std::string> files;
    if (out_path.empty()) {
      std::cout << content;
      if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw UsageError("cannot write output file: " + out_path);
      f << content;
      files.push_back(out_path);
      // the run manifest accompanies every file output
      json man;
      man["command"] = command;
      man["version"] = kVersion;
      if (!space_cfg.empty()) {
        man["config"] = space_cfg;
        man["config_hash"] = config_hash(space_cfg);
      }
      man["parameters"] = manifest_params;
      man["wall_clock_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const std::string man_path = out_path + ".manifest.json";
      files.push_back(man_path);
      man["outputs"] = files;
      std::ofstream mf(man_path, std::ios::binary);
      mf << man.dump(2) << '\n';
    }
  }
};

std::string g17(double x) { return format_g17(x); }

json jnum(double x) {
  // emit round-trip-safe numbers through the json serializer
  return json(x);
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (...) {
      throw UsageError("cannot parse number: " + item);
    }
  }
  return vals;
}

SpectralParameter parse_lambda(const std::string& text, int rank) {
  const std::vector<double> v = parse_reals(text);
  if (static_cast<int>(v.size()) != 2 * rank)
    throw UsageError("--lambda needs " + std::to_string(2 * rank) +
                     " comma-separated reals (re,im per coordinate)");
  CVec c(rank);
  for (int a = 0; a < rank; ++a) c[a] = cplx(v[2 * a], v[2 * a + 1]);
  return SpectralParameter(c);
}

DominantWeight weight_from_ints(const SymmetricSpaceData& data, const std::vector<int>& mu) {
  if (static_cast<int>(mu.size()) != data.rank)
    throw UsageError("--mu needs " + std::to_string(data.rank) + " integers");
  DominantWeight w;
  w.lattice_coords = IVec(data.rank);
  for (int a = 0; a < data.rank; ++a) w.lattice_coords[a] = mu[a];
  w.coords = data.lattice_basis * w.lattice_coords.cast<double>();
  w.norm = w.coords.norm();
  if (!dominant_spherical(SpectralParameter::real(w.coords), data))
    throw UsageError("--mu is not a dominant spherical weight");
  return w;
}

// ------------------------------------------------------------ commands ----

int cmd_space_describe(const CommonFlags& cf, Emitter& em) {
  const SpaceConfig cfg = resolve_config(cf);
  const SymmetricSpaceData data = build_space(cfg);
  json j = config_json(cfg);
  j["rank"] = data.rank;
  j["m"] = data.m;
  j["multiplicity"] = 2 * data.m;
  j["dim_space"] = data.dim_space;
  j["weyl_order"] = data.weyl_order();
  j["r_small"] = jnum(data.r_small);
  j["rho"] = json::array();
  for (int a = 0; a < data.rank; ++a) j["rho"].push_back(jnum(data.rho[a]));
  j["rho_alpha_simple"] = json::array();
  for (const Vec& al : data.simple_roots)
    j["rho_alpha_simple"].push_back(jnum(std::real(lambda_alpha(SpectralParameter::real(data.rho), al))));
  j["positive_roots"] = json::array();
  for (const Vec& al : data.positive_roots) {
    json row = json::array();
    for (int a = 0; a < data.rank; ++a) row.push_back(jnum(al[a]));
    j["positive_roots"].push_back(row);
  }
  if (cf.format == "csv") {
    std::string s = "key,value\n";
    s += csv_join({"family", family_name(cfg.family)});
    s += csv_join({"rank", std::to_string(data.rank)});
    s += csv_join({"m", std::to_string(data.m)});
    s += csv_join({"multiplicity", std::to_string(2 * data.m)});
    s += csv_join({"dim_space", std::to_string(data.dim_space)});
    s += csv_join({"weyl_order", std::to_string(data.weyl_order())});
    s += csv_join({"r_small", g17(data.r_small)});
    s += csv_join({"grid_size", std::to_string(cfg.grid_size)});
    em.write(s);
  } else {
    em.write(j.dump(2));
  }
  return 0;
}

int cmd_specfunc_eval(const CommonFlags& cf, const std::vector<int>& mu,
                      const std::string& theta_str, int theta_grid, Emitter& em) {
  const SymmetricSpaceData data = build_space(resolve_config(cf));
  const ShiftOperator D = build_shift_operator(data);
  const DominantWeight w = weight_from_ints(data, mu);
  if (!theta_str.empty()) {
    const std::vector<double> th = parse_reals(theta_str);
    if (static_cast<int>(th.size()) != data.rank)
      throw UsageError("--theta needs " + std::to_string(data.rank) + " reals");
    Vec theta(data.rank);
    for (int a = 0; a < data.rank; ++a) theta[a] = th[a];
    const Vec x = data.period_basis.inverse() * theta;
    const cplx psi = spherical_function(data, D, w.spectral(), x);
    const cplx orc = spherical_oracle(data, w.spectral(), x);
    if (cf.format == "json") {
      json j;
      j["psi_re"] = jnum(psi.real());
      j["psi_im"] = jnum(psi.imag());
      j["oracle_re"] = jnum(orc.real());
      j["oracle_im"] = jnum(orc.imag());
      j["abs_err"] = jnum(std::abs(psi - orc));
      em.write(j.dump(2));
    } else {
      std::string s = "psi_re,psi_im,oracle_re,oracle_im,abs_err\n";
      s += csv_join({g17(psi.real()), g17(psi.imag()), g17(orc.real()), g17(orc.imag()),
                     g17(std::abs(psi - orc))});
      em.write(s);
    }
    return 0;
  }
  const int g = theta_grid > 0 ? theta_grid : (cf.grid > 0 ? cf.grid : 128);
  const TorusGrid grid = make_grid(data, g);
  std::string s = data.rank == 1 ? "theta,psi_re,psi_im,oracle_re,oracle_im,abs_err\n"
                                 : "theta_0,theta_1,psi_re,psi_im,oracle_re,oracle_im,abs_err\n";
  json rows = json::array();
  for (long long i = 0; i < grid.count; ++i) {
    const Vec x = grid.node_x(i);
    const Vec theta = torus_theta(data, x);
    const cplx psi = spherical_function(data, D, w.spectral(), x);
    const cplx orc = spherical_oracle(data, w.spectral(), x);
    std::vector<std::string> cells;
    json row;
    row["theta"] = json::array();
    for (int a = 0; a < data.rank; ++a) {
      cells.push_back(g17(theta[a]));
      row["theta"].push_back(jnum(theta[a]));
    }
    for (double v : {psi.real(), psi.imag(), orc.real(), orc.imag(), std::abs(psi - orc)})
      cells.push_back(g17(v));
    row["psi_re"] = jnum(psi.real());
    row["psi_im"] = jnum(psi.imag());
    row["oracle_re"] = jnum(orc.real());
    row["oracle_im"] = jnum(orc.imag());
    row["abs_err"] = jnum(std::abs(psi - orc));
    s += csv_join(cells);
    rows.push_back(row);
  }
  em.write(cf.format == "json" ? rows.dump(2) : s);
  return 0;
}

int cmd_specfunc_dim(const CommonFlags& cf, Emitter& em) {
  const SymmetricSpaceData data = build_space(resolve_config(cf));
  const double cutoff = cf.cutoff > 0 ? cf.cutoff : 8.0;
  std::string s;
  for (int a = 0; a < data.rank; ++a) s += "mu_" + std::to_string(a) + ",";
  s += "dim\n";
  json rows = json::array();
  for (const auto& mu : enumerate_dominant(data, cutoff)) {
    std::vector<std::string> cells;
    json row;
    row["mu"] = json::array();
    for (int a = 0; a < data.rank; ++a) {
      cells.push_back(std::to_string(mu.lattice_coords[a]));
      row["mu"].push_back(mu.lattice_coords[a]);
    }
    const double d = std::real(dimension(data, mu.spectral()));
    cells.push_back(g17(d));
    row["dim"] = jnum(d);
    s += csv_join(cells);
    rows.push_back(row);
  }
  em.write(cf.format == "json" ? rows.dump(2) : s);
  return 0;
}

int cmd_specfunc_cfun(const CommonFlags& cf, const std::string& lambda_str, Emitter& em) {
  const SymmetricSpaceData data = build_space(resolve_config(cf));
  const SpectralParameter lam = parse_lambda(lambda_str, data.rank);
  const CValue c = c_function(data, lam);
  if (cf.format == "json") {
    json j;
    j["c_re"] = jnum(c.value.real());
    j["c_im"] = jnum(c.value.imag());
    j["pole"] = c.pole;
    em.write(j.dump(2));
  } else {
    std::string s = "c_re,c_im,pole\n";
    s += csv_join({g17(c.value.real()), g17(c.value.imag()), c.pole ? "1" : "0"});
    em.write(s);
  }
  return 0;
}

struct FourierSetup {
  SymmetricSpaceData data;
  ShiftOperator D;
  TorusGrid grid;
  RadialFunction f;
  double cutoff = 0.0;
};

FourierSetup fourier_setup(const CommonFlags& cf, double eps, double sharpness) {
  FourierSetup fs{build_space(resolve_config(cf)), {}, {}, {}, 0.0};
  fs.D = build_shift_operator(fs.data);
  fs.grid = make_grid(fs.data, fs.data.config.grid_size);
  if (eps >= fs.data.r_small) throw UsageError("--epsilon must be below r_small of the space");
  fs.f = make_bump(fs.data, fs.grid, eps, sharpness);
  fs.cutoff = cf.cutoff > 0 ? cf.cutoff : fs.grid.g / 4.0;
  return fs;
}

std::string coeffs_csv(const SymmetricSpaceData& data, const SphericalCoefficients& c) {
  std::string s;
  for (int a = 0; a < data.rank; ++a) s += "mu_" + std::to_string(a) + ",";
  s += "re,im\n";
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    std::vector<std::string> cells;
    for (int a = 0; a < data.rank; ++a) cells.push_back(std::to_string(c.weights[i].lattice_coords[a]));
    cells.push_back(g17(c.coeffs[i].real()));
    cells.push_back(g17(c.coeffs[i].imag()));
    s += csv_join(cells);
  }
  return s;
}

json coeffs_json(const SymmetricSpaceData& data, const SphericalCoefficients& c) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    json row;
    row["mu"] = json::array();
    for (int a = 0; a < data.rank; ++a) row["mu"].push_back(c.weights[i].lattice_coords[a]);
    row["re"] = jnum(c.coeffs[i].real());
    row["im"] = jnum(c.coeffs[i].imag());
    rows.push_back(row);
  }
  return rows;
}

int cmd_fourier_forward(const CommonFlags& cf, double eps, double sharpness, Emitter& em) {
  const FourierSetup fs = fourier_setup(cf, eps, sharpness);
  const SphericalCoefficients c =
      forward_transform(fs.data, fs.D, fs.grid, fs.f.values, fs.cutoff);
  em.write(cf.format == "json" ? coeffs_json(fs.data, c).dump(2) : coeffs_csv(fs.data, c));
  return 0;
}

SphericalCoefficients read_coeffs(const SymmetricSpaceData& data, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open coefficients file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError(std::string("malformed coefficients JSON: ") + e.what());
  }
  SphericalCoefficients c;
  for (const auto& row : j) {
    DominantWeight w;
    w.lattice_coords = IVec(data.rank);
    for (int a = 0; a < data.rank; ++a) w.lattice_coords[a] = row.at("mu").at(a).get<int>();
    w.coords = data.lattice_basis * w.lattice_coords.cast<double>();
    w.norm = w.coords.norm();
    c.weights.push_back(w);
    c.coeffs.push_back(cplx(row.at("re").get<double>(), row.at("im").get<double>()));
    c.cutoff = std::max(c.cutoff, w.norm);
  }
  return c;
}

std::string values_csv(const SymmetricSpaceData& data, const TorusGrid& grid,
                       const std::vector<cplx>& u) {
  std::string s;
  for (int a = 0; a < data.rank; ++a) s += "theta_" + std::to_string(a) + ",";
  s += "dist,re,im\n";
  for (long long i = 0; i < grid.count; ++i) {
    const Vec theta = torus_theta(data, grid.node_x(i));
    std::vector<std::string> cells;
    for (int a = 0; a < data.rank; ++a) cells.push_back(g17(theta[a]));
    cells.push_back(g17(grid.dist_vals[i]));
    cells.push_back(g17(u[i].real()));
    cells.push_back(g17(u[i].imag()));
    s += csv_join(cells);
  }
  return s;
}

json values_json(const SymmetricSpaceData& data, const TorusGrid& grid,
                 const std::vector<cplx>& u) {
  json rows = json::array();
  for (long long i = 0; i < grid.count; ++i) {
    const Vec theta = torus_theta(data, grid.node_x(i));
    json row;
    row["theta"] = json::array();
    for (int a = 0; a < data.rank; ++a) row["theta"].push_back(jnum(theta[a]));
    row["dist"] = jnum(grid.dist_vals[i]);
    row["re"] = jnum(u[i].real());
    row["im"] = jnum(u[i].imag());
    rows.push_back(row);
  }
  return rows;
}

int cmd_fourier_inverse(const CommonFlags& cf, const std::string& in_path, Emitter& em) {
  if (in_path.empty()) throw UsageError("fourier inverse needs --in <coefficients.json>");
  const SymmetricSpaceData data = build_space(resolve_config(cf));
  const ShiftOperator D = build_shift_operator(data);
  const TorusGrid grid = make_grid(data, data.config.grid_size);
  const SphericalCoefficients c = read_coeffs(data, in_path);
  const std::vector<cplx> u = inverse_transform(data, D, grid, c);
  em.write(cf.format == "json" ? values_json(data, grid, u).dump(2) : values_csv(data, grid, u));
  return 0;
}

int cmd_fourier_extend(const CommonFlags& cf, double eps, double sharpness,
                       const std::vector<std::string>& lambdas, Emitter& em) {
  if (lambdas.empty()) throw UsageError("fourier extend needs at least one --lambda");
  const FourierSetup fs = fourier_setup(cf, eps, sharpness);
  std::string s;
  for (int a = 0; a < fs.data.rank; ++a)
    s += "lambda_re_" + std::to_string(a) + ",lambda_im_" + std::to_string(a) + ",";
  s += "fhat_re,fhat_im\n";
  json rows = json::array();
  for (const std::string& ls : lambdas) {
    const SpectralParameter lam = parse_lambda(ls, fs.data.rank);
    const cplx F = pw_extend(fs.data, fs.D, fs.grid, fs.f.values, fs.f.support_radius, lam);
    std::vector<std::string> cells;
    json row;
    row["lambda_re"] = json::array();
    row["lambda_im"] = json::array();
    for (int a = 0; a < fs.data.rank; ++a) {
      cells.push_back(g17(lam.coords[a].real()));
      cells.push_back(g17(lam.coords[a].imag()));
      row["lambda_re"].push_back(jnum(lam.coords[a].real()));
      row["lambda_im"].push_back(jnum(lam.coords[a].imag()));
    }
    cells.push_back(g17(F.real()));
    cells.push_back(g17(F.imag()));
    row["fhat_re"] = jnum(F.real());
    row["fhat_im"] = jnum(F.imag());
    s += csv_join(cells);
    rows.push_back(row);
  }
  em.write(cf.format == "json" ? rows.dump(2) : s);
  return 0;
}

int cmd_fourier_type(const CommonFlags& cf, double eps, double sharpness, Emitter& em) {
  const FourierSetup fs = fourier_setup(cf, eps, sharpness);
  const std::vector<double> radii = {40.0, 80.0, 120.0, 160.0, 200.0, 240.0};
  auto F = [&](const SpectralParameter& l) {
    return pw_extend(fs.data, fs.D, fs.grid, fs.f.values, fs.f.support_radius, l);
  };
  const double slope = exponential_type(fs.data, F, radii);
  if (cf.format == "json") {
    json j;
    j["epsilon"] = jnum(eps);
    j["type_estimate"] = jnum(slope);
    j["radii"] = json::array();
    for (double r : radii) j["radii"].push_back(jnum(r));
    em.write(j.dump(2));
  } else {
    std::string s = "epsilon,type_estimate\n";
    s += csv_join({g17(eps), g17(slope)});
    em.write(s);
  }
  return 0;
}

int cmd_fourier_synth(const CommonFlags& cf, double eps, double sharpness, Emitter& em) {
  const FourierSetup fs = fourier_setup(cf, eps, sharpness);
  auto F = [&](const SpectralParameter& l) {
    return pw_extend(fs.data, fs.D, fs.grid, fs.f.values, fs.f.support_radius, l);
  };
  const SphericalCoefficients c = sample_pw(fs.data, F, fs.cutoff);
  const std::vector<cplx> u = inverse_transform(fs.data, fs.D, fs.grid, c);
  double sup_err = 0.0;
  for (long long i = 0; i < fs.grid.count; ++i)
    sup_err = std::max(sup_err, std::abs(u[i] - fs.f.values[i]));
  const double supp = support_radius(fs.grid, u, 1e-8);
  const double bound = eps + 2.0 * grid_step(fs.data, fs.grid);
  em.manifest_params["sup_err"] = jnum(sup_err);
  em.manifest_params["support_radius"] = jnum(supp);
  em.manifest_params["support_bound"] = jnum(bound);
  if (cf.format == "json") {
    json j;
    j["sup_err"] = jnum(sup_err);
    j["support_radius"] = jnum(supp);
    j["support_bound"] = jnum(bound);
    j["values"] = values_json(fs.data, fs.grid, u);
    em.write(j.dump(2));
  } else {
    em.write(values_csv(fs.data, fs.grid, u));
  }
  if (supp > bound) {
    std::cerr << "contract violation: synthesized support " << format_g17(supp)
              << " exceeds bound " << format_g17(bound) << "\n";
    return 1;
  }
  return 0;
}

struct WaveFlags {
  double epsilon = 0.2;
  double sharpness = 3.0;
  double t_max = 0.6;
  int t_steps = 24;
  std::string method = "series";
  double gamma = 0.0;
};

CauchyProblem wave_problem(const CommonFlags& cf, const WaveFlags& wf) {
  const SymmetricSpaceData data = build_space(resolve_config(cf));
  const ShiftOperator D = build_shift_operator(data);
  const double cutoff = cf.cutoff > 0 ? cf.cutoff : data.config.grid_size / 4.0;
  return make_problem(data, D, data.config.grid_size, wf.epsilon, wf.sharpness, cutoff,
                      wf.t_steps);
}

int cmd_wave_run(const CommonFlags& cf, const WaveFlags& wf, Emitter& em) {
  const CauchyProblem pb = wave_problem(cf, wf);
  if (pb.tail_warning)
    std::cerr << "warning: spectral tail level " << format_g17(pb.tail_level)
              << " above 1e-8; raise --grid or --cutoff\n";
  auto solve = [&](double t) {
    if (wf.method == "series") return solve_series(pb, t);
    if (wf.method == "reduction") return solve_reduction(pb, t);
    return solve_contour(pb, t, wf.gamma);
  };
  std::string s;
  for (int a = 0; a < pb.data.rank; ++a) s += "theta_" + std::to_string(a) + ",";
  s = "t," + s + "dist,re,im\n";
  json jt = json::array(), jv = json::array();
  for (int k = 1; k <= wf.t_steps; ++k) {
    const double t = wf.t_max * k / wf.t_steps;
    const RadialFunction u = solve(t);
    jt.push_back(jnum(t));
    json row = json::array();
    for (long long i = 0; i < pb.grid.count; ++i) {
      const Vec theta = torus_theta(pb.data, pb.grid.node_x(i));
      std::vector<std::string> cells{g17(t)};
      for (int a = 0; a < pb.data.rank; ++a) cells.push_back(g17(theta[a]));
      cells.push_back(g17(pb.grid.dist_vals[i]));
      cells.push_back(g17(u.values[i].real()));
      cells.push_back(g17(u.values[i].imag()));
      s += csv_join(cells);
      json pt;
      pt["re"] = jnum(u.values[i].real());
      pt["im"] = jnum(u.values[i].imag());
      row.push_back(pt);
    }
    jv.push_back(row);
  }
  if (cf.format == "json") {
    json j;
    j["method"] = wf.method;
    j["t"] = jt;
    j["values"] = jv;
    em.write(j.dump(2));
  } else {
    em.write(s);
  }
  return 0;
}

int cmd_wave_huygens(const CommonFlags& cf, const WaveFlags& wf, Emitter& em) {
  const CauchyProblem pb = wave_problem(cf, wf);
  std::vector<RadialFunction> traj;
  for (double t : pb.time_grid) traj.push_back(solve_series(pb, t));
  const HuygensReport rep = huygens_report(pb, traj, 1e-6);
  json j;
  j["t"] = json::array();
  j["L_cone"] = json::array();
  j["L_shell"] = json::array();
  for (const auto& e : rep.entries) {
    j["t"].push_back(jnum(e.t));
    j["L_cone"].push_back(jnum(e.cone));
    j["L_shell"].push_back(jnum(e.shell));
  }
  j["finite_speed"] = rep.finite_speed;
  j["huygens_asserted"] = rep.huygens_asserted;
  j["pass"] = rep.finite_speed && rep.strong_huygens;
  if (cf.format == "csv") {
    std::string s = "t,L_cone,L_shell\n";
    for (const auto& e : rep.entries) s += csv_join({g17(e.t), g17(e.cone), g17(e.shell)});
    em.write(s);
  } else {
    em.write(j.dump(2));
  }
  // contract violation: Huygens fails where the theorem asserts it
  if (!rep.finite_speed || (rep.huygens_asserted && !rep.strong_huygens)) {
    std::cerr << "contract violation: Huygens check failed (max_cone="
              << format_g17(rep.max_cone) << ", max_shell=" << format_g17(rep.max_shell) << ")\n";
    return 1;
  }
  return 0;
}

int cmd_wave_expcheck(const CommonFlags& cf, const WaveFlags& wf, const std::string& gammas_str,
                      double t, Emitter& em) {
  const CauchyProblem pb = wave_problem(cf, wf);
  const std::vector<double> gammas =
      gammas_str.empty() ? std::vector<double>{0.0, 1.0, 2.0, 5.0} : parse_reals(gammas_str);
  const auto entries = exponential_estimate_check(pb, t, gammas);
  double lo = entries[0].c_emp, hi = entries[0].c_emp;
  std::string s = "gamma,C_emp\n";
  json rows = json::array();
  for (const auto& e : entries) {
    lo = std::min(lo, e.c_emp);
    hi = std::max(hi, e.c_emp);
    s += csv_join({g17(e.gamma), g17(e.c_emp)});
    json row;
    row["gamma"] = jnum(e.gamma);
    row["C_emp"] = jnum(e.c_emp);
    rows.push_back(row);
  }
  const bool bounded = lo > 0.0 && hi / lo <= 10.0;
  if (cf.format == "json") {
    json j;
    j["entries"] = rows;
    j["ratio"] = jnum(lo > 0.0 ? hi / lo : 0.0);
    j["bounded"] = bounded;
    em.write(j.dump(2));
  } else {
    em.write(s);
  }
  if (!bounded) {
    std::cerr << "contract violation: C_emp ratio " << format_g17(lo > 0.0 ? hi / lo : 0.0)
              << " exceeds 10\n";
    return 1;
  }
  return 0;
}

int cmd_selftest(const std::vector<std::string>& only, bool corrupt) {
  AcceptanceOptions opts;
  opts.only = only;
  opts.corrupt_normalization = corrupt;
  const auto results = run_acceptance(opts);
  if (results.empty()) {
    std::cerr << "no matching acceptance criteria\n";
    return 2;
  }
  bool all = true;
  std::vector<std::string> failed;
  for (const auto& r : results) {
    std::printf("[%s] %-14s measured=%.3e threshold=%.3e (%.1fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.measured, r.threshold, r.seconds, r.detail.empty() ? "" : " ",
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) failed.push_back(r.id);
    all = all && r.pass;
  }
  if (!all) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    std::cerr << "selftest failed: " << names << "\n";
  }
  return all ? 0 : 1;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"spherical harmonic analysis on compact symmetric spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("hk ") + kVersion);

  CommonFlags cf;

  auto* space = app.add_subcommand("space", "space geometry");
  auto* describe = space->add_subcommand("describe", "describe a configured space");
  add_common(describe, cf);

  auto* specfunc = app.add_subcommand("specfunc", "spherical functions");
  auto* sf_eval = specfunc->add_subcommand("eval", "evaluate psi_mu against the oracle");
  std::vector<int> mu;
  std::string theta_str;
  int theta_grid = 0;
  add_common(sf_eval, cf);
  sf_eval->add_option("--mu", mu, "dominant weight (lattice integers)")->required()->delimiter(',');
  sf_eval->add_option("--theta", theta_str, "evaluation point theta (comma-separated)");
  sf_eval->add_option("--theta-grid", theta_grid, "emit a full grid sweep of this size");
  auto* sf_dim = specfunc->add_subcommand("dim", "dimension polynomial over the lattice");
  add_common(sf_dim, cf);
  auto* sf_cfun = specfunc->add_subcommand("cfun", "Harish-Chandra c-function");
  std::string lambda_str;
  add_common(sf_cfun, cf);
  sf_cfun->add_option("--lambda", lambda_str, "lambda as re,im per coordinate")->required();

  auto* fourier = app.add_subcommand("fourier", "spherical Fourier transform");
  double eps = 0.3, sharpness = 3.0;
  std::string in_path;
  std::vector<std::string> lambdas;
  auto* ff = fourier->add_subcommand("forward", "transform of the standard bump");
  add_common(ff, cf);
  ff->add_option("--epsilon", eps, "bump support radius");
  ff->add_option("--sharpness", sharpness, "bump sharpness exponent");
  auto* fi = fourier->add_subcommand("inverse", "synthesis from a coefficients file");
  add_common(fi, cf);
  fi->add_option("--in", in_path, "coefficients JSON (as emitted by forward)");
  auto* fe = fourier->add_subcommand("extend", "Paley-Wiener extension at given lambda");
  add_common(fe, cf);
  fe->add_option("--epsilon", eps, "bump support radius");
  fe->add_option("--sharpness", sharpness, "bump sharpness exponent");
  fe->add_option("--lambda", lambdas, "lambda as re,im per coordinate (repeatable)");
  auto* ft = fourier->add_subcommand("type", "exponential type estimate");
  add_common(ft, cf);
  ft->add_option("--epsilon", eps, "bump support radius");
  ft->add_option("--sharpness", sharpness, "bump sharpness exponent");
  auto* fy = fourier->add_subcommand("synth", "PW roundtrip: synthesize(pw_extend(bump))");
  add_common(fy, cf);
  fy->add_option("--epsilon", eps, "bump support radius");
  fy->add_option("--sharpness", sharpness, "bump sharpness exponent");

  auto* wave = app.add_subcommand("wave", "wave equation on U/K");
  WaveFlags wf;
  std::string gammas_str;
  double exp_t = 0.6;
  auto* wr = wave->add_subcommand("run", "solve the Cauchy problem");
  add_common(wr, cf);
  wr->add_option("--epsilon", wf.epsilon, "initial bump support radius");
  wr->add_option("--sharpness", wf.sharpness, "bump sharpness exponent");
  wr->add_option("--t-max", wf.t_max, "final time");
  wr->add_option("--t-steps", wf.t_steps, "number of time steps");
  wr->add_option("--method", wf.method, "solver")->check(CLI::IsMember({"series", "reduction", "contour"}));
  wr->add_option("--gamma", wf.gamma, "contour shift (contour method)");
  auto* wh = wave->add_subcommand("huygens", "Huygens leakage report");
  add_common(wh, cf);
  wh->add_option("--epsilon", wf.epsilon, "initial bump support radius");
  wh->add_option("--sharpness", wf.sharpness, "bump sharpness exponent");
  wh->add_option("--t-steps", wf.t_steps, "number of time steps");
  auto* we = wave->add_subcommand("expcheck", "exponential Huygens estimate sweep");
  add_common(we, cf);
  we->add_option("--epsilon", wf.epsilon, "initial bump support radius");
  we->add_option("--sharpness", wf.sharpness, "bump sharpness exponent");
  we->add_option("--gammas", gammas_str, "comma-separated gamma list (default 0,1,2,5)");
  we->add_option("--t", exp_t, "evaluation time");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  std::vector<std::string> only;
  bool corrupt = false;
  selftest->add_option("--only", only, "run only the named criteria (repeatable)");
  selftest->add_option("--threads", cf.threads, "worker threads");
  selftest->add_flag("--corrupt-normalization", corrupt)->group("");  // hidden fault injection

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (cf.threads > 0) set_thread_count(cf.threads);

  Emitter em;
  em.out_path = cf.out;
  json params;
  params["format"] = cf.format;
  if (cf.grid > 0) params["grid"] = cf.grid;
  if (cf.cutoff > 0) params["cutoff"] = jnum(cf.cutoff);

  try {
    if (describe->parsed()) {
      em.command = "space describe";
      em.space_cfg = config_json(resolve_config(cf));
      em.manifest_params = params;
      return cmd_space_describe(cf, em);
    }
    if (sf_eval->parsed()) {
      em.command = "specfunc eval";
      em.space_cfg = config_json(resolve_config(cf));
      params["mu"] = mu;
      if (!theta_str.empty()) params["theta"] = theta_str;
      if (theta_grid > 0) params["theta_grid"] = theta_grid;
      em.manifest_params = params;
      return cmd_specfunc_eval(cf, mu, theta_str, theta_grid, em);
    }
    if (sf_dim->parsed()) {
      em.command = "specfunc dim";
      em.space_cfg = config_json(resolve_config(cf));
      em.manifest_params = params;
      return cmd_specfunc_dim(cf, em);
    }
    if (sf_cfun->parsed()) {
      em.command = "specfunc cfun";
      em.space_cfg = config_json(resolve_config(cf));
      params["lambda"] = lambda_str;
      em.manifest_params = params;
      return cmd_specfunc_cfun(cf, lambda_str, em);
    }
    if (ff->parsed() || fi->parsed() || fe->parsed() || ft->parsed() || fy->parsed()) {
      em.space_cfg = config_json(resolve_config(cf));
      params["epsilon"] = jnum(eps);
      params["sharpness"] = jnum(sharpness);
      em.manifest_params = params;
      if (ff->parsed()) {
        em.command = "fourier forward";
        return cmd_fourier_forward(cf, eps, sharpness, em);
      }
      if (fi->parsed()) {
        em.command = "fourier inverse";
        em.manifest_params["in"] = in_path;
        return cmd_fourier_inverse(cf, in_path, em);
      }
      if (fe->parsed()) {
        em.command = "fourier extend";
        em.manifest_params["lambda"] = lambdas;
        return cmd_fourier_extend(cf, eps, sharpness, lambdas, em);
      }
      if (ft->parsed()) {
        em.command = "fourier type";
        return cmd_fourier_type(cf, eps, sharpness, em);
      }
      em.command = "fourier synth";
      return cmd_fourier_synth(cf, eps, sharpness, em);
    }
    if (wr->parsed() || wh->parsed() || we->parsed()) {
      em.space_cfg = config_json(resolve_config(cf));
      params["epsilon"] = jnum(wf.epsilon);
      params["sharpness"] = jnum(wf.sharpness);
      params["t_steps"] = wf.t_steps;
      em.manifest_params = params;
      if (wr->parsed()) {
        em.command = "wave run";
        em.manifest_params["t_max"] = jnum(wf.t_max);
        em.manifest_params["method"] = wf.method;
        em.manifest_params["gamma"] = jnum(wf.gamma);
        return cmd_wave_run(cf, wf, em);
      }
      if (wh->parsed()) {
        em.command = "wave huygens";
        return cmd_wave_huygens(cf, wf, em);
      }
      em.command = "wave expcheck";
      em.manifest_params["t"] = jnum(exp_t);
      if (!gammas_str.empty()) em.manifest_params["gammas"] = gammas_str;
      return cmd_wave_expcheck(cf, wf, gammas_str, exp_t, em);
    }
    if (selftest->parsed()) return cmd_selftest(only, corrupt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const AliasingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "no command given\n";
  return 2;
}

}  // namespace
}  // namespace hk

int main(int argc, char** argv) { return hk::dispatch(argc, argv); }
