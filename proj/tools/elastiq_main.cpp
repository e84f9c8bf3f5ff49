// elastiq: batch front-end for the elastic-solid verification library.
//
//   elastiq dispersion --config cfg.json     phonon branch energies as CSV
//   elastiq reduce     --config cfg.json     dimensional-reduction reports
//   elastiq verify     --config cfg.json --suite <name>   invariant suites

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "elastiq/elastodynamics.hpp"
#include "elastiq/fields.hpp"
#include "elastiq/geometry.hpp"
#include "elastiq/kinematics.hpp"
#include "elastiq/quantization.hpp"
#include "elastiq/reduction.hpp"
#include "elastiq/verify.hpp"

namespace {

using nlohmann::json;
using namespace elastiq;

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

struct RunConfig {
  LameParameters material{1.3, 0.1};
  std::vector<double> q2_grid;
  std::vector<int> q3_list;
  std::optional<std::string> field_file;
  double fd_step = 1e-3;
  int truncation = 0;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  int samples = 50;
};

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> known = {
      "material", "q2_grid", "q3_list",    "field_file",
      "fd_step",  "truncation", "output_dir", "seed", "samples"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }

  RunConfig cfg;
  try {
    if (doc.contains("material")) {
      const auto& m = doc.at("material");
      cfg.material = LameParameters(m.at("lambda").get<double>(),
                                    m.at("mu").get<double>());
    }
    if (doc.contains("q2_grid")) cfg.q2_grid = doc.at("q2_grid").get<std::vector<double>>();
    if (doc.contains("q3_list")) cfg.q3_list = doc.at("q3_list").get<std::vector<int>>();
    if (doc.contains("field_file")) cfg.field_file = doc.at("field_file").get<std::string>();
    if (doc.contains("fd_step")) cfg.fd_step = doc.at("fd_step").get<double>();
    if (doc.contains("truncation")) cfg.truncation = doc.at("truncation").get<int>();
    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("samples")) cfg.samples = doc.at("samples").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const DegenerateMaterial& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!(cfg.fd_step > 0.0)) throw ConfigError("config: fd_step must be positive");
  if (cfg.truncation < 0) throw ConfigError("config: truncation must be >= 0");
  if (cfg.samples <= 0) throw ConfigError("config: samples must be positive");
  return cfg;
}

// write-then-rename so partial output never lands under the final name
void atomic_write(const std::string& dir, const std::string& name,
                  const std::string& content) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path final_path = fs::path(dir) / name;
  const fs::path tmp_path = fs::path(dir) / (name + ".tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp_path.string());
    out << content;
  }
  fs::rename(tmp_path, final_path);
}

int cmd_dispersion(const RunConfig& cfg) {
  if (cfg.q2_grid.empty() || cfg.q3_list.empty())
    throw ConfigError("dispersion: q2_grid and q3_list must be nonempty");
  const auto rows = dispersion_sweep(cfg.material, cfg.q2_grid, cfg.q3_list);
  atomic_write(cfg.output_dir, "dispersion.csv", dispersion_csv(rows));
  std::cout << "dispersion: wrote " << rows.size() << " rows to "
            << cfg.output_dir << "/dispersion.csv\n";
  return kExitOk;
}

json mat_to_json(const MatX& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

int cmd_reduce(const RunConfig& cfg) {
  if (!cfg.field_file)
    throw ConfigError("reduce: config needs field_file");
  const DisplacementField u = DisplacementField::from_json_file(*cfg.field_file);

  for (const auto& m : u.modes())
    if (m.q3() != 0)
      throw ModeLeakage("reduce: field carries q3 != 0 modes; the single-mode "
                        "reduction requires pure zero-mode content");

  // KK fields from the material-frame metric of the displacement; its
  // compact slot is spacelike, so the spacelike split applies.
  auto decomp_at = [&u](const Vec2& q) {
    const Mat3 grad = u.real_gradient(Point3(q[0], q[1], 0.0));
    return kk_decompose_spacelike({metric_from_displacement(grad).g});
  };
  KKFields kf;
  kf.slot = CompactSlot::Spacelike;
  kf.g2 = [decomp_at](const Vec2& q) { return decomp_at(q).g2; };
  kf.A = [decomp_at](const Vec2& q) { return decomp_at(q).A; };
  kf.phi = [decomp_at](const Vec2& q) { return decomp_at(q).Phi; };

  json points = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec2 p(-0.5 + 0.5 * i, -0.5 + 0.5 * j);
      const Mat3 grad = u.real_gradient(Point3(p[0], p[1], 0.0));
      const SingleModeFields sm = single_mode_fields(grad);
      const KKDecomposition kd = decomp_at(p);
      const ReducedFieldReport rep = reduced_field_diagnostics(kf, p, cfg.fd_step);

      Eigen::FullPivLU<Mat2> lu(sm.g2_inverse);
      if (!lu.isInvertible())
        throw SingularMetric("reduce: reduced metric block singular");
      json pt;
      pt["x"] = {p[0], p[1]};
      pt["g2"] = mat_to_json(lu.inverse());
      pt["A"] = {sm.A_upper[0], sm.A_upper[1]};
      pt["Phi"] = kd.Phi;
      pt["ricci3_norm"] = rep.ricci3_norm;
      pt["maxwell_residual"] = {rep.maxwell_residual[0], rep.maxwell_residual[1]};
      pt["einstein_residual"] = mat_to_json(rep.einstein_residual);
      points.push_back(pt);
    }
  }
  json doc;
  doc["points"] = points;
  atomic_write(cfg.output_dir, "reduction.json", doc.dump(2) + "\n");
  std::cout << "reduce: wrote " << points.size() << " grid reports to "
            << cfg.output_dir << "/reduction.json\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  VerifyOptions opt;
  opt.material = cfg.material;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  opt.h = cfg.fd_step;

  std::vector<SuiteReport> reports;
  if (suite == "kinematics") reports.push_back(verify_kinematics(opt));
  else if (suite == "geometry") reports.push_back(verify_geometry(opt));
  else if (suite == "elastodynamics") reports.push_back(verify_elastodynamics(opt));
  else if (suite == "quantization") reports.push_back(verify_quantization(opt));
  else if (suite == "spinor") reports.push_back(verify_spinor(opt));
  else if (suite == "reduction") reports.push_back(verify_reduction(opt));
  else if (suite == "all") reports = verify_all(opt);
  else throw ConfigError("verify: unknown suite '" + suite + "'");

  bool ok = true;
  json jsuites = json::array();
  for (const auto& rep : reports) {
    json jprops = json::array();
    for (const auto& p : rep.properties) {
      json jp;
      jp["property"] = p.name;
      jp["samples"] = p.samples;
      jp["worst_residual"] = p.worst;
      if (p.detail != 0.0) jp["detail"] = p.detail;
      jp["pass"] = p.pass;
      jprops.push_back(jp);
      std::cout << (p.pass ? "pass" : "FAIL") << "  [" << rep.suite << "] "
                << p.name << "  worst=" << p.worst << "\n";
      ok = ok && p.pass;
    }
    json js;
    js["suite"] = rep.suite;
    js["properties"] = jprops;
    js["all_pass"] = rep.all_pass();
    if (rep.suite == "geometry") {
      // one rendered curvature report of a reference displacement metric
      const DisplacementField u = DisplacementField::make_real(
          {FourierMode(Vec3(0.8, 0.6, 1),
                       CVec3(Complex(0, 0.01), Complex(0.01, 0), Complex(0.005, 0)))});
      VecX p(3);
      p << 0.2, -0.1, 0.3;
      js["curvature_sample"] =
          json::parse(curvature_report_json(riemann(metric_field_of(u, cfg.fd_step), p)));
    }
    jsuites.push_back(js);
  }
  json doc;
  doc["seed"] = cfg.seed;
  doc["suites"] = jsuites;
  doc["all_pass"] = ok;
  atomic_write(cfg.output_dir, "verify_" + suite + ".json", doc.dump(2) + "\n");
  return ok ? kExitOk : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic-solid model verification toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string suite = "all";

  auto* disp = app.add_subcommand("dispersion", "write branch energies as CSV");
  disp->add_option("--config", config_path, "run configuration (JSON)")->required();

  auto* red = app.add_subcommand("reduce", "dimensional-reduction reports");
  red->add_option("--config", config_path, "run configuration (JSON)")->required();

  auto* ver = app.add_subcommand("verify", "run module invariant suites");
  ver->add_option("--config", config_path, "run configuration (JSON)")->required();
  ver->add_option("--suite", suite,
                  "kinematics|geometry|elastodynamics|quantization|spinor|reduction|all");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = parse_config(config_path);
    if (disp->parsed()) return cmd_dispersion(cfg);
    if (red->parsed()) return cmd_reduce(cfg);
    if (ver->parsed()) return cmd_verify(cfg, suite);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ModeLeakage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const SignatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitConfig;
}
