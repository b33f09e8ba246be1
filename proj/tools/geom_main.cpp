// geom: command-line surface over the geometry engine. Subcommands load a
// chart from a spec file or preset, run pointwise computations, integrate
// geodesics/transport, or run the verification suite. All numeric output is
// printed with 17 significant digits so identical runs are byte-identical.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geom/verify.hpp"

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt17(v[i]);
  return out + "]";
}

std::string json_array(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw geom::SchemaError("empty entry in numeric list '" + text + "'");
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw geom::SchemaError("bad number '" + tok + "' in list");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_semicolons(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(tok);
  return out;
}

struct SpecSource {
  std::string file;
  std::string preset_name;
  std::vector<std::string> params;
  int dim = 0;     // semi_euclidean convenience
  int index = -1;  // semi_euclidean convenience

  geom::MetricSpec load() const {
    if (!file.empty() && !preset_name.empty())
      throw geom::SchemaError("give either --spec or --preset, not both");
    if (!file.empty()) return geom::load_spec_file(file);
    if (preset_name.empty()) throw geom::SchemaError("either --spec or --preset is required");
    std::map<std::string, double> ps;
    for (const auto& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw geom::SchemaError("--param expects k=v, got '" + kv + "'");
      char* end = nullptr;
      std::string val = kv.substr(eq + 1);
      double v = std::strtod(val.c_str(), &end);
      if (end != val.c_str() + val.size())
        throw geom::SchemaError("bad --param value in '" + kv + "'");
      ps[kv.substr(0, eq)] = v;
    }
    if (dim > 0) ps["dim"] = dim;
    if (index >= 0) ps["index"] = index;
    return geom::preset(preset_name, ps);
  }
};

void add_spec_options(CLI::App* cmd, SpecSource& src) {
  cmd->add_option("--spec", src.file, "spec JSON file");
  cmd->add_option("--preset", src.preset_name,
                  "semi_euclidean | sphere | hyperbolic_halfplane | schwarzschild");
  cmd->add_option("--param", src.params, "preset parameter k=v (repeatable)");
  cmd->add_option("--dim", src.dim, "dimension (semi_euclidean)");
  cmd->add_option("--index", src.index, "metric index (semi_euclidean)");
}

geom::Point parse_point(const geom::MetricSpec& spec, const std::string& text) {
  auto xs = parse_csv_doubles(text);
  if (static_cast<int>(xs.size()) != spec.dim)
    throw geom::SchemaError("--point needs " + std::to_string(spec.dim) + " components");
  return geom::Point{xs};
}

std::optional<double> env_default_tol() {
  if (const char* env = std::getenv("GEOM_DEFAULT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && *end == '\0') return v;
  }
  return std::nullopt;
}

// exit code classification: 2 = input error, 1 = numerical/verification error
int classify(const std::exception& e, int runtime_code) {
  if (dynamic_cast<const geom::SchemaError*>(&e) || dynamic_cast<const geom::SyntaxError*>(&e) ||
      dynamic_cast<const geom::UnknownIdentifier*>(&e) ||
      dynamic_cast<const geom::UnknownPreset*>(&e) ||
      dynamic_cast<const geom::DimensionMismatch*>(&e))
    return 2;
  return runtime_code;
}

// --- subcommands -----------------------------------------------------------

int run_info(const SpecSource& src, int samples, std::uint64_t seed) {
  geom::MetricSpec spec;
  try {
    spec = src.load();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  geom::ValidationReport rep = geom::validate_spec(spec, samples, seed);
  std::cout << "name=" << spec.name << " dim=" << spec.dim << " index=" << rep.index << "\n";
  std::cout << "coords=";
  for (int i = 0; i < spec.dim; ++i) std::cout << (i ? "," : "") << spec.coords[i];
  std::cout << "\n";
  for (int i = 0; i < spec.dim; ++i)
    std::cout << "domain " << spec.coords[i] << ": (" << fmt17(spec.domain.lower[i]) << ", "
              << fmt17(spec.domain.upper[i]) << ")\n";
  for (const auto& [k, v] : spec.params) std::cout << "param " << k << "=" << fmt17(v) << "\n";
  std::cout << "validation: samples=" << samples << " symmetry_max=" << fmt17(rep.symmetry_max)
            << " min|eig|=" << fmt17(rep.min_abs_eigenvalue)
            << " failures=" << rep.failures.size() << "\n";
  for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
  return rep.ok() ? 0 : 1;
}

int run_compute(const SpecSource& src, const std::string& what, const std::string& point_text,
                const std::string& f_text) {
  geom::MetricSpec spec;
  geom::Point p;
  try {
    spec = src.load();
    p = parse_point(spec, point_text);
    geom::require_in_domain(spec, p);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const int m = spec.dim;
  try {
    std::string out = "{\"spec\":\"" + json_escape(spec.name) + "\",\"what\":\"" + what +
                      "\",\"point\":" + json_array(p.x);
    if (what == "christoffel") {
      geom::ChristoffelAt g = geom::christoffel_at(spec, p);
      out += ",\"shape\":" + json_array(std::vector<int>{m, m, m}) +
             ",\"index_order\":\"gamma[i][j][k] row-major, upper index i first\"" +
             ",\"gamma\":" + json_array(g.gamma);
    } else if (what == "riemann") {
      geom::RiemannAt r = geom::riemann_at(spec, p);
      out += ",\"shape\":" + json_array(std::vector<int>{m, m, m, m}) +
             ",\"index_order\":\"lowered[i][j][k][l] = <R(Ei,Ej)Ek, El> row-major; "
             "mixed[n][i][j][k] row-major\"" +
             ",\"lowered\":" + json_array(r.lowered) + ",\"mixed\":" + json_array(r.mixed);
    } else if (what == "ricci") {
      geom::RicciAt r = geom::ricci_at(spec, p);
      std::vector<double> ric(r.ric.data().begin(), r.ric.data().end());
      out += ",\"shape\":" + json_array(std::vector<int>{m, m}) +
             ",\"index_order\":\"ricci[i][j] row-major\"" + ",\"ricci\":" + json_array(ric) +
             ",\"scalar\":" + fmt17(r.scalar);
    } else if (what == "scalar") {
      out += ",\"scalar\":" + fmt17(geom::ricci_at(spec, p).scalar);
    } else if (what == "grad") {
      if (f_text.empty()) throw geom::SchemaError("grad needs --f EXPR");
      geom::Expr f = geom::parse_scalar_field(spec, f_text);
      out += ",\"f\":\"" + json_escape(f_text) +
             "\",\"grad\":" + json_array(geom::gradient_at(spec, f, p).comp);
    } else {
      throw geom::SchemaError("unknown compute target '" + what + "'");
    }
    std::cout << out << "}\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e, 1);
  }
}

int run_geodesic(const SpecSource& src, const std::string& point_text,
                 const std::string& velocity_text, double t0, double t1, double dt,
                 const std::string& out_path) {
  geom::MetricSpec spec;
  geom::Point p;
  std::vector<double> v;
  try {
    spec = src.load();
    p = parse_point(spec, point_text);
    geom::require_in_domain(spec, p);
    v = parse_csv_doubles(velocity_text);
    if (static_cast<int>(v.size()) != spec.dim)
      throw geom::SchemaError("--velocity needs dim components");
    if (!(dt > 0.0)) throw geom::SchemaError("--dt must be positive");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    geom::SolverConfig cfg;
    cfg.dt = dt;
    geom::Trajectory traj = geom::geodesic_shoot(spec, p, v, t0, t1, cfg);
    if (out_path.empty()) {
      geom::write_trajectory_csv(traj, std::cout);
    } else {
      std::ofstream out(out_path);
      if (!out) throw geom::Error("cannot open output file '" + out_path + "'");
      geom::write_trajectory_csv(traj, out);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e, 1);
  }
}

int run_transport(const SpecSource& src, const std::string& curve_text,
                  const std::string& vector_text, double t0, double t1, double dt) {
  geom::MetricSpec spec;
  geom::CurveSpec curve;
  std::vector<double> v;
  try {
    spec = src.load();
    auto exprs = split_semicolons(curve_text);
    double lo = std::min(t0, t1), hi = std::max(t0, t1);
    double pad = 1e-9 * (1.0 + hi - lo);
    curve = geom::make_analytic_curve(spec, exprs, lo - pad, hi + pad);
    v = parse_csv_doubles(vector_text);
    if (static_cast<int>(v.size()) != spec.dim)
      throw geom::SchemaError("--vector needs dim components");
    if (!(dt > 0.0)) throw geom::SchemaError("--dt must be positive");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    geom::SolverConfig cfg;
    cfg.dt = dt;
    auto [p0, v0] = geom::curve_state(spec, curve, t0);
    auto [p1, v1] = geom::curve_state(spec, curve, t1);
    std::vector<double> out = geom::parallel_transport(spec, curve, t0, t1, v, cfg);
    double before = geom::inner_at(spec, {p0, v}, {p0, v});
    double after = geom::inner_at(spec, {p1, out}, {p1, out});
    std::cout << "{\"input\":" << json_array(v) << ",\"output\":" << json_array(out)
              << ",\"inner_before\":" << fmt17(before) << ",\"inner_after\":" << fmt17(after)
              << "}\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e, 1);
  }
}

int run_verify(const SpecSource& src, int samples, std::uint64_t seed, double dt,
               std::optional<double> tol) {
  geom::MetricSpec spec;
  try {
    spec = src.load();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    geom::VerifyOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    opts.dt = dt;
    opts.tol_override = tol;
    auto results = geom::run_verification(spec, opts);
    int passed = 0;
    for (const auto& r : results) {
      std::printf("%s %-24s residual=%s tol=%s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  fmt17(r.residual).c_str(), fmt17(r.tol).c_str(), r.note.empty() ? "" : "  ",
                  r.note.c_str());
      if (r.pass) ++passed;
    }
    std::printf("verify: %d/%zu checks passed\n", passed, results.size());
    return geom::all_passed(results) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e, 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical semi-Riemannian geometry engine"};
  app.require_subcommand(1);

  SpecSource src;

  auto* info = app.add_subcommand("info", "validate a chart and print its summary");
  add_spec_options(info, src);
  int info_samples = 100;
  std::uint64_t seed = 7;
  info->add_option("--samples", info_samples, "validation sample count");
  info->add_option("--seed", seed, "rng seed");

  auto* compute = app.add_subcommand("compute", "pointwise tensors as JSON");
  add_spec_options(compute, src);
  std::string what, point_text, f_text;
  compute->add_option("what", what, "christoffel|riemann|ricci|scalar|grad")->required();
  compute->add_option("--point", point_text, "comma-separated coordinates")->required();
  compute->add_option("--f", f_text, "scalar field expression (grad)");

  auto* geodesic = app.add_subcommand("geodesic", "integrate a geodesic, emit CSV");
  add_spec_options(geodesic, src);
  std::string vel_text, out_path;
  double t0 = 0.0, t1 = 1.0, dt = 1e-3;
  geodesic->add_option("--point", point_text, "initial point")->required();
  geodesic->add_option("--velocity", vel_text, "initial velocity")->required();
  geodesic->add_option("--t0", t0, "start parameter");
  geodesic->add_option("--t1", t1, "end parameter");
  geodesic->add_option("--dt", dt, "integration step");
  geodesic->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* transport = app.add_subcommand("transport", "parallel-transport a vector along a curve");
  add_spec_options(transport, src);
  std::string curve_text, vector_text;
  transport->add_option("--curve", curve_text, "semicolon-separated coordinate expressions of t")
      ->required();
  transport->add_option("--vector", vector_text, "vector components at t0")->required();
  transport->add_option("--t0", t0, "start parameter");
  transport->add_option("--t1", t1, "end parameter");
  transport->add_option("--dt", dt, "integration step");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_spec_options(verify, src);
  int verify_samples = 50;
  double verify_dt = 1e-3;
  double tol_flag = -1.0;
  verify->add_option("--samples", verify_samples, "sample count per check");
  verify->add_option("--seed", seed, "rng seed");
  verify->add_option("--dt", verify_dt, "geodesic-check integration step");
  auto* tol_opt = verify->add_option("--tol", tol_flag, "override every check tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // malformed command line is an input error
  }

  try {
    if (app.got_subcommand(info)) return run_info(src, info_samples, seed);
    if (app.got_subcommand(compute)) return run_compute(src, what, point_text, f_text);
    if (app.got_subcommand(geodesic))
      return run_geodesic(src, point_text, vel_text, t0, t1, dt, out_path);
    if (app.got_subcommand(transport))
      return run_transport(src, curve_text, vector_text, t0, t1, dt);
    if (app.got_subcommand(verify)) {
      std::optional<double> tol = env_default_tol();
      if (tol_opt->count() > 0) tol = tol_flag;
      return run_verify(src, verify_samples, seed, verify_dt, tol);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
