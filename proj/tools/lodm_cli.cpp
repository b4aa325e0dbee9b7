// Command-line front end for the lodm shared library. Everything goes
// through the C API in lodm/lodm.h; exit codes are scriptable:
//   0 success (check: identifiable)
//   1 runtime or domain error
//   2 invalid configuration
//   3 not identifiable (check) / no curve exists (curve, profile)
//   4 invertibility failure

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lodm/lodm.h"

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string family;
  int p = 0;
  int q = 0;
  double omega = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  std::optional<double> phi;
  std::uint64_t seed = 1;
  long n = 1000;
  long burn_in = 1000;
  double tol = 1e-9;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int status_exit_code(lodm_status status) {
  switch (status) {
    case LODM_OK: return 0;
    case LODM_ERR_ARG: return 2;
    case LODM_ERR_DOMAIN: return 1;
    case LODM_ERR_NOT_INVERTIBLE: return 4;
    case LODM_ERR_NO_CURVE: return 3;
    case LODM_ERR_RUNTIME: return 1;
  }
  return 1;
}

[[noreturn]] void die(lodm_status status) {
  std::cerr << "error: " << lodm_last_error() << "\n";
  std::exit(status_exit_code(status));
}

lodm_family family_code(const std::string& name) {
  if (name == "GarchGaussian") return LODM_GARCH_GAUSSIAN;
  if (name == "LogLinPoisson") return LODM_LOGLIN_POISSON;
  if (name == "NbinGarch") return LODM_NBIN_GARCH;
  throw ConfigError("unknown family '" + name +
                    "' (expected GarchGaussian, LogLinPoisson or NbinGarch)");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  RunConfig cfg;
  try {
    cfg.family = j.at("family").get<std::string>();
    cfg.p = j.at("p").get<int>();
    cfg.q = j.at("q").get<int>();
    cfg.omega = j.at("omega").get<double>();
    cfg.a = j.at("a").get<std::vector<double>>();
    cfg.b = j.at("b").get<std::vector<double>>();
    if (j.contains("phi") && !j["phi"].is_null()) cfg.phi = j["phi"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n")) cfg.n = j["n"].get<long>();
    if (j.contains("burn_in")) cfg.burn_in = j["burn_in"].get<long>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  } catch (const std::exception& e) {
    throw ConfigError("bad config field: " + std::string(e.what()));
  }
  family_code(cfg.family);
  if (cfg.p < 1 || cfg.q < 1) throw ConfigError("p and q must be >= 1");
  if (cfg.a.size() != static_cast<size_t>(cfg.p))
    throw ConfigError("length of a must equal p");
  if (cfg.b.size() != static_cast<size_t>(cfg.q))
    throw ConfigError("length of b must equal q");
  if (cfg.n < 1) throw ConfigError("n must be >= 1");
  if (cfg.burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be > 0");
  return cfg;
}

struct ModelHandle {
  lodm_model* ptr = nullptr;
  ~ModelHandle() { lodm_model_destroy(ptr); }
};

struct CurveHandle {
  lodm_curve* ptr = nullptr;
  ~CurveHandle() { lodm_curve_destroy(ptr); }
};

void make_model(const RunConfig& cfg, ModelHandle& model) {
  const lodm_status st = lodm_model_create(
      family_code(cfg.family), cfg.p, cfg.q, cfg.omega, cfg.a.data(),
      cfg.b.data(), cfg.phi ? &*cfg.phi : nullptr, &model.ptr);
  if (st != LODM_OK) {
    // Parameter rejections at model creation are configuration problems.
    std::cerr << "error: " << lodm_last_error() << "\n";
    std::exit(2);
  }
}

// Shortest representation that round-trips the exact double.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ordered_json config_params_json(const RunConfig& cfg) {
  ordered_json j;
  j["omega"] = cfg.omega;
  j["a"] = cfg.a;
  j["b"] = cfg.b;
  if (cfg.phi)
    j["phi"] = *cfg.phi;
  else
    j["phi"] = nullptr;
  return j;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(1);
  }
  out << body;
}

std::string sidecar_path(const std::string& out_path) {
  const auto dot = out_path.rfind(".csv");
  if (dot != std::string::npos && dot == out_path.size() - 4)
    return out_path.substr(0, dot) + ".json";
  return out_path + ".json";
}

std::vector<double> read_observation_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open data file '" << path << "'\n";
    std::exit(1);
  }
  std::string header;
  if (!std::getline(in, header)) {
    std::cerr << "error: empty data file '" << path << "'\n";
    std::exit(1);
  }
  int y_col = -1, col = 0;
  std::stringstream hs(header);
  std::string cell;
  while (std::getline(hs, cell, ',')) {
    if (cell == "y") y_col = col;
    ++col;
  }
  if (y_col < 0) {
    std::cerr << "error: data file '" << path << "' has no 'y' column\n";
    std::exit(1);
  }
  std::vector<double> y;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string field;
    int c = 0;
    bool found = false;
    while (std::getline(ls, field, ',')) {
      if (c == y_col) {
        try {
          y.push_back(std::stod(field));
        } catch (const std::exception&) {
          std::cerr << "error: bad numeric field '" << field << "' in " << path << "\n";
          std::exit(1);
        }
        found = true;
        break;
      }
      ++c;
    }
    if (!found) {
      std::cerr << "error: short row in " << path << "\n";
      std::exit(1);
    }
  }
  if (y.empty()) {
    std::cerr << "error: no observations in " << path << "\n";
    std::exit(1);
  }
  return y;
}

std::vector<double> parse_d_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (field.empty()) continue;
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw ConfigError("bad value in --d list: '" + field + "'");
    }
  }
  if (out.empty()) throw ConfigError("--d list is empty");
  return out;
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty())
    std::cout << body;
  else
    write_file(out_path, body);
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path, bool force) {
  ModelHandle model;
  make_model(cfg, model);
  int invertible = 0;
  if (lodm_model_invertible(model.ptr, &invertible) != LODM_OK) die(LODM_ERR_RUNTIME);
  if (!invertible) {
    std::cerr << "warning: a is outside the stability region; the recursion "
                 "has no stationary regime\n";
    if (!force) {
      std::cerr << "error: refusing to simulate (pass --force to override)\n";
      return 1;
    }
  }
  int moment_ok = 0;
  if (lodm_model_moment_condition(model.ptr, &moment_ok) == LODM_OK && !moment_ok)
    std::cerr << "warning: sum(a) + sum(b) >= 1; stationarity of the "
                 "simulated path is not guaranteed\n";

  std::vector<double> y(static_cast<size_t>(cfg.n));
  std::vector<double> x(static_cast<size_t>(cfg.n));
  const lodm_status st =
      lodm_simulate(model.ptr, cfg.n, cfg.burn_in, cfg.seed, y.data(), x.data());
  if (st != LODM_OK) die(st);

  std::string csv = "k,y,x\n";
  for (long k = 0; k < cfg.n; ++k) {
    csv += std::to_string(k);
    csv += ',';
    csv += fmt(y[static_cast<size_t>(k)]);
    csv += ',';
    csv += fmt(x[static_cast<size_t>(k)]);
    csv += '\n';
  }
  write_file(out_path, csv);

  ordered_json meta;
  meta["family"] = cfg.family;
  meta["p"] = cfg.p;
  meta["q"] = cfg.q;
  meta["params"] = config_params_json(cfg);
  meta["seed"] = cfg.seed;
  meta["n"] = cfg.n;
  meta["burn_in"] = cfg.burn_in;
  write_file(sidecar_path(out_path), meta.dump(2) + "\n");
  return 0;
}

int cmd_check(const RunConfig& cfg, const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  lodm_verdict verdict = LODM_IDENTIFIABLE;
  char* json = nullptr;
  const lodm_status st = lodm_check_identifiable(model.ptr, cfg.tol, &verdict, &json);
  if (st != LODM_OK) die(st);
  emit(std::string(json) + "\n", out_path);
  lodm_string_free(json);
  switch (verdict) {
    case LODM_IDENTIFIABLE: return 0;
    case LODM_NOT_IDENTIFIABLE: return 3;
    case LODM_INVERTIBILITY_FAILS: return 4;
  }
  return 1;
}

int cmd_curve(const RunConfig& cfg, const std::string& d_spec,
              const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  CurveHandle curve;
  lodm_status st = lodm_curve_create(model.ptr, cfg.tol, &curve.ptr);
  if (st != LODM_OK) die(st);

  double d_lo = 0.0, d_hi = 0.0;
  int interior = 0;
  lodm_curve_range(curve.ptr, &d_lo, &d_hi, &interior);

  std::vector<double> ds;
  if (!d_spec.empty()) {
    ds = parse_d_list(d_spec);
  } else {
    const int kn = 21;
    for (int i = 0; i < kn; ++i)
      ds.push_back(d_lo + (d_hi - d_lo) * static_cast<double>(i) / (kn - 1));
  }

  std::string csv = "d,omega";
  for (int i = 1; i <= cfg.p; ++i) csv += ",a" + std::to_string(i);
  for (int i = 1; i <= cfg.q; ++i) csv += ",b" + std::to_string(i);
  csv += '\n';
  std::vector<double> a(static_cast<size_t>(cfg.p));
  std::vector<double> b(static_cast<size_t>(cfg.q));
  for (double d : ds) {
    double omega = 0.0;
    st = lodm_curve_point(curve.ptr, d, &omega, a.data(), b.data());
    if (st != LODM_OK) {
      std::cerr << "error: " << lodm_last_error() << " (valid range ["
                << fmt(d_lo) << ", " << fmt(d_hi) << "])\n";
      return 1;
    }
    csv += fmt(d);
    csv += ',' + fmt(omega);
    for (double v : a) csv += ',' + fmt(v);
    for (double v : b) csv += ',' + fmt(v);
    csv += '\n';
  }
  write_file(out_path, csv);

  char* json = nullptr;
  st = lodm_curve_json(curve.ptr, &json);
  if (st != LODM_OK) die(st);
  write_file(sidecar_path(out_path), std::string(json) + "\n");
  lodm_string_free(json);
  return 0;
}

int cmd_impulse(const RunConfig& cfg, long k_max, const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  std::vector<double> h(static_cast<size_t>(k_max) + 1);
  const lodm_status st = lodm_impulse_response(model.ptr, k_max, h.data());
  if (st != LODM_OK) die(st);
  std::string csv = "k,h\n";
  for (long k = 0; k <= k_max; ++k)
    csv += std::to_string(k) + ',' + fmt(h[static_cast<size_t>(k)]) + '\n';
  emit(csv, out_path);
  return 0;
}

int cmd_reconstruct(const RunConfig& cfg, const std::string& data_path,
                    const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  const std::vector<double> y = read_observation_csv(data_path);
  std::vector<double> xhat(y.size());
  const lodm_status st = lodm_latent_path(model.ptr, y.data(),
                                          static_cast<long>(y.size()), xhat.data());
  if (st != LODM_OK) die(st);
  std::string csv = "k,xhat\n";
  for (size_t k = 0; k < xhat.size(); ++k)
    csv += std::to_string(k) + ',' + fmt(xhat[k]) + '\n';
  emit(csv, out_path);
  return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& data_path, long discard,
            const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  const std::vector<double> y = read_observation_csv(data_path);
  std::vector<double> a(static_cast<size_t>(cfg.p));
  std::vector<double> b(static_cast<size_t>(cfg.q));
  double omega = 0.0, phi = 0.0, loglik = 0.0;
  long iterations = 0;
  int converged = 0;
  const bool has_phi = cfg.phi.has_value();
  if (has_phi) phi = *cfg.phi;
  const lodm_status st = lodm_fit_mle(
      model.ptr, y.data(), static_cast<long>(y.size()), discard, 0, &omega,
      a.data(), b.data(), has_phi ? &phi : nullptr, &loglik, &iterations,
      &converged);
  if (st != LODM_OK) die(st);

  ordered_json theta;
  theta["omega"] = omega;
  theta["a"] = a;
  theta["b"] = b;
  if (has_phi)
    theta["phi"] = phi;
  else
    theta["phi"] = nullptr;
  ordered_json j;
  j["theta_hat"] = theta;
  j["loglik"] = loglik;
  j["iterations"] = iterations;
  j["converged"] = converged != 0;
  j["start"] = config_params_json(cfg);
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

int cmd_profile(const RunConfig& cfg, const std::string& data_path,
                const std::string& d_spec, long discard,
                const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  CurveHandle curve;
  lodm_status st = lodm_curve_create(model.ptr, cfg.tol, &curve.ptr);
  if (st != LODM_OK) die(st);
  const std::vector<double> y = read_observation_csv(data_path);

  double d_lo = 0.0, d_hi = 0.0;
  lodm_curve_range(curve.ptr, &d_lo, &d_hi, nullptr);
  std::vector<double> ds;
  if (!d_spec.empty()) {
    ds = parse_d_list(d_spec);
  } else {
    const int kn = 21;
    for (int i = 0; i < kn; ++i)
      ds.push_back(d_lo + (d_hi - d_lo) * static_cast<double>(i) / (kn - 1));
  }

  std::vector<double> a(static_cast<size_t>(cfg.p));
  std::vector<double> b(static_cast<size_t>(cfg.q));
  std::string csv = "d,loglik\n";
  for (double d : ds) {
    double omega = 0.0;
    st = lodm_curve_point(curve.ptr, d, &omega, a.data(), b.data());
    if (st != LODM_OK) {
      std::cerr << "error: " << lodm_last_error() << " (valid range ["
                << fmt(d_lo) << ", " << fmt(d_hi) << "])\n";
      return 1;
    }
    ModelHandle point;
    const lodm_status pst = lodm_model_create(
        family_code(cfg.family), cfg.p, cfg.q, omega, a.data(), b.data(),
        cfg.phi ? &*cfg.phi : nullptr, &point.ptr);
    if (pst != LODM_OK) die(pst);
    double loglik = 0.0;
    const lodm_status lst = lodm_conditional_loglik(
        point.ptr, y.data(), static_cast<long>(y.size()), discard, &loglik);
    if (lst != LODM_OK) die(lst);
    csv += fmt(d) + ',' + fmt(loglik) + '\n';
  }
  emit(csv, out_path);
  return 0;
}

int cmd_diag(const RunConfig& cfg, long k_max, const std::string& out_path) {
  ModelHandle model;
  make_model(cfg, model);
  ordered_json j;
  int invertible = 0;
  lodm_model_invertible(model.ptr, &invertible);
  j["invertible"] = invertible != 0;
  double sr = 0.0;
  if (lodm_spectral_radius(model.ptr, &sr) == LODM_OK) j["spectral_radius"] = sr;
  double gain = 0.0;
  if (lodm_geometric_gain(model.ptr, &gain) == LODM_OK)
    j["geometric_gain"] = gain;
  else
    j["geometric_gain"] = nullptr;
  ordered_json lips = ordered_json::array();
  for (long n = 1; n <= k_max; ++n) {
    double v = 0.0;
    if (lodm_lipschitz(model.ptr, n, &v) != LODM_OK) die(LODM_ERR_RUNTIME);
    lips.push_back(v);
  }
  j["lipschitz"] = lips;
  double est = 0.0, se = 0.0;
  const lodm_status st = lodm_moment_check(model.ptr, cfg.n, cfg.seed, &est, &se);
  if (st == LODM_OK) {
    ordered_json m;
    m["estimate"] = est;
    m["std_error"] = se;
    m["n"] = cfg.n;
    j["moment_check"] = m;
  } else {
    j["moment_check"] = nullptr;
  }
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identifiability analysis, simulation and QMLE fitting of "
               "linearly observation-driven time-series models"};
  app.require_subcommand(1);

  std::string config_path, out_path, data_path, d_spec;
  std::optional<std::uint64_t> seed_override;
  std::optional<long> n_override, burnin_override;
  std::optional<double> tol_override;
  long discard = 100;
  long k_max = 50;
  bool force = false;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--config", config_path, "JSON run configuration")->required();
    auto* out = cmd->add_option("--out", out_path, "output path");
    if (needs_out) out->required();
    cmd->add_option("--seed", seed_override, "override config seed");
    cmd->add_option("--n", n_override, "override config n");
    cmd->add_option("--burn-in", burnin_override, "override config burn_in");
    cmd->add_option("--tol", tol_override, "override config tol");
  };

  auto* sim = app.add_subcommand("simulate", "simulate a trajectory to CSV");
  add_common(sim, true);
  sim->add_flag("--force", force, "simulate even outside the stability region");

  auto* chk = app.add_subcommand("check", "decide identifiability (JSON report)");
  add_common(chk, false);

  auto* crv = app.add_subcommand("curve", "emit the equivalence curve to CSV");
  add_common(crv, true);
  crv->add_option("--d", d_spec, "comma-separated curve coordinates");

  auto* imp = app.add_subcommand("impulse", "emit the impulse response to CSV");
  add_common(imp, false);
  imp->add_option("--k", k_max, "largest lag (default 50)");

  auto* rec = app.add_subcommand("reconstruct",
                                 "reconstruct the latent path from observations");
  add_common(rec, false);
  rec->add_option("--data", data_path, "observation CSV with a 'y' column")->required();

  auto* fit = app.add_subcommand("fit", "QMLE fit started at the config parameters");
  add_common(fit, false);
  fit->add_option("--data", data_path, "observation CSV with a 'y' column")->required();
  fit->add_option("--discard", discard, "likelihood terms to drop (default 100)");

  auto* prof = app.add_subcommand("profile",
                                  "log-likelihood along the equivalence curve");
  add_common(prof, false);
  prof->add_option("--data", data_path, "observation CSV with a 'y' column")->required();
  prof->add_option("--d", d_spec, "comma-separated curve coordinates");
  prof->add_option("--discard", discard, "likelihood terms to drop (default 100)");

  auto* dia = app.add_subcommand("diag", "invertibility and moment diagnostics");
  add_common(dia, false);
  dia->add_option("--k", k_max, "Lipschitz horizon (default 50)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    if (n_override) cfg.n = *n_override;
    if (burnin_override) cfg.burn_in = *burnin_override;
    if (tol_override) cfg.tol = *tol_override;
    if (cfg.n < 1 || cfg.burn_in < 0 || !(cfg.tol > 0.0))
      throw ConfigError("n must be >= 1, burn_in >= 0 and tol > 0");

    if (sim->parsed()) return cmd_simulate(cfg, out_path, force);
    if (chk->parsed()) return cmd_check(cfg, out_path);
    if (crv->parsed()) return cmd_curve(cfg, d_spec, out_path);
    if (imp->parsed()) return cmd_impulse(cfg, k_max, out_path);
    if (rec->parsed()) return cmd_reconstruct(cfg, data_path, out_path);
    if (fit->parsed()) return cmd_fit(cfg, data_path, discard, out_path);
    if (prof->parsed()) return cmd_profile(cfg, data_path, d_spec, discard, out_path);
    if (dia->parsed()) return cmd_diag(cfg, k_max, out_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
