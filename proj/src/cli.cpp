#include "mixedspec/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "mixedspec/determinant_lab.hpp"
#include "mixedspec/errors.hpp"
#include "mixedspec/series_solver.hpp"
#include "mixedspec/spectral.hpp"
#include "mixedspec/verify.hpp"
#include "mixedspec/version.hpp"
#include "sinpi.hpp"

namespace mixedspec {

namespace {

using nlohmann::json;

const char* command_name(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Analyze: return "analyze";
    case Command::Classify: return "classify";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

json default_config() {
  return json{
      {"coefficients", {"1", "2"}},
      {"boundary",
       {{"phi", {{{"type", "sine"}, {"k", 1}, {"amplitude", 1.0}}, {{"type", "zero"}}}},
        {"psi", {{{"type", "zero"}}, {{"type", "zero"}}}}}},
      {"tolerances",
       {{"quadrature", 1e-12}, {"degeneracy", 1e-8}, {"series", 1e-6}}},
      {"k_cap", 128},
      {"grid", {{"nx", 41}, {"ny", 81}}},
      {"kmax", 50},
      {"seed", 1},
  };
}

std::string coefficient_string(const json& entry) {
  if (entry.is_string()) return entry.get<std::string>();
  if (entry.is_number_integer()) return std::to_string(entry.get<long long>());
  if (entry.is_number_float()) return format_double(entry.get<double>());
  throw ConfigError("coefficient entries must be strings or numbers");
}

double json_number(const json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

BoundaryFn boundary_from_json(const json& entry) {
  if (!entry.is_object() || !entry.contains("type"))
    throw ConfigError("boundary entries must be objects with a \"type\" field");
  const std::string type = entry.at("type").get<std::string>();

  if (type == "zero") return [](double) { return 0.0; };

  if (type == "sine") {
    const int k = entry.value("k", 1);
    const double amp = entry.value("amplitude", 1.0);
    if (k < 1) throw ConfigError("sine boundary needs k >= 1");
    return [k, amp](double x) { return amp * detail::sin_pi(k * x); };
  }

  if (type == "poly") {
    if (!entry.contains("coeffs") || !entry.at("coeffs").is_array())
      throw ConfigError("poly boundary needs a \"coeffs\" array");
    std::vector<double> cs;
    for (const auto& c : entry.at("coeffs")) cs.push_back(json_number(c, "poly coefficient"));
    return [cs](double x) {
      double acc = 0.0;
      for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
  }

  if (type == "bump") {
    const double center = entry.value("center", 0.5);
    const double width = entry.value("width", 0.25);
    const double amp = entry.value("amplitude", 1.0);
    if (!(width > 0)) throw ConfigError("bump boundary needs a positive width");
    return [center, width, amp](double x) {
      const double t = (x - center) / width;
      if (std::abs(t) >= 1.0) return 0.0;
      return amp * std::exp(1.0 - 1.0 / (1.0 - t * t));
    };
  }

  if (type == "modes") {
    if (!entry.contains("coefficients") || !entry.at("coefficients").is_array())
      throw ConfigError("modes boundary needs a \"coefficients\" array");
    std::vector<double> bs;
    for (const auto& b : entry.at("coefficients"))
      bs.push_back(json_number(b, "mode coefficient"));
    return [bs](double x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < bs.size(); ++k)
        acc += bs[k] * std::numbers::sqrt2 * detail::sin_pi((k + 1) * x);
      return acc;
    };
  }

  if (type == "sum") {
    if (!entry.contains("terms") || !entry.at("terms").is_array())
      throw ConfigError("sum boundary needs a \"terms\" array");
    std::vector<BoundaryFn> fns;
    for (const auto& t : entry.at("terms")) fns.push_back(boundary_from_json(t));
    return [fns](double x) {
      double acc = 0.0;
      for (const auto& f : fns) acc += f(x);
      return acc;
    };
  }

  throw ConfigError("unknown boundary type \"" + type + "\"");
}

RunConfig load_run_config(Command cmd, const std::string& config_path,
                          const CliOverrides& overrides) {
  json cfg;
  if (config_path.empty()) {
    cfg = default_config();
  } else {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      throw ConfigError("config parse failure in '" + config_path + "': " + e.what());
    }
  }
  if (!cfg.is_object()) throw ConfigError("config root must be a JSON object");

  // Resolve against defaults so the echoed document is self-contained.
  json resolved = default_config();
  try {
    if (cfg.contains("coefficients")) {
      resolved["coefficients"] = cfg.at("coefficients");
      // the demo boundary is sized for the demo coefficients; a config that
      // replaces one without the other gets zero data, not a stale mismatch
      resolved["boundary"] = json::object();
    }
    if (cfg.contains("boundary")) resolved["boundary"] = cfg.at("boundary");
    for (const char* key : {"quadrature", "degeneracy", "series"})
      if (cfg.contains("tolerances") && cfg.at("tolerances").contains(key))
        resolved["tolerances"][key] = cfg.at("tolerances").at(key);
    for (const char* key : {"k_cap", "kmax", "seed"})
      if (cfg.contains(key)) resolved[key] = cfg.at(key);
    for (const char* key : {"nx", "ny"})
      if (cfg.contains("grid") && cfg.at("grid").contains(key))
        resolved["grid"][key] = cfg.at("grid").at(key);

    if (overrides.kmax) {
      resolved["kmax"] = *overrides.kmax;
      resolved["k_cap"] = std::max(resolved["k_cap"].get<int>(), *overrides.kmax);
    }
    if (overrides.seed) resolved["seed"] = *overrides.seed;

    RunConfig rc;
    rc.command = cmd;
    rc.quiet = overrides.quiet;
    if (overrides.out) rc.out_dir = *overrides.out;

    if (!resolved.at("coefficients").is_array() || resolved.at("coefficients").empty())
      throw ConfigError("config needs a nonempty \"coefficients\" array");
    std::vector<std::string> entries;
    for (const auto& e : resolved.at("coefficients")) entries.push_back(coefficient_string(e));
    for (std::size_t i = 0; i < entries.size(); ++i) resolved["coefficients"][i] = entries[i];
    rc.problem.coefficients = make_coefficients(entries);

    const int n = rc.problem.coefficients.n;
    json bnd = resolved.value("boundary", json::object());
    json phi = bnd.value("phi", json::array());
    json psi = bnd.value("psi", json::array());
    if (static_cast<int>(phi.size()) > n || static_cast<int>(psi.size()) > n)
      throw ConfigError("boundary lists more functions than coefficients");
    while (static_cast<int>(phi.size()) < n) phi.push_back(json{{"type", "zero"}});
    while (static_cast<int>(psi.size()) < n) psi.push_back(json{{"type", "zero"}});
    resolved["boundary"] = {{"phi", phi}, {"psi", psi}};
    for (const auto& e : phi) rc.problem.boundary.phi.push_back(boundary_from_json(e));
    for (const auto& e : psi) rc.problem.boundary.psi.push_back(boundary_from_json(e));

    rc.problem.tolerances.quadrature =
        json_number(resolved["tolerances"]["quadrature"], "quadrature tolerance");
    rc.problem.tolerances.degeneracy =
        json_number(resolved["tolerances"]["degeneracy"], "degeneracy tolerance");
    rc.problem.tolerances.series =
        json_number(resolved["tolerances"]["series"], "series tolerance");
    rc.problem.k_cap = resolved["k_cap"].get<int>();
    rc.grid_nx = resolved["grid"]["nx"].get<int>();
    rc.grid_ny = resolved["grid"]["ny"].get<int>();
    rc.kmax = resolved["kmax"].get<int>();
    rc.seed = resolved["seed"].get<std::uint64_t>();
    if (rc.grid_nx < 2 || rc.grid_ny < 3) throw ConfigError("grid needs nx >= 2, ny >= 3");
    if (rc.kmax < 1) throw ConfigError("kmax must be at least 1");

    rc.resolved = std::move(resolved);
    return rc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + p.string() + "'");
  out << content;
  if (!out) throw Error("write failure on '" + p.string() + "'");
}

json base_report(const RunConfig& cfg) {
  return json{{"version", kVersion},
              {"command", command_name(cfg.command)},
              {"config", cfg.resolved}};
}

json regime_report(const Coefficients& c, int kmax) {
  json out;
  out["regime"] = regime_name(c.regime);
  if (c.regime != Regime::Floating) {
    const RegimeAnalysis ra = rational_min_delta2(c);
    out["lcm_denominator"] = ra.lcm_denominator;
    out["period"] = ra.period;
    out["min_abs_delta2"] = ra.min_abs_delta2;
    out["zero_residues"] = ra.zero_residues;
  } else {
    const SmallDenominatorEstimate est = estimate_gamma(c, std::max(100, kmax));
    out["M_fit"] = est.M_fit;
    out["gamma_fit"] = est.gamma_fit;
    out["k_scanned"] = est.k_scanned;
    out["violations"] = est.violations;
    out["zero_modes"] = est.zero_modes;
  }
  return out;
}

int run_solve(const RunConfig& cfg) {
  const SeriesSolution sol = solve_dirichlet(cfg.problem);
  const Coefficients& c = cfg.problem.coefficients;

  std::ostringstream csv;
  csv << "x,y,u\n";
  for (int j = 0; j < cfg.grid_ny; ++j) {
    const double y = -1.0 + 2.0 * j / (cfg.grid_ny - 1);
    for (int i = 0; i < cfg.grid_nx; ++i) {
      const double x = static_cast<double>(i) / (cfg.grid_nx - 1);
      csv << format_double(x) << ',' << format_double(y) << ','
          << format_double(evaluate(sol, c, x, y)) << '\n';
    }
  }
  write_file(std::filesystem::path(cfg.out_dir) / "field.csv", csv.str());

  double worst_matching = 0.0;
  int solved = 0;
  for (const auto& m : sol.modes)
    if (m) {
      worst_matching = std::max(worst_matching, matching_residual(*m, c));
      ++solved;
    }

  json rep = base_report(cfg);
  rep["results"] = {{"K", sol.K},
                    {"solved_modes", solved},
                    {"tail_bound", sol.tail_bound},
                    {"max_matching_residual", worst_matching}};
  rep["results"]["degenerate_modes"] = json::array();
  for (const auto& d : sol.degenerate_modes)
    rep["results"]["degenerate_modes"].push_back({{"k", d.k},
                                                  {"data_orthogonal", d.data_orthogonal},
                                                  {"homogeneous_dim", d.homogeneous_dim}});
  write_file(std::filesystem::path(cfg.out_dir) / "report.json", rep.dump(2) + "\n");

  if (!cfg.quiet)
    std::cout << "solve: K=" << sol.K << " solved_modes=" << solved
              << " tail_bound=" << format_double(sol.tail_bound) << '\n';
  return 0;
}

int run_analyze(const RunConfig& cfg) {
  const Coefficients& c = cfg.problem.coefficients;
  const int kmax = cfg.kmax;
  std::vector<bool> deg(kmax + 1, false);
  for (const auto& d :
       find_degenerate_modes(c, kmax, cfg.problem.tolerances.degeneracy))
    deg[d.k] = true;

  std::ostringstream csv;
  csv << "k,log_delta1,delta_ratio,delta2_closed,degenerate\n";
  for (int k = 1; k <= kmax; ++k) {
    csv << k << ',' << format_double(log_delta1(k, c)) << ','
        << format_double(delta_ratio(k, c)) << ','
        << format_double(delta2_closed_form(k, c)) << ',' << (deg[k] ? 1 : 0) << '\n';
  }
  write_file(std::filesystem::path(cfg.out_dir) / "determinants.csv", csv.str());

  json rep = base_report(cfg);
  rep["results"] = regime_report(c, kmax);
  json dl = json::array();
  for (int k = 1; k <= kmax; ++k)
    if (deg[k]) dl.push_back(k);
  rep["results"]["degenerate_modes"] = dl;
  write_file(std::filesystem::path(cfg.out_dir) / "report.json", rep.dump(2) + "\n");

  if (!cfg.quiet)
    std::cout << "analyze: k=1.." << kmax << " degenerate_count=" << dl.size() << '\n';
  return 0;
}

int run_classify(const RunConfig& cfg) {
  const Coefficients& c = cfg.problem.coefficients;
  json rep = base_report(cfg);
  rep["results"] = regime_report(c, cfg.kmax);
  rep["results"]["n"] = c.n;
  rep["results"]["a"] = c.a;

  double gamma = 0.0;
  if (c.regime == Regime::Floating)
    gamma = rep["results"]["gamma_fit"].get<double>();
  const SmoothnessReport sm = smoothness_check(cfg.problem.boundary, c.n, gamma);
  rep["results"]["smoothness"] = {{"order_checked", sm.order_checked},
                                  {"failures", json::array()}};
  for (const auto& f : sm.failures)
    rep["results"]["smoothness"]["failures"].push_back({{"function", f.function_id},
                                                        {"order", f.order},
                                                        {"endpoint", f.endpoint},
                                                        {"magnitude", f.magnitude}});
  write_file(std::filesystem::path(cfg.out_dir) / "report.json", rep.dump(2) + "\n");

  if (!cfg.quiet)
    std::cout << "classify: regime=" << regime_name(c.regime)
              << " smoothness_failures=" << sm.failures.size() << '\n';
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const Coefficients& c = cfg.problem.coefficients;
  json rep = base_report(cfg);
  json suites = json::array();
  bool all_pass = true;

  auto emit = [&](const std::string& name, bool pass, json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    suites.push_back(detail);
    all_pass = all_pass && pass;
    if (!cfg.quiet)
      std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << '\n';
  };

  {
    double worst = 0.0;
    for (double a : {1.0, 0.75, 1.41421356237})
      worst = std::max(worst,
                       oracle_compare_n1(a, std::min(cfg.kmax, 50), 5, cfg.seed));
    emit("oracle-closed-form-n1", worst <= 1e-8, {{"max_deviation", worst}});
  }

  {
    double worst = 0.0;
    for (int k : {1, 5}) {
      const ManufacturedCase mc = manufactured_case(k, c, cfg.seed + k);
      const ModeSystem sys = assemble_mode_system(k, c, mc.phi_k, mc.psi_k);
      const ModeSolution m = solve_mode(sys, cfg.problem.tolerances.degeneracy);
      double scale = 1.0;
      for (int i = 0; i < 2 * c.n; ++i)
        scale = std::max({scale, std::abs(mc.exact_mode.c_hat(i)),
                          std::abs(mc.exact_mode.d(i))});
      for (int i = 0; i < 2 * c.n; ++i) {
        worst = std::max(worst, std::abs(m.c_hat(i) - mc.exact_mode.c_hat(i)) / scale);
        worst = std::max(worst, std::abs(m.d(i) - mc.exact_mode.d(i)) / scale);
      }
    }
    emit("manufactured-mode-roundtrip", worst <= 1e-8, {{"max_deviation", worst}});
  }

  {
    const SeriesSolution sol = solve_dirichlet(cfg.problem);
    const ResidualReport rr = fd_residual(sol, c, 1.0 / 32);
    const bool pass = rr.convergence_order_elliptic > 1.5 &&
                      rr.convergence_order_elliptic < 2.5 &&
                      rr.convergence_order_hyperbolic > 1.5 &&
                      rr.convergence_order_hyperbolic < 2.5;
    emit("fd-residual-order", pass,
         {{"h", rr.h},
          {"residual_elliptic", rr.interior_max_residual_elliptic},
          {"residual_hyperbolic", rr.interior_max_residual_hyperbolic},
          {"order_elliptic", rr.convergence_order_elliptic},
          {"order_hyperbolic", rr.convergence_order_hyperbolic}});
  }

  {
    const SpectralBoundary sp = boundary_spectrum(cfg.problem.boundary, c.n, cfg.kmax,
                                                  cfg.problem.tolerances.quadrature);
    const Theorem2Fit half = theorem2_check(c, sp, 1, std::max(1, cfg.kmax / 2));
    const Theorem2Fit full = theorem2_check(c, sp, 1, cfg.kmax);
    const bool pass = std::isfinite(full.M) && full.M > 0 &&
                      (full.M - half.M) <= 0.25 * full.M;
    emit("mode-growth-constant", pass,
         {{"M_half_range", half.M},
          {"M_full_range", full.M},
          {"witness_k", full.witness_k},
          {"witness_j", full.witness_j}});
  }

  rep["results"] = {{"suites", suites}, {"all_pass", all_pass}};
  write_file(std::filesystem::path(cfg.out_dir) / "report.json", rep.dump(2) + "\n");
  return all_pass ? 0 : 4;
}

int dispatch(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  switch (cfg.command) {
    case Command::Solve: return run_solve(cfg);
    case Command::Analyze: return run_analyze(cfg);
    case Command::Classify: return run_classify(cfg);
    case Command::Verify: return run_verify(cfg);
  }
  return 4;
}

int map_failure(const char* what, int code, bool quiet) {
  if (!quiet) std::cerr << "error: " << what << '\n';
  return code;
}

}

int run(const RunConfig& cfg) {
  try {
    return dispatch(cfg);
  } catch (const DegenerateUnsolvable& e) {
    return map_failure(e.what(), 2, false);
  } catch (const ConfigError& e) {
    return map_failure(e.what(), 3, false);
  } catch (const std::invalid_argument& e) {
    return map_failure(e.what(), 3, false);
  } catch (const Error& e) {
    return map_failure(e.what(), 4, false);
  } catch (const std::exception& e) {
    return map_failure(e.what(), 4, false);
  }
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"sine-series solver for the factored mixed elliptic-hyperbolic Dirichlet problem"};
  app.require_subcommand(1);

  std::string config_path;
  CliOverrides ov;
  int kmax = 0;
  std::uint64_t seed = 0;
  std::string out_dir;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* copt = sub->add_option("--config", config_path, "JSON problem configuration");
    if (config_required) copt->required();
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--kmax", kmax, "mode cap / scan range override");
    sub->add_option("--seed", seed, "seed for randomized suites");
    sub->add_flag("--quiet", ov.quiet, "suppress stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet problem and sample the field");
  CLI::App* analyze = app.add_subcommand("analyze", "scan the mode determinants");
  CLI::App* classify = app.add_subcommand("classify", "report coefficient regime and data smoothness");
  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suites");
  add_common(solve, true);
  add_common(analyze, true);
  add_common(classify, true);
  add_common(verify, false);

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  Command cmd = Command::Verify;
  CLI::App* active = verify;
  if (solve->parsed()) { cmd = Command::Solve; active = solve; }
  else if (analyze->parsed()) { cmd = Command::Analyze; active = analyze; }
  else if (classify->parsed()) { cmd = Command::Classify; active = classify; }

  if (active->count("--out")) ov.out = out_dir;
  if (active->count("--kmax")) ov.kmax = kmax;
  if (active->count("--seed")) ov.seed = seed;

  try {
    return run(load_run_config(cmd, config_path, ov));
  } catch (const ConfigError& e) {
    return map_failure(e.what(), 3, false);
  } catch (const std::exception& e) {
    return map_failure(e.what(), 4, false);
  }
}

}
