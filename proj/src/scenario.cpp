#include "ionsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "CLI11.hpp"
#include "ionsim/analytic.hpp"
#include "ionsim/errors.hpp"

namespace ionsim {

namespace {

const std::set<std::string> kModelTags = {"exact_eq2", "full_eq1", "lir_eq5", "mir_eq8",
                                          "dispersive_eq10"};

std::string fmt_g(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.15g", v);
  return b;
}

std::vector<std::string> split_models(const std::string& list) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t next = list.find(',', pos);
    const std::string tok = list.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty()) throw config_error("models: empty entry in list '" + list + "'");
    if (!kModelTags.count(tok))
      throw config_error("models: unknown model '" + tok +
                         "' (valid: exact_eq2, full_eq1, lir_eq5, mir_eq8, dispersive_eq10)");
    if (std::find(out.begin(), out.end(), tok) == out.end()) out.push_back(tok);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

bool wants(const ScenarioConfig& cfg, const char* tag) {
  return std::find(cfg.models.begin(), cfg.models.end(), tag) != cfg.models.end();
}

// fill in derived quantities: the missing optical frequency and the grid span
void normalize(ScenarioConfig& cfg) {
  ModelParams& p = cfg.params;
  if (p.has_omega_a && !p.has_omega_l) {
    p.omega_l = p.omega_a - p.delta();
    p.has_omega_l = true;
  } else if (p.has_omega_l && !p.has_omega_a) {
    p.omega_a = p.omega_l + p.delta();
    p.has_omega_a = true;
  }
  if (cfg.tmax <= 0.0) cfg.tmax = 100.0 / std::max(p.nu, p.omega);
}

double full_norm_bound(const ModelParams& p, const FockDim& dim) {
  return p.nu * dim.n_max + 0.5 * p.omega_a + 2.0 * p.omega;
}

template <typename E>
[[noreturn]] void rethrow_tagged(const std::string& tag, const E& e) {
  throw E("model " + tag + ": " + e.what());
}

}  // namespace

ScenarioConfig parse_config(const std::vector<std::string>& args) {
  ScenarioConfig cfg;
  ModelParams& p = cfg.params;
  CLI::App app{"trapped-ion dynamics: exact and approximate excitation curves on a shared grid"};
  app.set_config("--config", "", "flat key=value file with the same keys as the flags");

  app.add_option("--nu", p.nu, "trap frequency (sets the time unit)")->required();
  app.add_option("--omega", p.omega, "laser-ion coupling strength")->required();
  app.add_option("--eta", p.eta, "Lamb-Dicke parameter")->required();
  int k = 0;
  double delta = 0.0;
  auto* kopt = app.add_option("--k", k, "integer sideband index (detuning = k*nu)");
  auto* dopt = app.add_option("--delta", delta, "detuning as a free real number");
  kopt->excludes(dopt);
  dopt->excludes(kopt);
  double omega_a = 0.0, omega_l = 0.0;
  auto* aopt = app.add_option("--omega-a", omega_a, "atomic transition frequency (full_eq1)");
  auto* lopt = app.add_option("--omega-l", omega_l, "laser frequency (full_eq1)");
  int n_max = -1, guard = -1;
  app.add_option("--dim", n_max, "Fock truncation n_max (default 40 below omega=nu, else 60)");
  app.add_option("--guard", guard, "guard band excluded from exactness checks (default 4)");
  app.add_option("--init", cfg.init, "initial state: e0 | g0 | e:<n> | g:<n> | ecoh:<x>");
  // bound as a delimited vector so a comma list survives both the command
  // line and the config file (the config reader splits on commas itself)
  std::vector<std::string> model_items;
  app.add_option("--models", model_items,
                 "comma list of exact_eq2,full_eq1,lir_eq5,mir_eq8,dispersive_eq10")
      ->delimiter(',');
  app.add_option("--tmax", cfg.tmax, "grid end time (default 100 / max(nu, omega))");
  app.add_option("--samples", cfg.samples, "grid point count, endpoints included");
  app.add_option("--step", cfg.step, "full_eq1 substep (default 0.08 / norm bound)");
  app.add_option("--out", cfg.out, "CSV output path; report goes to <out>.report.txt")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("ionsim");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_store.size());
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw help_requested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw config_error(e.what());
  }

  if (dopt->count() > 0) {
    p.has_k = false;
    p.delta_value = delta;
  } else {
    p.has_k = true;
    p.k = k;
  }
  if (aopt->count() > 0) {
    p.has_omega_a = true;
    p.omega_a = omega_a;
  }
  if (lopt->count() > 0) {
    p.has_omega_l = true;
    p.omega_l = omega_l;
  }
  if (n_max >= 0) cfg.dim.n_max = n_max;
  else cfg.dim.n_max = (p.omega / p.nu < 1.0) ? 40 : 60;
  if (guard >= 0) cfg.dim.guard = guard;
  std::string models = "exact_eq2";
  if (!model_items.empty()) {
    models.clear();
    for (std::size_t i = 0; i < model_items.size(); ++i) {
      if (i > 0) models += ',';
      models += model_items[i];
    }
  }
  cfg.models = split_models(models);
  const CLI::Option* copt = app.get_config_ptr();
  if (copt != nullptr && copt->count() > 0) cfg.config_path = copt->as<std::string>();

  validate(p);
  validate(cfg.dim);
  if (cfg.samples < 2) throw config_error("samples must be >= 2");
  if (cfg.tmax < 0.0 || (app.count("--tmax") > 0 && !(cfg.tmax > 0.0)))
    throw config_error("tmax must be > 0");
  if (cfg.step < 0.0) throw config_error("step must be > 0 when given");
  if (wants(cfg, "full_eq1") && !p.has_omega_a && !p.has_omega_l)
    throw config_error("full_eq1 requires --omega-a or --omega-l");
  normalize(cfg);
  init_state(cfg.init, cfg.dim);  // reject malformed initial states at parse time
  return cfg;
}

ComparisonReport compare(const TimeSeries& a, const TimeSeries& b) {
  if (a.t.size() != b.t.size()) throw precondition_error("compare: grids differ in length");
  for (std::size_t i = 0; i < a.t.size(); ++i)
    if (a.t[i] != b.t[i]) throw precondition_error("compare: grids differ at sample " + std::to_string(i));
  if (a.t.empty()) throw precondition_error("compare: empty grid");
  ComparisonReport r;
  r.model_a = a.model_tag;
  r.model_b = b.model_tag;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    const double d = std::abs(a.pe[i] - b.pe[i]);
    sq += d * d;
    if (d > r.sup_norm) {
      r.sup_norm = d;
      r.t_at_max_diff = a.t[i];
    }
  }
  r.rms = std::sqrt(sq / static_cast<double>(a.t.size()));
  return r;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioConfig c = cfg;
  validate(c.params);
  validate(c.dim);
  if (c.models.empty()) throw config_error("models must be non-empty");
  for (const auto& m : c.models)
    if (!kModelTags.count(m)) throw config_error("unknown model '" + m + "'");
  if (c.samples < 2) throw config_error("samples must be >= 2");
  normalize(c);
  const ModelParams& p = c.params;

  ScenarioResult r;
  if (wants(c, "lir_eq5") && p.omega >= p.nu)
    r.warnings.push_back("lir_eq5: omega >= nu is outside the low-intensity regime; "
                         "the closed form is diagnostic only here");
  if (wants(c, "dispersive_eq10")) {
    const CouplingConstants cc = [&] {
      try {
        return coupling_constants(p);
      } catch (const precondition_error& e) {
        rethrow_tagged("dispersive_eq10", e);
      }
    }();
    const double xm = std::max(std::abs(cc.xi1), std::abs(cc.xi2));
    if (xm > 0.15)
      r.warnings.push_back("dispersive_eq10: elimination angle " + fmt_g(xm) +
                           " exceeds 0.15; first-order accuracy degrades");
  }
  if (wants(c, "full_eq1") && !(p.has_omega_a && p.has_omega_l))
    throw config_error("full_eq1 requires omega-a or omega-l");
  if (wants(c, "full_eq1") && c.step <= 0.0) c.step = 0.08 / full_norm_bound(p, c.dim);

  const std::vector<double> grid = uniform_grid(c.tmax, c.samples);
  if (wants(c, "exact_eq2")) {
    r.convergence = convergence_check(p, c.dim, grid, c.init);
    r.convergence_ran = true;
    if (!r.convergence.pass)
      r.warnings.push_back("exact_eq2: truncation convergence sup_diff=" +
                           fmt_g(r.convergence.sup_diff) + " exceeds 1e-6; increase --dim");
  }

  const StateVector psi0 = init_state(c.init, c.dim);
  for (const auto& tag : c.models) {
    try {
      TimeSeries ts;
      if (tag == "exact_eq2") {
        ts = evolve_series(h_ion(p, c.dim), psi0, grid);
        ts.model_tag = "exact_eq2";
        ts.params = p;
      } else if (tag == "full_eq1") {
        ts = evolve_timedep(p, psi0, grid, c.step, c.dim);
      } else if (tag == "lir_eq5") {
        ts = lir_pe(p, psi0, grid, c.dim);
      } else if (tag == "mir_eq8") {
        ts = mir_pe(p, psi0, grid, c.dim);
      } else {
        ts = dispersive_pe(p, psi0, grid, c.dim);
      }
      ts.dim = c.dim;
      r.series.push_back(std::move(ts));
    } catch (const config_error& e) {
      rethrow_tagged(tag, e);
    } catch (const precondition_error& e) {
      rethrow_tagged(tag, e);
    } catch (const numerical_error& e) {
      rethrow_tagged(tag, e);
    }
  }

  for (std::size_t i = 0; i < r.series.size(); ++i)
    for (std::size_t j = i + 1; j < r.series.size(); ++j)
      r.comparisons.push_back(compare(r.series[i], r.series[j]));

  if (!c.out.empty()) {
    write_csv(c.out, r.series);
    write_report(c.out + ".report.txt", c, r);
  }
  return r;
}

void write_csv(const std::string& path, const std::vector<TimeSeries>& series) {
  if (series.empty()) throw precondition_error("write_csv: no series");
  for (const auto& s : series)
    if (s.t.size() != series[0].t.size() || s.pe.size() != s.t.size())
      throw precondition_error("write_csv: series grids differ");
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw config_error("cannot open output file: " + path);
  std::fputs("t", f);
  for (const auto& s : series) std::fprintf(f, ",%s", s.model_tag.c_str());
  std::fputc('\n', f);
  for (std::size_t i = 0; i < series[0].t.size(); ++i) {
    std::fprintf(f, "%.15g", series[0].t[i]);
    for (const auto& s : series) std::fprintf(f, ",%.15g", s.pe[i]);
    std::fputc('\n', f);
  }
  const bool bad = std::ferror(f) != 0;
  std::fclose(f);
  if (bad) throw config_error("write failed: " + path);
}

void write_report(const std::string& path, const ScenarioConfig& cfg, const ScenarioResult& r) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw config_error("cannot open report file: " + path);
  const ModelParams& p = cfg.params;
  std::fprintf(f, "nu=%s\nomega=%s\neta=%s\n", fmt_g(p.nu).c_str(), fmt_g(p.omega).c_str(),
               fmt_g(p.eta).c_str());
  if (p.has_k) std::fprintf(f, "k=%d\n", p.k);
  else std::fprintf(f, "delta=%s\n", fmt_g(p.delta_value).c_str());
  if (p.has_omega_a) std::fprintf(f, "omega_a=%s\n", fmt_g(p.omega_a).c_str());
  if (p.has_omega_l) std::fprintf(f, "omega_l=%s\n", fmt_g(p.omega_l).c_str());
  std::fprintf(f, "n_max=%d\nguard=%d\ninit=%s\n", cfg.dim.n_max, cfg.dim.guard, cfg.init.c_str());
  std::fputs("models=", f);
  for (std::size_t i = 0; i < cfg.models.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", cfg.models[i].c_str());
  std::fputc('\n', f);
  std::fprintf(f, "tmax=%s\nsamples=%d\n", fmt_g(cfg.tmax).c_str(), cfg.samples);
  if (cfg.step > 0.0) std::fprintf(f, "step=%s\n", fmt_g(cfg.step).c_str());
  std::fprintf(f, "convergence.ran=%d\n", r.convergence_ran ? 1 : 0);
  if (r.convergence_ran) {
    std::fprintf(f, "convergence.n_max_lo=%d\nconvergence.n_max_hi=%d\n", r.convergence.n_max_lo,
                 r.convergence.n_max_hi);
    std::fprintf(f, "convergence.sup_diff=%s\nconvergence.pass=%d\n",
                 fmt_g(r.convergence.sup_diff).c_str(), r.convergence.pass ? 1 : 0);
  }
  for (const auto& cr : r.comparisons) {
    const std::string key = "compare." + cr.model_a + "." + cr.model_b;
    std::fprintf(f, "%s.sup_norm=%s\n", key.c_str(), fmt_g(cr.sup_norm).c_str());
    std::fprintf(f, "%s.rms=%s\n", key.c_str(), fmt_g(cr.rms).c_str());
    std::fprintf(f, "%s.t_at_max_diff=%s\n", key.c_str(), fmt_g(cr.t_at_max_diff).c_str());
  }
  std::fprintf(f, "warnings.count=%zu\n", r.warnings.size());
  for (std::size_t i = 0; i < r.warnings.size(); ++i)
    std::fprintf(f, "warning.%zu=%s\n", i + 1, r.warnings[i].c_str());
  const bool bad = std::ferror(f) != 0;
  std::fclose(f);
  if (bad) throw config_error("write failed: " + path);
}

}  // namespace ionsim
