// Command-line driver: dispatches one experiment per invocation and writes
// CSV plot data plus a JSON summary that embeds the fully resolved config.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rigidlab/asymptotics.hpp"
#include "rigidlab/cocycle_k.hpp"
#include "rigidlab/cocycles.hpp"
#include "rigidlab/config.hpp"
#include "rigidlab/equilibrium.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/reports.hpp"
#include "rigidlab/suspension.hpp"
#include "rigidlab/toral.hpp"
#include "rigidlab/verify.hpp"

namespace {

using nlohmann::json;
using namespace rigidlab;

json field_json(const ScalarField& f) { return json(field_lines(f)); }
json weight_json(const FiberWeight& w) { return json(weight_lines(w)); }

/// Resolved-config echo shared by every summary.  Deliberately excludes the
/// --threads and --out flags: outputs must be byte-identical across both.
json config_echo(const ExperimentConfig& c) {
  json j;
  j["matrix"] = {c.matrix[0], c.matrix[1], c.matrix[2], c.matrix[3]};
  j["roof"] = field_json(c.roof);
  j["roof2"] = c.roof2 ? field_json(*c.roof2) : json(nullptr);
  j["weight"] = weight_json(c.weight);
  j["weight2"] = c.weight2 ? weight_json(*c.weight2) : json(nullptr);
  j["tilt"] = c.tilt ? field_json(*c.tilt) : json(nullptr);
  j["k_max"] = c.k_max;
  j["n_lo"] = c.n_lo;
  j["n_hi"] = c.n_hi;
  j["n"] = c.n;
  j["m"] = {c.m[0], c.m[1]};
  j["t"] = c.t;
  j["delta"] = c.delta;
  j["t_max"] = c.t_max.value_or(c.t);
  j["t_step"] = c.t_step.value_or(c.delta);
  j["h0"] = c.h0;
  j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
  j["b_kind"] = c.b_kind;
  j["b_rate"] = c.b_rate;
  j["b_offset"] = c.b_offset;
  j["method"] = c.method;
  return j;
}

void write_json(const std::string& out, const std::string& name, const json& j) {
  write_text_file(out, name, j.dump(2) + "\n");
}

SuspensionFlow flow_from(const ExperimentConfig& c) {
  return make_suspension(make_automorphism(c.matrix), c.roof);
}

BowenWeight bowen_weight_from(const ExperimentConfig& c) {
  BowenWeight w;
  if (c.b_kind == "zero") {
    w.kind = BowenWeight::Kind::zero;
  } else if (c.b_kind == "minus_log_ju") {
    w.kind = BowenWeight::Kind::minus_log_ju;
  } else {
    w.kind = BowenWeight::Kind::constant_rate;
  }
  w.rate = c.b_rate;
  w.offset = c.b_offset;
  return w;
}

std::string frac_x(const RationalPoint& p) { return fraction(p.num_x, p.den); }
std::string frac_y(const RationalPoint& p) { return fraction(p.num_y, p.den); }

int cmd_enumerate(const ExperimentConfig& cfg, const std::string& out) {
  const ToralAutomorphism a = make_automorphism(cfg.matrix);
  const OrbitCatalog catalog = enumerate_periodic_orbits(a, cfg.k_max);
  CsvTable table({"k", "rep_x", "rep_y"});
  catalog.for_each([&](const MapOrbit& o) {
    table.add_row({std::to_string(o.prime_period), frac_x(o.representative()),
                   frac_y(o.representative())});
  });
  write_text_file(out, "enumerate_orbits.csv", table.text());

  json counts = json::array();
  for (int k = 1; k <= catalog.k_max(); ++k) {
    counts.push_back(catalog.orbits(k).size());
  }
  json j;
  j["command"] = "enumerate";
  j["config"] = config_echo(cfg);
  j["orbit_counts"] = counts;
  j["total_orbits"] = catalog.total_orbits();
  write_json(out, "enumerate_summary.json", j);
  return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg, const std::string& out) {
  const SuspensionFlow flow = flow_from(cfg);
  const OrbitCatalog catalog = enumerate_periodic_orbits(flow.base(), cfg.k_max);
  CsvTable table({"k", "rep_x", "rep_y", "period", "exponent", "multiplier"});
  double min_period = 0.0, max_period = 0.0;
  bool first = true;
  catalog.for_each([&](const MapOrbit& o) {
    const FlowOrbitData d = orbit_flow_data(flow, o);
    table.add_row({std::to_string(o.prime_period), frac_x(o.representative()),
                   frac_y(o.representative()), format_double(d.period),
                   format_double(d.exponent), format_double(d.multiplier)});
    min_period = first ? d.period : std::min(min_period, d.period);
    max_period = first ? d.period : std::max(max_period, d.period);
    first = false;
  });
  write_text_file(out, "spectrum_orbits.csv", table.text());

  json j;
  j["command"] = "spectrum";
  j["config"] = config_echo(cfg);
  j["total_orbits"] = catalog.total_orbits();
  j["min_period"] = min_period;
  j["max_period"] = max_period;
  write_json(out, "spectrum_summary.json", j);
  return 0;
}

int cmd_cocycle(const ExperimentConfig& cfg, const std::string& out) {
  const SuspensionFlow flow = flow_from(cfg);
  const OrbitCatalog catalog = enumerate_periodic_orbits(flow.base(), cfg.k_max);
  const bool analytic = cfg.method != "fd";
  const bool fd = cfg.method != "analytic";

  CsvTable table({"k", "rep_x", "rep_y", "T1", "T2", "I1", "I2", "gap", "chi_gap"});
  double max_gap = 0.0, max_tilt = 0.0;
  std::int64_t rows = 0;
  catalog.for_each([&](const MapOrbit& o) {
    const double period = orbit_period(flow, o);
    double i1 = 0.0, i2 = 0.0;
    if (analytic) {
      i1 = longitudinal_cocycle(flow, o, cfg.weight, CocycleMethod::analytic).value;
    }
    if (fd) {
      i2 = longitudinal_cocycle(flow, o, cfg.weight, CocycleMethod::finite_difference,
                                cfg.h0)
               .value;
    }
    if (!analytic) i1 = i2;
    if (!fd) i2 = i1;
    const double gap = std::abs(i1 - i2);
    max_gap = std::max(max_gap, gap);
    table.add_row({std::to_string(o.prime_period), frac_x(o.representative()),
                   frac_y(o.representative()), format_double(period),
                   format_double(period), format_double(i1), format_double(i2),
                   format_double(gap), format_double(0.0)});
    ++rows;
    if (cfg.tilt) {
      const TransversalCheck chk =
          transversal_independence_check(flow, o, *cfg.tilt, cfg.h0);
      max_tilt = std::max(max_tilt, chk.discrepancy);
    }
  });
  write_text_file(out, "cocycle_values.csv", table.text());

  json j;
  j["command"] = "cocycle";
  j["config"] = config_echo(cfg);
  j["rows"] = rows;
  j["max_gap"] = max_gap;
  j["max_tilt_discrepancy"] = cfg.tilt ? json(max_tilt) : json(nullptr);
  write_json(out, "cocycle_summary.json", j);
  return 0;
}

int cmd_homoclinic(const ExperimentConfig& cfg, const std::string& out) {
  const SuspensionFlow flow = flow_from(cfg);
  const HomoclinicPoint h = homoclinic_point(flow.base(), cfg.m);
  const HomoclinicExperiment exp =
      run_homoclinic_experiment(flow, h, cfg.n_lo, cfg.n_hi);
  const ExponentRecovery rec = recover_exponent(exp, exp.t_prime);

  CsvTable table({"n", "log_abs_residual"});
  for (const auto& [n, r] : rec.residuals) {
    table.add_row({std::to_string(n), format_double(std::log(std::abs(r)))});
  }
  write_text_file(out, "homoclinic_residuals.csv", table.text());

  json j;
  j["command"] = "homoclinic";
  j["config"] = config_echo(cfg);
  j["t0"] = exp.t0;
  j["t_prime"] = exp.t_prime;
  j["t_prime_uncertainty"] = exp.t_prime_uncertainty;
  j["log_mu_hat"] = rec.log_mu_hat;
  j["k_is_zero"] = rec.k_is_zero;
  j["fit_residual"] = rec.fit_residual;
  j["gated_count"] = rec.residuals.size();
  write_json(out, "homoclinic_summary.json", j);
  return 0;
}

int cmd_bowen(const ExperimentConfig& cfg, const std::string& out, int threads) {
  const SuspensionFlow flow = flow_from(cfg);
  const BowenWeight b = bowen_weight_from(cfg);
  const double t_max = cfg.t_max.value_or(cfg.t);
  const double t_step = cfg.t_step.value_or(cfg.delta);
  const int steps =
      t_max > cfg.t ? static_cast<int>(std::floor((t_max - cfg.t) / t_step + 1e-9)) : 0;

  CsvTable table({"T", "value"});
  json windows = json::array();
  for (int i = 0; i <= steps; ++i) {
    const double t = cfg.t + i * t_step;
    const PeriodicEnsemble ensemble = build_ensemble(flow, t, cfg.delta, b, threads);
    const MeasureApprox m = approximate_measure(ensemble);
    const double value = bowen_integral(m, cfg.weight);
    table.add_row({format_double(t), format_double(value)});
    json w;
    w["t"] = t;
    w["delta"] = cfg.delta;
    w["orbit_count"] = ensemble.orbit_count();
    w["normalization"] = m.normalization;
    w["value"] = value;
    windows.push_back(w);
  }
  write_text_file(out, "bowen_sweep.csv", table.text());

  json j;
  j["command"] = "bowen";
  j["config"] = config_echo(cfg);
  j["windows"] = windows;
  write_json(out, "bowen_summary.json", j);
  return 0;
}

int cmd_match(const ExperimentConfig& cfg, const std::string& out) {
  const ToralAutomorphism a = make_automorphism(cfg.matrix);
  const SuspensionFlow flow1 = make_suspension(a, cfg.roof);
  const SuspensionFlow flow2 = make_suspension(a, cfg.roof2.value_or(cfg.roof));
  const FiberWeight& phi1 = cfg.weight;
  const FiberWeight phi2 = cfg.weight2.value_or(cfg.weight);
  const double tol = cfg.tol.value_or(default_matching_tol(cfg.k_max));
  const MatchReport report = matching_report(flow1, phi1, flow2, phi2, cfg.k_max, tol);

  CsvTable table({"k", "rep_x", "rep_y", "T1", "T2", "I1", "I2", "gap", "chi_gap"});
  for (const MatchRow& r : report.rows) {
    table.add_row({std::to_string(r.k), frac_x(r.rep), frac_y(r.rep),
                   format_double(r.t1), format_double(r.t2), format_double(r.i1),
                   format_double(r.i2), format_double(r.gap),
                   format_double(r.exponent_gap)});
  }
  write_text_file(out, "match_rows.csv", table.text());

  json j;
  j["command"] = "match";
  j["config"] = config_echo(cfg);
  j["matched"] = report.matched;
  j["max_gap"] = report.max_gap;
  j["tol"] = report.tol;
  j["rows"] = report.rows.size();
  write_json(out, "match_summary.json", j);
  return 0;
}

int cmd_pigeonhole(const ExperimentConfig& cfg, const std::string& out) {
  const PigeonholeCertificate cert =
      pigeonhole_certificate(cfg.n, [](const std::vector<int>& a) {
        std::vector<int> img = a;
        img[0] = 1;
        return std::make_pair(1, img);
      });

  CsvTable table({"i", "alpha_i", "beta_i"});
  for (int i = 0; i < cert.n; ++i) {
    table.add_row({std::to_string(i + 1),
                   std::to_string(cert.alpha_bar[static_cast<std::size_t>(i)]),
                   std::to_string(cert.beta_bar[static_cast<std::size_t>(i)])});
  }
  write_text_file(out, "pigeonhole_certificate.csv", table.text());

  json j;
  j["command"] = "pigeonhole";
  j["config"] = config_echo(cfg);
  j["n"] = cert.n;
  j["domain_size"] = cert.domain_size;
  j["range_size"] = cert.range_size;
  j["index"] = cert.index;
  j["alpha_bar"] = cert.alpha_bar;
  j["beta_bar"] = cert.beta_bar;
  write_json(out, "pigeonhole_summary.json", j);
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"rigidlab: numerical experiments on suspensions of hyperbolic "
               "toral automorphisms"};
  app.require_subcommand(1);

  struct Shared {
    std::string config;
    std::string out = ".";
    int threads = 1;
  } opt;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"enumerate", "List prime periodic orbits of the base map"},
      {"spectrum", "Flow periods, exponents, and multipliers per orbit"},
      {"cocycle", "Longitudinal cocycle value at every cataloged orbit"},
      {"homoclinic", "Shadowing-period experiment with exponent recovery"},
      {"bowen", "Weighted periodic-orbit integrals over period windows"},
      {"match", "Per-orbit comparison of two weighted flows"},
      {"pigeonhole", "Collision certificate for the canonical index assignment"},
      {"verify", "Run the acceptance suite and report per-criterion results"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    CLI::Option* conf = sub->add_option("--config", opt.config, "Experiment config file");
    if (name != "verify") conf->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory for CSV/JSON artifacts");
    sub->add_option("--threads", opt.threads, "Worker threads for ensemble sums")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "verify") {
    return all_passed(run_acceptance_suite(std::cout)) ? 0 : 1;
  }

  const ExperimentConfig cfg = load_config(opt.config);
  if (name == "enumerate") return cmd_enumerate(cfg, opt.out);
  if (name == "spectrum") return cmd_spectrum(cfg, opt.out);
  if (name == "cocycle") return cmd_cocycle(cfg, opt.out);
  if (name == "homoclinic") return cmd_homoclinic(cfg, opt.out);
  if (name == "bowen") return cmd_bowen(cfg, opt.out, opt.threads);
  if (name == "match") return cmd_match(cfg, opt.out);
  return cmd_pigeonhole(cfg, opt.out);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const rigidlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == rigidlab::ErrorKind::Validation ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
