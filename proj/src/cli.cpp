#include "qtcert/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "qtcert/certify.hpp"
#include "qtcert/fidelity.hpp"
#include "qtcert/report.hpp"

namespace qtcert {

namespace {

struct Options {
  std::string format = "json";
  std::optional<std::string> protocol;
  int m = 1;
  std::optional<std::string> family;
  double theta = 0.0;
  double phi = 0.0;
  std::string mode = "exact";
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string quadrature = "gauss_64";
  std::optional<std::string> criterion;
  std::optional<std::string> model;
  std::optional<double> observed;
  bool self = false;
  std::string threshold_source = "closed_form";
  double theta_min = 0.0;
  double theta_max = std::numbers::pi;
  int points = 9;
  std::optional<int> postselect;
  int resolution = 64;
};

struct Resolved {
  ProtocolId protocol = ProtocolId::P0;
  ProtocolParams params;
  FidelityMode mode = FidelityMode::exact;
  report::Format format = report::Format::json;
  QuadratureSpec quadrature;
};

ProtocolParams make_params(const Options& o, InputFamily default_family) {
  ProtocolParams p;
  p.m = o.m;
  p.theta = o.theta;
  p.phi = o.phi;
  p.family = o.family ? parse_family(*o.family) : default_family;
  p.validate();
  return p;
}

FidelityMode parse_mode(const std::string& name) {
  if (name == "exact") return FidelityMode::exact;
  if (name == "monte_carlo") return FidelityMode::monte_carlo;
  throw ConfigError("unknown mode '" + name + "' (expected exact or monte_carlo)");
}

/// Common validation: protocol, mode, format, quadrature and Monte Carlo settings.
Resolved resolve(const Options& o, InputFamily default_family, bool needs_protocol) {
  Resolved r;
  r.format = report::parse_format(o.format);
  r.mode = parse_mode(o.mode);
  r.quadrature = QuadratureSpec::parse(o.quadrature);
  if (needs_protocol) {
    if (!o.protocol) throw ConfigError("--protocol is required");
    r.protocol = parse_protocol(*o.protocol);
  }
  if (o.threads < 1) throw ConfigError("--threads must be at least 1");
  if (r.mode == FidelityMode::monte_carlo) {
    if (o.shots < 100) throw ConfigError("monte_carlo mode needs --shots >= 100");
    if (!o.seed) throw ConfigError(std::string("monte_carlo mode needs --seed or ") + kSeedEnvVar);
  }
  r.params = make_params(o, default_family);
  return r;
}

FidelityReport evaluate(const Resolved& r, const Options& o, const ProtocolParams& params) {
  if (r.mode == FidelityMode::exact) return exact_threshold(r.protocol, params);
  return monte_carlo_report(r.protocol, params, o.shots, *o.seed, o.threads);
}

report::Document cmd_run(const Options& o, report::Format& format) {
  const Resolved r = resolve(o, InputFamily::trivial, true);
  format = r.format;
  return report::run_document(evaluate(r, o, r.params));
}

report::Document cmd_sweep(const Options& o, report::Format& format) {
  const Resolved r = resolve(o, InputFamily::ghz, true);
  format = r.format;
  if (r.params.family == InputFamily::trivial) throw ConfigError("sweep needs the ghz or bloch family");
  if (o.points < 2) throw ConfigError("--points must be at least 2");
  if (!(o.theta_min <= o.theta_max)) throw ConfigError("--theta-min must not exceed --theta-max");
  std::vector<FidelityReport> points;
  for (int i = 0; i < o.points; ++i) {
    ProtocolParams p = r.params;
    p.theta = o.theta_min + (o.theta_max - o.theta_min) * i / (o.points - 1);
    points.push_back(evaluate(r, o, p));
  }
  return report::sweep_document(r.protocol, r.params, r.mode, points);
}

report::Document cmd_average(const Options& o, report::Format& format) {
  const Resolved r = resolve(o, InputFamily::ghz, true);
  format = r.format;
  if (r.params.family == InputFamily::bloch) {
    if (o.resolution < 2) throw ConfigError("--resolution must be at least 2");
    return report::bloch_average_document(bloch_average(r.protocol, o.postselect, o.resolution));
  }
  if (r.params.family != InputFamily::ghz) throw ConfigError("average needs the ghz or bloch family");
  if (o.postselect) throw ConfigError("--postselect applies to the bloch family only");
  return report::theta_average_document(r.protocol, r.params.m, r.quadrature,
                                        theta_average(r.protocol, r.params.m, r.quadrature));
}

double clamp_unit(double x) {
  // Exact sums can land a rounding step outside [0, 1].
  if (x > 1.0 && x < 1.0 + 1e-12) return 1.0;
  if (x < 0.0 && x > -1e-12) return 0.0;
  return x;
}

report::Document cmd_certify(const Options& o, report::Format& format) {
  if (!o.model) throw ConfigError("--model is required");
  const AdversaryModel model = parse_model(*o.model);
  if (o.self == o.observed.has_value()) throw ConfigError("give exactly one of --observed and --self");
  const InputFamily default_family = o.m > 1 ? InputFamily::ghz : InputFamily::trivial;
  Options opts = o;
  if (!opts.protocol) opts.protocol = std::string(to_string(cheating_protocols(model).front()));
  const Resolved r = resolve(opts, default_family, true);
  format = r.format;

  if (!o.criterion && r.params.m > 1) {
    throw ConfigError("entangled inputs (m > 1) need an explicit --criterion (pointwise or theta_average)");
  }
  const Criterion criterion = o.criterion ? parse_criterion(*o.criterion) : Criterion::pointwise;
  const ThresholdSource source = parse_threshold_source(o.threshold_source);
  const ThresholdEntry entry = threshold_for(model, criterion, r.params.m, r.params.family, source, r.quadrature);

  report::Record context;
  double observed = 0.0;
  if (o.observed) {
    observed = *o.observed;
    context = {{"observed_from", std::string("given")}, {"m", std::int64_t{r.params.m}},
               {"family", std::string(to_string(r.params.family))}};
  } else {
    context = {{"observed_from", std::string("self")}, {"protocol", std::string(to_string(r.protocol))},
               {"m", std::int64_t{r.params.m}}, {"family", std::string(to_string(r.params.family))}};
    switch (criterion) {
      case Criterion::pointwise: {
        const FidelityReport rep = evaluate(r, opts, r.params);
        observed = rep.f_th;
        context.emplace_back("theta", r.params.theta);
        context.emplace_back("phi", r.params.phi);
        context.emplace_back("mode", std::string(to_string(rep.mode)));
        if (rep.seed) {
          context.emplace_back("seed", static_cast<std::int64_t>(*rep.seed));
          context.emplace_back("shots", static_cast<std::int64_t>(*rep.shots));
          context.emplace_back("std_error", *rep.std_error);
        }
        break;
      }
      case Criterion::theta_average:
        observed = theta_average(r.protocol, r.params.m, r.quadrature);
        context.emplace_back("quadrature", r.quadrature.label());
        break;
      case Criterion::bloch_postselected:
        observed = *bloch_average(r.protocol, 1, o.resolution).postselected;
        context.emplace_back("resolution", std::int64_t{o.resolution});
        break;
    }
    observed = clamp_unit(observed);
  }
  return report::decision_document(decide(observed, entry), context);
}

report::Document cmd_enumerate(const Options& o, report::Format& format) {
  const Resolved r = resolve(o, InputFamily::trivial, true);
  format = r.format;
  return report::branches_document(r.protocol, r.params, run_exact(r.protocol, r.params));
}

report::Document cmd_thresholds(const Options& o, report::Format& format) {
  const InputFamily default_family = o.m > 1 ? InputFamily::ghz : InputFamily::trivial;
  Options opts = o;
  opts.mode = "exact";
  const Resolved r = resolve(opts, default_family, false);
  format = r.format;
  const ThresholdSource source = parse_threshold_source(o.threshold_source);
  return report::thresholds_document(r.params.m, r.params.family,
                                     threshold_table(r.params.m, r.params.family, source, r.quadrature));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial quantum teleportation simulator and certifier"};
  app.name("qtcert");
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; keys are the long flag names, flags override");
  app.allow_config_extras(false);

  Options o;
  app.add_option("--format", o.format, "Output format: json, csv or table")->capture_default_str();
  app.add_option("--protocol", o.protocol, "p0, pa1, pa2, pb or pab");
  app.add_option("--m", o.m, "Number of qubits C sends plus ancillas (m >= 1)")->capture_default_str();
  app.add_option("--family", o.family, "Input family: trivial, ghz or bloch");
  app.add_option("--theta", o.theta, "Polar angle in radians")->capture_default_str();
  app.add_option("--phi", o.phi, "Azimuthal angle in radians (bloch family)")->capture_default_str();
  app.add_option("--mode", o.mode, "exact or monte_carlo")->capture_default_str();
  app.add_option("--shots", o.shots, "Monte Carlo shots (>= 100)");
  app.add_option("--seed", o.seed, "Monte Carlo master seed")->envname(kSeedEnvVar);
  app.add_option("--threads", o.threads, "Monte Carlo worker threads; output does not depend on it")
      ->capture_default_str();
  app.add_option("--quadrature", o.quadrature, "theta-average rule: gauss_N or grid_N")->capture_default_str();
  app.add_option("--criterion", o.criterion, "pointwise, theta_average or bloch_postselected");
  app.add_option("--model", o.model, "honest, cheating_a, cheating_b or cheating_ab");
  app.add_option("--observed", o.observed, "Observed fidelity in [0, 1]");
  app.add_flag("--self", o.self, "Certify the simulator's own output for --protocol");
  app.add_option("--threshold-source", o.threshold_source, "closed_form or computed_from_simulation")
      ->capture_default_str();
  app.add_option("--theta-min", o.theta_min, "Sweep start (radians)")->capture_default_str();
  app.add_option("--theta-max", o.theta_max, "Sweep end (radians)")->capture_default_str();
  app.add_option("--points", o.points, "Sweep grid size")->capture_default_str();
  app.add_option("--postselect", o.postselect, "Retained announcement bit for Bloch averages");
  app.add_option("--resolution", o.resolution, "Bloch-sphere quadrature resolution")->capture_default_str();

  using Command = report::Document (*)(const Options&, report::Format&);
  const std::pair<const char*, std::pair<const char*, Command>> commands[] = {
      {"run", {"Run one protocol and report f_th with per-branch detail", cmd_run}},
      {"sweep", {"Tabulate f_th over a theta grid", cmd_sweep}},
      {"average", {"theta average (ghz) or Bloch-sphere averages (bloch)", cmd_average}},
      {"certify", {"Issue or deny a certificate for an observed fidelity", cmd_certify}},
      {"enumerate", {"Dump every branch with its output state", cmd_enumerate}},
      {"thresholds", {"Dump the certification threshold table", cmd_thresholds}},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.first);
    sub->fallthrough();
    subs.emplace_back(sub, info.second);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    for (const auto& [sub, command] : subs) {
      if (!sub->parsed()) continue;
      report::Format format = report::Format::json;
      const report::Document doc = command(o, format);
      out << report::render(doc, format);
      return kExitOk;
    }
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace qtcert
