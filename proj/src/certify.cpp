#include "qtcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qtcert/fidelity.hpp"

namespace qtcert {

namespace {

constexpr double kDecisionTolerance = 1e-12;

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::pair<std::string_view, Enum> (&table)[N], const char* what) {
  for (const auto& [label, value] : table) {
    if (label == name) return value;
  }
  throw ConfigError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

constexpr std::pair<std::string_view, AdversaryModel> kModelNames[] = {
    {"honest", AdversaryModel::honest},
    {"cheating_a", AdversaryModel::cheating_a},
    {"cheating_b", AdversaryModel::cheating_b},
    {"cheating_ab", AdversaryModel::cheating_ab},
};

constexpr std::pair<std::string_view, Criterion> kCriterionNames[] = {
    {"pointwise", Criterion::pointwise},
    {"theta_average", Criterion::theta_average},
    {"bloch_postselected", Criterion::bloch_postselected},
};

constexpr std::pair<std::string_view, ThresholdSource> kSourceNames[] = {
    {"closed_form", ThresholdSource::closed_form},
    {"computed_from_simulation", ThresholdSource::computed_from_simulation},
};

ThresholdEntry constant(AdversaryModel model, Criterion criterion, double value, std::string provenance) {
  return {model, criterion, ThresholdSource::closed_form, value, std::move(provenance)};
}

ThresholdEntry closed_form_threshold(AdversaryModel model, Criterion criterion, int m) {
  const bool isolated = m == 1;
  if (criterion == Criterion::bloch_postselected && !isolated) {
    throw ConfigError("bloch_postselected is defined for m = 1 only");
  }
  if (model == AdversaryModel::honest) {
    return constant(model, criterion, 1.0, "honest teleportation is exact: f_th = 1 for every input");
  }
  if (criterion == Criterion::bloch_postselected) {
    if (model == AdversaryModel::cheating_a) throw ConfigError("bloch_postselected is not defined for cheating_a");
    return constant(model, criterion, 2.0 / 3.0,
                    "average fidelity over the Bloch sphere, retaining a = 1: 2/3 (classical measure-and-prepare "
                    "bound); postselected, not a certification input by default");
  }
  switch (model) {
    case AdversaryModel::cheating_a:
      if (isolated) return constant(model, criterion, 0.5, "cheating A, isolated qubit: f_th = 1/2 for every input");
      if (criterion == Criterion::pointwise) {
        return constant(model, criterion, 0.5, "cheating A, ghz family: max over theta of 1/2 - sin^2(theta)/4 = 1/2");
      }
      return constant(model, criterion, 3.0 / 8.0,
                      "cheating A, ghz family: (1/pi) int_0^pi (1/2 - sin^2(theta)/4) dtheta = 3/8");
    case AdversaryModel::cheating_b:
      if (isolated) return constant(model, criterion, 0.5, "cheating B, isolated qubit: f_th = 1/2");
      if (criterion == Criterion::pointwise) {
        return constant(model, criterion, 0.25,
                        "cheating B, ghz family: max over theta of 1/4 - sin^2(theta)/8 = 1/4");
      }
      return constant(model, criterion, 3.0 / 16.0,
                      "cheating B, ghz family: (1/pi) int_0^pi (1/4 - sin^2(theta)/8) dtheta = 3/16");
    case AdversaryModel::cheating_ab:
      if (isolated) return constant(model, criterion, 0.5, "cheating A and B, isolated qubit: f_th = 1/2");
      if (criterion == Criterion::pointwise) {
        return constant(model, criterion, 0.5,
                        "cheating A and B, ghz family: max over theta of 1/2 - sin^2(theta)/4 = 1/2");
      }
      return constant(model, criterion, 3.0 / 8.0,
                      "cheating A and B, ghz family: (1/pi) int_0^pi (1/2 - sin^2(theta)/4) dtheta = 3/8");
    case AdversaryModel::honest:
      break;
  }
  throw ConfigError("unknown adversary model");
}

/// Largest exact f_th over a theta grid on [0, pi] (and a phi grid for bloch).
double max_over_inputs(ProtocolId protocol, int m, InputFamily family) {
  constexpr int kThetaPoints = 181;
  constexpr int kPhiPoints = 24;
  const bool bloch = family == InputFamily::bloch && m == 1;
  double best = 0.0;
  for (int i = 0; i < kThetaPoints; ++i) {
    for (int j = 0; j < (bloch ? kPhiPoints : 1); ++j) {
      ProtocolParams params;
      params.m = m;
      params.family = bloch ? InputFamily::bloch : InputFamily::ghz;
      params.theta = std::numbers::pi * i / (kThetaPoints - 1);
      params.phi = 2.0 * std::numbers::pi * j / kPhiPoints;
      best = std::max(best, exact_threshold(protocol, params).f_th);
    }
  }
  return best;
}

ThresholdEntry simulated_threshold(AdversaryModel model, Criterion criterion, int m, InputFamily family,
                                   const QuadratureSpec& quadrature) {
  // Validates the combination the same way the constant table does.
  (void)closed_form_threshold(model, criterion, m);
  ThresholdEntry entry{model, criterion, ThresholdSource::computed_from_simulation, 0.0, {}};
  if (model == AdversaryModel::honest) {
    entry.threshold = 1.0;
    entry.provenance = "honest teleportation is exact: f_th = 1 for every input";
    return entry;
  }
  std::string names;
  for (ProtocolId p : cheating_protocols(model)) {
    if (!names.empty()) names += ",";
    names += to_string(p);
    double value = 0.0;
    switch (criterion) {
      case Criterion::pointwise:
        value = max_over_inputs(p, m, family);
        break;
      case Criterion::theta_average:
        value = theta_average(p, m, quadrature);
        break;
      case Criterion::bloch_postselected:
        value = *bloch_average(p, 1, quadrature.n).postselected;
        break;
    }
    entry.threshold = std::max(entry.threshold, value);
  }
  switch (criterion) {
    case Criterion::pointwise:
      entry.provenance = "max of exact f_th over a 181-point theta grid on [0, pi], protocols " + names;
      break;
    case Criterion::theta_average:
      entry.provenance = "theta average of exact f_th (" + quadrature.label() + "), protocols " + names;
      break;
    case Criterion::bloch_postselected:
      entry.provenance = "Bloch-sphere average fidelity retaining a = 1, protocols " + names +
                         "; postselected, not a certification input by default";
      break;
  }
  return entry;
}

}  // namespace

std::string_view to_string(AdversaryModel model) {
  for (const auto& [label, value] : kModelNames) {
    if (value == model) return label;
  }
  return "?";
}

std::string_view to_string(Criterion criterion) {
  for (const auto& [label, value] : kCriterionNames) {
    if (value == criterion) return label;
  }
  return "?";
}

std::string_view to_string(ThresholdSource source) {
  for (const auto& [label, value] : kSourceNames) {
    if (value == source) return label;
  }
  return "?";
}

std::string_view to_string(Verdict verdict) { return verdict == Verdict::issue ? "issue" : "deny"; }

std::string_view to_string(Comparison comparison) {
  return comparison == Comparison::meets ? "meets" : "strict_greater";
}

AdversaryModel parse_model(std::string_view name) { return parse_enum(name, kModelNames, "adversary model"); }

Criterion parse_criterion(std::string_view name) { return parse_enum(name, kCriterionNames, "criterion"); }

ThresholdSource parse_threshold_source(std::string_view name) {
  return parse_enum(name, kSourceNames, "threshold source");
}

int certificate_id(AdversaryModel model) {
  switch (model) {
    case AdversaryModel::honest:
      return 1;
    case AdversaryModel::cheating_a:
      return 3;
    case AdversaryModel::cheating_b:
      return 4;
    case AdversaryModel::cheating_ab:
      return 5;
  }
  return 0;
}

std::string_view certificate_text(AdversaryModel model) {
  switch (model) {
    case AdversaryModel::honest:
      return "This system executes the QTP perfectly.";
    case AdversaryModel::cheating_a:
      return "This system executes the QTP with A having used quantum resources and B assumed to have used "
             "quantum resources.";
    case AdversaryModel::cheating_b:
      return "This system executes the QTP with A assumed to have used quantum resources and B having used "
             "quantum resources.";
    case AdversaryModel::cheating_ab:
      return "This system executes the QTP with both A and B having used quantum resources.";
  }
  return "";
}

std::vector<ProtocolId> cheating_protocols(AdversaryModel model) {
  switch (model) {
    case AdversaryModel::honest:
      return {ProtocolId::P0};
    case AdversaryModel::cheating_a:
      return {ProtocolId::PA1, ProtocolId::PA2};
    case AdversaryModel::cheating_b:
      return {ProtocolId::PB};
    case AdversaryModel::cheating_ab:
      return {ProtocolId::PAB};
  }
  return {};
}

ThresholdEntry threshold_for(AdversaryModel model, Criterion criterion, int m, InputFamily family,
                             ThresholdSource source, const QuadratureSpec& quadrature) {
  if (m < 1) throw ConfigError("m must be at least 1");
  if (family == InputFamily::bloch && m != 1) throw ConfigError("bloch family requires m = 1");
  if (source == ThresholdSource::closed_form) return closed_form_threshold(model, criterion, m);
  return simulated_threshold(model, criterion, m, family, quadrature);
}

std::vector<ThresholdEntry> threshold_table(int m, InputFamily family, ThresholdSource source,
                                            const QuadratureSpec& quadrature) {
  std::vector<ThresholdEntry> table;
  for (AdversaryModel model : kAllModels) {
    for (Criterion criterion : {Criterion::pointwise, Criterion::theta_average, Criterion::bloch_postselected}) {
      try {
        table.push_back(threshold_for(model, criterion, m, family, source, quadrature));
      } catch (const ConfigError&) {
        // Undefined combination; omitted from the table.
      }
    }
  }
  return table;
}

CertificateDecision decide(double observed, const ThresholdEntry& entry) {
  if (!std::isfinite(observed) || observed < 0.0 || observed > 1.0) {
    throw ConfigError("observed fidelity must lie in [0, 1]");
  }
  CertificateDecision d;
  d.certificate = certificate_id(entry.model);
  d.model = entry.model;
  d.criterion = entry.criterion;
  d.source = entry.source;
  d.observed = observed;
  d.threshold = entry.threshold;
  d.provenance = entry.provenance;
  if (entry.model == AdversaryModel::honest) {
    d.comparison = Comparison::meets;
    d.verdict = observed >= entry.threshold - kDecisionTolerance ? Verdict::issue : Verdict::deny;
  } else {
    d.comparison = Comparison::strict_greater;
    d.verdict = observed > entry.threshold + kDecisionTolerance ? Verdict::issue : Verdict::deny;
  }
  return d;
}

CertificateDecision decide(double observed, AdversaryModel model, int m, InputFamily family, Criterion criterion,
                           ThresholdSource source) {
  return decide(observed, threshold_for(model, criterion, m, family, source));
}

}  // namespace qtcert
