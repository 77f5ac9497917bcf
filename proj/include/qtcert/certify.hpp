#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qtcert/protocols.hpp"
#include "qtcert/quadrature.hpp"

namespace qtcert {

/// Which parties C assumes may have cheated.
enum class AdversaryModel { honest, cheating_a, cheating_b, cheating_ab };

inline constexpr AdversaryModel kAllModels[] = {AdversaryModel::honest, AdversaryModel::cheating_a,
                                                AdversaryModel::cheating_b, AdversaryModel::cheating_ab};

/// How the threshold for entangled inputs is read off the cheating curve.
enum class Criterion { pointwise, theta_average, bloch_postselected };

enum class ThresholdSource { closed_form, computed_from_simulation };

enum class Verdict { issue, deny };

/// `meets` is used only for the honest model, whose threshold 1 cannot be
/// strictly exceeded. Both comparisons allow 1e-12 of rounding: `meets` issues
/// at threshold - 1e-12, `strict_greater` only above threshold + 1e-12.
enum class Comparison { strict_greater, meets };

std::string_view to_string(AdversaryModel model);
std::string_view to_string(Criterion criterion);
std::string_view to_string(ThresholdSource source);
std::string_view to_string(Verdict verdict);
std::string_view to_string(Comparison comparison);
AdversaryModel parse_model(std::string_view name);
Criterion parse_criterion(std::string_view name);
ThresholdSource parse_threshold_source(std::string_view name);

/// Certificate issued under each model: 1 (perfect), 3, 4, 5. Certificate 2
/// ("A employs qubits from D") can only be earned by perfection and is never
/// issued.
int certificate_id(AdversaryModel model);
std::string_view certificate_text(AdversaryModel model);

/// Protocols that realize the best cheat for a model.
std::vector<ProtocolId> cheating_protocols(AdversaryModel model);

struct ThresholdEntry {
  AdversaryModel model = AdversaryModel::honest;
  Criterion criterion = Criterion::pointwise;
  ThresholdSource source = ThresholdSource::closed_form;
  double threshold = 1.0;
  std::string provenance;
};

/// Throws ConfigError for combinations without a defined threshold, e.g.
/// bloch_postselected for m > 1 or for cheating_a.
ThresholdEntry threshold_for(AdversaryModel model, Criterion criterion, int m, InputFamily family,
                             ThresholdSource source = ThresholdSource::closed_form,
                             const QuadratureSpec& quadrature = {});

/// Every defined (model, criterion) entry for this m and family.
std::vector<ThresholdEntry> threshold_table(int m, InputFamily family,
                                            ThresholdSource source = ThresholdSource::closed_form,
                                            const QuadratureSpec& quadrature = {});

struct CertificateDecision {
  int certificate = 1;
  AdversaryModel model = AdversaryModel::honest;
  Criterion criterion = Criterion::pointwise;
  ThresholdSource source = ThresholdSource::closed_form;
  double observed = 0.0;
  double threshold = 1.0;
  Verdict verdict = Verdict::deny;
  Comparison comparison = Comparison::strict_greater;
  std::string provenance;
};

/// Applies `entry` to an observed fidelity in [0, 1].
CertificateDecision decide(double observed, const ThresholdEntry& entry);

CertificateDecision decide(double observed, AdversaryModel model, int m, InputFamily family,
                           Criterion criterion = Criterion::pointwise,
                           ThresholdSource source = ThresholdSource::closed_form);

}  // namespace qtcert
