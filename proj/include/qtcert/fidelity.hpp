#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtcert/protocols.hpp"
#include "qtcert/quadrature.hpp"

namespace qtcert {

enum class FidelityMode { exact, monte_carlo };

std::string_view to_string(FidelityMode mode);

struct BranchFidelity {
  Announcement announcement;
  double probability = 0.0;
  /// <Psi|output|Psi>; empty for zero-probability branches. Diagnostic only:
  /// C never hears the announcement, so certification uses `f_th`.
  std::optional<double> fidelity;
};

struct FidelityReport {
  ProtocolId protocol = ProtocolId::P0;
  ProtocolParams params;
  FidelityMode mode = FidelityMode::exact;
  double f_th = 0.0;
  std::vector<BranchFidelity> per_branch;
  /// Monte Carlo only.
  std::optional<std::uint64_t> shots;
  std::optional<double> std_error;
  std::optional<std::uint64_t> seed;
  std::string definition;
};

inline constexpr const char* kThresholdDefinition =
    "f_th = sum over announcements of <Psi|rho_ab|Psi>, rho_ab sub-normalized";

/// f_th = sum_branches probability * <Psi|output|Psi>.
FidelityReport threshold_fidelity(const std::vector<Branch>& branches, const TargetState& target);

/// run_exact followed by threshold_fidelity.
FidelityReport exact_threshold(ProtocolId protocol, const ProtocolParams& params);

/// f_th(theta) on the ghz family.
std::vector<std::pair<double, double>> theta_sweep(ProtocolId protocol, int m, std::span<const double> grid);

/// (1/pi) * integral over [0, pi) of f_th(theta) on the ghz family.
double theta_average(ProtocolId protocol, int m, const QuadratureSpec& quadrature = {});

struct BlochBranchAverage {
  Announcement announcement;
  /// normalization * integral dphi dcos(theta) |<Psi|rho_ab|Psi>|^2.
  double squared = 0.0;
  /// Sphere average of the unsquared <Psi|rho_ab|Psi>.
  double linear = 0.0;
};

/// Bloch-sphere averages for the m = 1 PB and PAB protocols.
struct BlochAverage {
  ProtocolId protocol = ProtocolId::PB;
  /// 1/(4 pi) for PB, 1/(8 pi) for PAB, applied to the squared integrand.
  double normalization = 0.0;
  int resolution = 0;
  std::vector<BlochBranchAverage> per_branch;
  /// Squared-integrand averages summed over b, indexed by a.
  std::array<double, 2> per_a_squared{};
  /// Unsquared averages summed over b, indexed by a.
  std::array<double, 2> per_a_linear{};
  /// Retained announcement bit when postselecting.
  std::optional<int> postselect;
  /// Average fidelity over the retained runs: E[<Psi|rho_a|Psi>] / E[tr rho_a].
  /// Not a certification input unless the bloch_postselected criterion is chosen.
  std::optional<double> postselected;
};

BlochAverage bloch_average(ProtocolId protocol, std::optional<int> postselect = std::nullopt, int resolution = 64);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<Announcement, std::uint64_t> counts;
};

/// Shot-based estimate of f_th from sampled trajectories. Shot i draws from
/// RngStream::substream(seed, i); the reduction runs in shot order, so the
/// result does not depend on `threads`.
MonteCarloEstimate monte_carlo_threshold(ProtocolId protocol, const ProtocolParams& params, std::uint64_t shots,
                                         std::uint64_t seed, int threads = 1);

FidelityReport monte_carlo_report(ProtocolId protocol, const ProtocolParams& params, std::uint64_t shots,
                                  std::uint64_t seed, int threads = 1);

}  // namespace qtcert
