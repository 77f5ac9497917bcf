#include "qtcert/fidelity.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace qtcert {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

ProtocolParams ghz_params(int m, double theta) {
  ProtocolParams p;
  p.m = m;
  p.theta = theta;
  p.family = InputFamily::ghz;
  return p;
}

}  // namespace

std::string_view to_string(FidelityMode mode) { return mode == FidelityMode::exact ? "exact" : "monte_carlo"; }

FidelityReport threshold_fidelity(const std::vector<Branch>& branches, const TargetState& target) {
  FidelityReport report;
  report.definition = kThresholdDefinition;
  CompensatedSum total;
  for (const Branch& br : branches) {
    if (br.joint.dim() != target.psi.dim()) throw DimensionError("branch output and target differ in qubit count");
    BranchFidelity bf;
    bf.announcement = br.announcement;
    bf.probability = br.probability;
    if (br.output) bf.fidelity = expectation(*br.output, target.psi);
    total.add(expectation(br.joint, target.psi));
    report.per_branch.push_back(bf);
  }
  report.f_th = total.value();
  return report;
}

FidelityReport exact_threshold(ProtocolId protocol, const ProtocolParams& params) {
  FidelityReport report = threshold_fidelity(run_exact(protocol, params), build_target(params));
  report.protocol = protocol;
  report.params = params;
  report.mode = FidelityMode::exact;
  return report;
}

std::vector<std::pair<double, double>> theta_sweep(ProtocolId protocol, int m, std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double theta : grid) out.emplace_back(theta, exact_threshold(protocol, ghz_params(m, theta)).f_th);
  return out;
}

double theta_average(ProtocolId protocol, int m, const QuadratureSpec& quadrature) {
  const QuadratureRule rule = quadrature.on(0.0, std::numbers::pi);
  const double integral =
      integrate(rule, [&](double theta) { return exact_threshold(protocol, ghz_params(m, theta)).f_th; });
  return integral / std::numbers::pi;
}

BlochAverage bloch_average(ProtocolId protocol, std::optional<int> postselect, int resolution) {
  if (protocol != ProtocolId::PB && protocol != ProtocolId::PAB) {
    throw ConfigError("bloch_average is defined for pb and pab only");
  }
  if (postselect && *postselect != 0 && *postselect != 1) throw ConfigError("postselect bit must be 0 or 1");
  if (resolution < 2) throw ConfigError("quadrature resolution must be at least 2");

  BlochAverage result;
  result.protocol = protocol;
  result.normalization = protocol == ProtocolId::PB ? 1.0 / (4.0 * std::numbers::pi) : 1.0 / (8.0 * std::numbers::pi);
  result.resolution = resolution;
  result.postselect = postselect;

  // cos(theta) by Gauss-Legendre, phi by the periodic trapezoid rule.
  const QuadratureRule u_rule = gauss_legendre(resolution);
  const int n_phi = 2 * resolution;
  const double phi_weight = 2.0 * std::numbers::pi / n_phi;

  std::map<Announcement, std::pair<CompensatedSum, CompensatedSum>> sums;
  CompensatedSum retained_overlap;
  CompensatedSum retained_weight;
  for (std::size_t i = 0; i < u_rule.nodes.size(); ++i) {
    const double theta = std::acos(u_rule.nodes[i]);
    for (int j = 0; j < n_phi; ++j) {
      const double w = u_rule.weights[i] * phi_weight;
      ProtocolParams params;
      params.m = 1;
      params.family = InputFamily::bloch;
      params.theta = theta;
      params.phi = j * phi_weight;
      const PureState psi = build_target(params).psi;
      for (const Branch& br : run_exact(protocol, params)) {
        const double overlap = expectation(br.joint, psi);
        auto& [sq, lin] = sums[br.announcement];
        sq.add(w * overlap * overlap);
        lin.add(w * overlap);
        if (postselect && br.announcement.a == *postselect) {
          retained_overlap.add(w * overlap);
          retained_weight.add(w * br.probability);
        }
      }
    }
  }

  const double sphere = 4.0 * std::numbers::pi;
  for (const auto& [ann, s] : sums) {
    BlochBranchAverage avg;
    avg.announcement = ann;
    avg.squared = result.normalization * s.first.value();
    avg.linear = s.second.value() / sphere;
    result.per_a_squared[static_cast<std::size_t>(ann.a)] += avg.squared;
    result.per_a_linear[static_cast<std::size_t>(ann.a)] += avg.linear;
    result.per_branch.push_back(avg);
  }
  if (postselect) {
    if (!(retained_weight.value() > 0.0)) throw StateError("postselected announcement never occurs");
    result.postselected = retained_overlap.value() / retained_weight.value();
  }
  return result;
}

MonteCarloEstimate monte_carlo_threshold(ProtocolId protocol, const ProtocolParams& params, std::uint64_t shots,
                                         std::uint64_t seed, int threads) {
  if (shots < 100) throw ConfigError("monte carlo needs at least 100 shots");
  const circuit::Program program = circuit::agent_program(protocol, params.m);
  const circuit::Register prepared = circuit::prepare(params);
  const PureState target = build_target(params).psi;

  std::vector<double> values(shots);
  std::vector<Announcement> announcements(shots);
  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      RngStream rng = RngStream::substream(seed, i);
      const SampledRun run = circuit::sample(program, prepared, rng);
      values[i] = expectation(run.output, target);
      announcements[i] = run.announcement;
    }
  };

  const auto n_threads = static_cast<std::uint64_t>(std::max(1, threads));
  if (n_threads == 1) {
    worker(0, shots);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (shots + n_threads - 1) / n_threads;
    for (std::uint64_t t = 0; t < n_threads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min(shots, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
  }

  MonteCarloEstimate est;
  est.shots = shots;
  est.seed = seed;
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  est.estimate = sum.value() / static_cast<double>(shots);
  CompensatedSum sq;
  for (double v : values) sq.add((v - est.estimate) * (v - est.estimate));
  est.std_error = std::sqrt(sq.value() / static_cast<double>(shots - 1) / static_cast<double>(shots));
  for (const Announcement& a : announcements) ++est.counts[a];
  return est;
}

FidelityReport monte_carlo_report(ProtocolId protocol, const ProtocolParams& params, std::uint64_t shots,
                                  std::uint64_t seed, int threads) {
  const MonteCarloEstimate est = monte_carlo_threshold(protocol, params, shots, seed, threads);
  FidelityReport report;
  report.protocol = protocol;
  report.params = params;
  report.mode = FidelityMode::monte_carlo;
  report.definition = kThresholdDefinition;
  report.f_th = est.estimate;
  report.shots = est.shots;
  report.std_error = est.std_error;
  report.seed = est.seed;
  for (const auto& [ann, count] : est.counts) {
    BranchFidelity bf;
    bf.announcement = ann;
    bf.probability = static_cast<double>(count) / static_cast<double>(shots);
    report.per_branch.push_back(bf);
  }
  return report;
}

}  // namespace qtcert
