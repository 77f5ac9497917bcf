#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qtcert/statevec.hpp"

namespace qtcert {

/// Deterministic counter-based SplitMix64 stream.
///
/// Draw k of a stream with seed s is mix(s + (k+1) * gamma), so a stream is
/// fully described by (seed, counter). Substreams for parallel shots are
/// derived from (master seed, index) and do not depend on execution order.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64";

  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  /// Independent stream for shot `index` of a run seeded with `master_seed`.
  static RngStream substream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Outcome of a destructive computational-basis measurement. The measured
/// qubit is removed from the register; `post_state` is renormalized and is
/// empty when the outcome has zero probability.
struct MeasurementOutcome {
  int bit = 0;
  double probability = 0.0;
  std::optional<PureState> post_state;
};

/// Probability that `qubit` reads 0, relative to the state's squared norm.
double probability_of_zero(const PureState& state, int qubit);
double probability_of_zero(const DensityOperator& rho, int qubit);

MeasurementOutcome measure_sample(const PureState& state, int qubit, RngStream& rng);

/// Both outcomes, in bit order; zero-probability outcomes are included.
std::array<MeasurementOutcome, 2> measure_branches(const PureState& state, int qubit);

/// Discard a qubit with no record: the partial trace over it.
DensityOperator trash(const PureState& state, int qubit);
DensityOperator trash(const DensityOperator& rho, int qubit);

/// Fair classical bit: 0 if uniform >= 1/2, else 1.
int random_bit(RngStream& rng);

/// Inserts a fresh |0><0| qubit at `position` of the register.
DensityOperator regenerate_zero(const DensityOperator& rho, int position);

}  // namespace qtcert
