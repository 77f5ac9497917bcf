#include "qtcert/channels.hpp"

#include <algorithm>
#include <cmath>

namespace qtcert {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
constexpr double kProbabilitySlack = 1e-12;

double checked_probability(double p0) {
  if (!(p0 >= -kProbabilitySlack && p0 <= 1.0 + kProbabilitySlack)) {
    throw StateError("outcome probability outside [0, 1]; corrupted state");
  }
  return std::clamp(p0, 0.0, 1.0);
}

}  // namespace

std::uint64_t RngStream::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream RngStream::substream(std::uint64_t master_seed, std::uint64_t index) {
  return RngStream(mix(master_seed ^ mix(index * kGamma + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix(seed_ + counter_ * kGamma);
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double probability_of_zero(const PureState& state, int qubit) {
  const double total = state.norm_squared();
  if (!(total > 0.0)) throw StateError("measurement on a zero-norm state");
  return checked_probability(project_out(state, qubit, 0).norm_squared() / total);
}

double probability_of_zero(const DensityOperator& rho, int qubit) {
  const double total = rho.trace();
  if (!(total > 0.0)) throw StateError("measurement on a zero-trace operator");
  return checked_probability(project_out(rho, qubit, 0).trace() / total);
}

MeasurementOutcome measure_sample(const PureState& state, int qubit, RngStream& rng) {
  const double p0 = probability_of_zero(state, qubit);
  const int bit = rng.uniform() < p0 ? 0 : 1;
  MeasurementOutcome out;
  out.bit = bit;
  out.probability = bit == 0 ? p0 : 1.0 - p0;
  out.post_state = project_out(state, qubit, bit).normalized();
  return out;
}

std::array<MeasurementOutcome, 2> measure_branches(const PureState& state, int qubit) {
  const double total = state.norm_squared();
  if (!(total > 0.0)) throw StateError("measurement on a zero-norm state");
  std::array<MeasurementOutcome, 2> out;
  for (int bit = 0; bit < 2; ++bit) {
    const PureState projected = project_out(state, qubit, bit);
    const double p = projected.norm_squared() / total;
    out[static_cast<std::size_t>(bit)].bit = bit;
    out[static_cast<std::size_t>(bit)].probability = p;
    if (p > 0.0) out[static_cast<std::size_t>(bit)].post_state = projected.normalized();
  }
  return out;
}

DensityOperator trash(const PureState& state, int qubit) {
  const int one[] = {qubit};
  return partial_trace(state, std::span<const int>(one));
}

DensityOperator trash(const DensityOperator& rho, int qubit) {
  const int one[] = {qubit};
  return partial_trace(rho, std::span<const int>(one));
}

int random_bit(RngStream& rng) { return rng.uniform() >= 0.5 ? 0 : 1; }

DensityOperator regenerate_zero(const DensityOperator& rho, int position) { return insert_zero(rho, position); }

}  // namespace qtcert
