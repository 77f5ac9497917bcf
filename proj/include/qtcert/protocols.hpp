#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtcert/channels.hpp"
#include "qtcert/gates.hpp"

namespace qtcert {

/// The honest protocol and the four cheating variants.
enum class ProtocolId { P0, PA1, PA2, PB, PAB };

inline constexpr ProtocolId kAllProtocols[] = {ProtocolId::P0, ProtocolId::PA1, ProtocolId::PA2, ProtocolId::PB,
                                              ProtocolId::PAB};

std::string_view to_string(ProtocolId id);
ProtocolId parse_protocol(std::string_view name);

enum class InputFamily { trivial, ghz, bloch };

std::string_view to_string(InputFamily family);
InputFamily parse_family(std::string_view name);

struct ProtocolParams {
  int m = 1;
  double theta = 0.0;
  double phi = 0.0;
  InputFamily family = InputFamily::trivial;

  /// Throws ConfigError for invalid family/m combinations, CapacityError when
  /// the m+2 qubit register does not fit.
  void validate() const;
};

/// Bits sent from A to B. `b` is absent for PAB, which announces one bit.
struct Announcement {
  int a = 0;
  std::optional<int> b;

  auto operator<=>(const Announcement&) const = default;
  std::string label() const;
};

/// One announcement outcome. `joint` is the sub-normalized operator
/// (probability times output); `output` is the normalized state over the
/// m-1 ancillas followed by B's delivered qubit, empty when probability is 0.
struct Branch {
  Announcement announcement;
  double probability = 0.0;
  DensityOperator joint;
  std::optional<DensityOperator> output;
};

struct TargetState {
  PureState psi;
};

/// C's rotation for the requested input family, acting on m qubits.
UnitaryMatrix target_rotation(const ProtocolParams& params);

TargetState build_target(const ProtocolParams& params);

/// All branches, sorted by announcement bits.
std::vector<Branch> run_exact(ProtocolId protocol, const ProtocolParams& params);

struct SampledRun {
  Announcement announcement;
  DensityOperator output;
};

SampledRun run_sampled(ProtocolId protocol, const ProtocolParams& params, RngStream& rng);

/// Agent-level step programs. Wires are numbered by initial register slot:
/// ancillas 0..m-2, C's sent qubit m-1, D's share for A m, D's share for B m+1.
namespace circuit {

struct Wires {
  int m;
  int sender() const { return m - 1; }
  int share_a() const { return m; }
  int share_b() const { return m + 1; }
  int total() const { return m + 2; }
};

enum class AnnouncedBit { a, b };

struct Gate {
  UnitaryMatrix gate;
  std::vector<int> wires;
};
struct Measure {
  int wire;
  AnnouncedBit into;
};
/// Measure and throw the result away; operationally the same as Trash.
struct MeasureAndForget {
  int wire;
};
struct Trash {
  int wire;
};
struct RandomBit {
  AnnouncedBit into;
};
/// Fresh |0> reinserted for a previously trashed wire.
struct Regenerate {
  int wire;
};

enum class Correction {
  z_a_x_b,  // honest B: Z^a X^b
  x_a,      // cheating B: 1^b X^a
};
struct Correct {
  Correction rule;
  int wire;
};

using Step = std::variant<Gate, Measure, MeasureAndForget, Trash, RandomBit, Regenerate, Correct>;

struct Program {
  int m = 1;
  bool announces_b = true;
  std::vector<Step> steps;
};

/// Steps taken by A and B after C and D have prepared the register.
Program agent_program(ProtocolId protocol, int m);

/// Register contents and wire bookkeeping; the state is a pure vector until
/// the first non-unitary discard, then a density operator. Its squared norm
/// (or trace) is the weight of the trajectory.
class Register {
 public:
  explicit Register(PureState state);
  Register(std::variant<PureState, DensityOperator> state, std::vector<int> wires);

  const std::vector<int>& wires() const { return wires_; }
  const std::variant<PureState, DensityOperator>& state() const { return state_; }
  int slot_of(int wire) const;
  double weight() const;
  DensityOperator density() const;

  Register apply(const UnitaryMatrix& u, const std::vector<int>& wires) const;
  Register project(int wire, int bit) const;
  Register forget(int wire) const;
  Register trash(int wire) const;
  Register regenerate(int wire) const;
  Register scaled(double probability_factor) const;
  Register normalized() const;
  double probability_of_zero(int wire) const;

 private:
  std::variant<PureState, DensityOperator> state_;
  std::vector<int> wires_;
};

/// C's rotation and D's gadget applied to |0>^(m+2).
Register prepare(const ProtocolParams& params);

std::vector<Branch> enumerate(const Program& program, const Register& prepared);
SampledRun sample(const Program& program, const Register& prepared, RngStream& rng);

}  // namespace circuit

}  // namespace qtcert
