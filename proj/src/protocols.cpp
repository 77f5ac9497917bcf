#include "qtcert/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace qtcert {

std::string_view to_string(ProtocolId id) {
  switch (id) {
    case ProtocolId::P0: return "p0";
    case ProtocolId::PA1: return "pa1";
    case ProtocolId::PA2: return "pa2";
    case ProtocolId::PB: return "pb";
    case ProtocolId::PAB: return "pab";
  }
  return "?";
}

ProtocolId parse_protocol(std::string_view name) {
  for (ProtocolId id : kAllProtocols) {
    if (name == to_string(id)) return id;
  }
  throw ConfigError("unknown protocol '" + std::string(name) + "' (expected p0, pa1, pa2, pb, pab)");
}

std::string_view to_string(InputFamily family) {
  switch (family) {
    case InputFamily::trivial: return "trivial";
    case InputFamily::ghz: return "ghz";
    case InputFamily::bloch: return "bloch";
  }
  return "?";
}

InputFamily parse_family(std::string_view name) {
  for (InputFamily f : {InputFamily::trivial, InputFamily::ghz, InputFamily::bloch}) {
    if (name == to_string(f)) return f;
  }
  throw ConfigError("unknown input family '" + std::string(name) + "' (expected trivial, ghz, bloch)");
}

void ProtocolParams::validate() const {
  if (m < 1) throw ConfigError("m must be at least 1");
  if (family == InputFamily::bloch && m != 1) throw ConfigError("the bloch family requires m = 1");
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw ConfigError("angles must be finite");
  check_capacity(m + 2);
}

std::string Announcement::label() const {
  std::string s = std::to_string(a);
  if (b) s += std::to_string(*b);
  return s;
}

UnitaryMatrix target_rotation(const ProtocolParams& params) {
  params.validate();
  switch (params.family) {
    case InputFamily::trivial: return identity_gate(params.m);
    case InputFamily::ghz: return ghz_rotation(params.m, params.theta);
    case InputFamily::bloch: return bloch_rotation(params.theta, params.phi);
  }
  throw ConfigError("unknown input family");
}

TargetState build_target(const ProtocolParams& params) {
  std::vector<int> all(static_cast<std::size_t>(params.m));
  std::iota(all.begin(), all.end(), 0);
  return {apply_unitary(PureState::zeros(params.m), target_rotation(params), all)};
}

namespace circuit {

Program agent_program(ProtocolId protocol, int m) {
  if (m < 1) throw ConfigError("m must be at least 1");
  const Wires w{m};
  const auto bsm = Gate{entanglement_gadget_inverse(), {w.sender(), w.share_a()}};
  Program p;
  p.m = m;
  switch (protocol) {
    case ProtocolId::P0:
      p.steps = {bsm, Measure{w.sender(), AnnouncedBit::a}, Measure{w.share_a(), AnnouncedBit::b},
                 Correct{Correction::z_a_x_b, w.share_b()}};
      break;
    case ProtocolId::PA1:
      p.steps = {Trash{w.share_a()}, RandomBit{AnnouncedBit::b}, Measure{w.sender(), AnnouncedBit::a},
                 Correct{Correction::z_a_x_b, w.share_b()}};
      break;
    case ProtocolId::PA2:
      p.steps = {Trash{w.sender()}, Trash{w.share_a()}, RandomBit{AnnouncedBit::a}, RandomBit{AnnouncedBit::b},
                 Correct{Correction::z_a_x_b, w.share_b()}};
      break;
    case ProtocolId::PB:
      p.steps = {bsm,
                 Measure{w.sender(), AnnouncedBit::a},
                 Measure{w.share_a(), AnnouncedBit::b},
                 Trash{w.share_b()},
                 Regenerate{w.share_b()},
                 Correct{Correction::x_a, w.share_b()}};
      break;
    case ProtocolId::PAB:
      p.announces_b = false;
      p.steps = {Measure{w.sender(), AnnouncedBit::a}, Trash{w.share_a()}, Trash{w.share_b()},
                 Regenerate{w.share_b()}, Correct{Correction::x_a, w.share_b()}};
      break;
  }
  return p;
}

Register::Register(PureState state) : state_(std::move(state)) {
  wires_.resize(static_cast<std::size_t>(std::get<PureState>(state_).num_qubits()));
  std::iota(wires_.begin(), wires_.end(), 0);
}

Register::Register(std::variant<PureState, DensityOperator> state, std::vector<int> wires)
    : state_(std::move(state)), wires_(std::move(wires)) {}

int Register::slot_of(int wire) const {
  const auto it = std::find(wires_.begin(), wires_.end(), wire);
  if (it == wires_.end()) throw DimensionError("wire " + std::to_string(wire) + " is not in the register");
  return static_cast<int>(it - wires_.begin());
}

double Register::weight() const {
  return std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState>) {
          return s.norm_squared();
        } else {
          return s.trace();
        }
      },
      state_);
}

DensityOperator Register::density() const {
  if (const auto* psi = std::get_if<PureState>(&state_)) return to_density(*psi);
  return std::get<DensityOperator>(state_);
}

Register Register::apply(const UnitaryMatrix& u, const std::vector<int>& wires) const {
  std::vector<int> slots;
  slots.reserve(wires.size());
  for (int w : wires) slots.push_back(slot_of(w));
  auto next = std::visit(
      [&](const auto& s) -> std::variant<PureState, DensityOperator> {
        return apply_unitary(s, u, std::span<const int>(slots));
      },
      state_);
  return Register(std::move(next), wires_);
}

Register Register::project(int wire, int bit) const {
  const int slot = slot_of(wire);
  auto next = std::visit(
      [&](const auto& s) -> std::variant<PureState, DensityOperator> { return project_out(s, slot, bit); }, state_);
  auto wires = wires_;
  wires.erase(wires.begin() + slot);
  return Register(std::move(next), std::move(wires));
}

Register Register::forget(int wire) const {
  const DensityOperator zero = project(wire, 0).density();
  const DensityOperator one = project(wire, 1).density();
  auto wires = wires_;
  wires.erase(wires.begin() + slot_of(wire));
  return Register(zero + one, std::move(wires));
}

Register Register::trash(int wire) const {
  const int slot = slot_of(wire);
  auto next = std::visit([&](const auto& s) { return qtcert::trash(s, slot); }, state_);
  auto wires = wires_;
  wires.erase(wires.begin() + slot);
  return Register(std::move(next), std::move(wires));
}

Register Register::regenerate(int wire) const {
  if (std::find(wires_.begin(), wires_.end(), wire) != wires_.end()) {
    throw DimensionError("wire " + std::to_string(wire) + " is still present; trash it before regenerating");
  }
  auto wires = wires_;
  const auto pos = std::upper_bound(wires.begin(), wires.end(), wire);
  const int slot = static_cast<int>(pos - wires.begin());
  wires.insert(pos, wire);
  return Register(regenerate_zero(density(), slot), std::move(wires));
}

Register Register::scaled(double probability_factor) const {
  auto next = std::visit(
      [&](const auto& s) -> std::variant<PureState, DensityOperator> {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState>) {
          return s.scaled(std::sqrt(probability_factor));
        } else {
          return s.scaled(probability_factor);
        }
      },
      state_);
  return Register(std::move(next), wires_);
}

Register Register::normalized() const {
  auto next = std::visit([](const auto& s) -> std::variant<PureState, DensityOperator> { return s.normalized(); },
                         state_);
  return Register(std::move(next), wires_);
}

double Register::probability_of_zero(int wire) const {
  const int slot = slot_of(wire);
  return std::visit([&](const auto& s) { return qtcert::probability_of_zero(s, slot); }, state_);
}

Register prepare(const ProtocolParams& params) {
  params.validate();
  const Wires w{params.m};
  std::vector<int> c_wires(static_cast<std::size_t>(params.m));
  std::iota(c_wires.begin(), c_wires.end(), 0);
  Register reg(PureState::zeros(w.total()));
  reg = reg.apply(target_rotation(params), c_wires);
  return reg.apply(entanglement_gadget(), {w.share_a(), w.share_b()});
}

namespace {

struct Trajectory {
  std::array<std::optional<int>, 2> bits;
  Register reg;
};

std::size_t index_of(AnnouncedBit bit) { return bit == AnnouncedBit::a ? 0 : 1; }

UnitaryMatrix correction_gate(Correction rule, const std::array<std::optional<int>, 2>& bits) {
  const int a = bits[0].value_or(0);
  const int b = bits[1].value_or(0);
  if (!bits[0]) throw ConfigError("correction applied before bit a was announced");
  UnitaryMatrix u = identity_gate();
  switch (rule) {
    case Correction::z_a_x_b:
      if (!bits[1]) throw ConfigError("Z^a X^b correction needs bit b");
      if (b) u = pauli_x() * u;
      if (a) u = pauli_z() * u;
      break;
    case Correction::x_a:
      if (a) u = pauli_x();
      break;
  }
  return u;
}

Announcement announcement_of(const Program& program, const std::array<std::optional<int>, 2>& bits) {
  Announcement out;
  if (!bits[0]) throw ConfigError("program never announces bit a");
  out.a = *bits[0];
  if (program.announces_b) {
    if (!bits[1]) throw ConfigError("program never announces bit b");
    out.b = bits[1];
  }
  return out;
}

/// Remaining wires must be the ancillas followed by B's qubit, in order.
void check_output_wires(const Program& program, const Register& reg) {
  const Wires w{program.m};
  std::vector<int> expected;
  for (int k = 0; k < w.sender(); ++k) expected.push_back(k);
  expected.push_back(w.share_b());
  if (reg.wires() != expected) throw DimensionError("program left an unexpected set of wires");
}

struct EnumerateStep {
  std::vector<Trajectory>& out;
  const Trajectory& t;

  void operator()(const Gate& g) const { out.push_back({t.bits, t.reg.apply(g.gate, g.wires)}); }
  void operator()(const Measure& s) const {
    for (int bit = 0; bit < 2; ++bit) {
      Trajectory next{t.bits, t.reg.project(s.wire, bit)};
      next.bits[index_of(s.into)] = bit;
      out.push_back(std::move(next));
    }
  }
  void operator()(const MeasureAndForget& s) const { out.push_back({t.bits, t.reg.forget(s.wire)}); }
  void operator()(const Trash& s) const { out.push_back({t.bits, t.reg.trash(s.wire)}); }
  void operator()(const RandomBit& s) const {
    for (int bit = 0; bit < 2; ++bit) {
      Trajectory next{t.bits, t.reg.scaled(0.5)};
      next.bits[index_of(s.into)] = bit;
      out.push_back(std::move(next));
    }
  }
  void operator()(const Regenerate& s) const { out.push_back({t.bits, t.reg.regenerate(s.wire)}); }
  void operator()(const Correct& s) const {
    out.push_back({t.bits, t.reg.apply(correction_gate(s.rule, t.bits), {s.wire})});
  }
};

struct SampleStep {
  Trajectory& t;
  RngStream& rng;

  void operator()(const Gate& g) const { t.reg = t.reg.apply(g.gate, g.wires); }
  void operator()(const Measure& s) const {
    const int bit = rng.uniform() < t.reg.probability_of_zero(s.wire) ? 0 : 1;
    t.reg = t.reg.project(s.wire, bit).normalized();
    t.bits[index_of(s.into)] = bit;
  }
  void operator()(const MeasureAndForget& s) const {
    const int bit = rng.uniform() < t.reg.probability_of_zero(s.wire) ? 0 : 1;
    t.reg = t.reg.project(s.wire, bit).normalized();
  }
  void operator()(const Trash& s) const { t.reg = t.reg.trash(s.wire); }
  void operator()(const RandomBit& s) const { t.bits[index_of(s.into)] = random_bit(rng); }
  void operator()(const Regenerate& s) const { t.reg = t.reg.regenerate(s.wire); }
  void operator()(const Correct& s) const { t.reg = t.reg.apply(correction_gate(s.rule, t.bits), {s.wire}); }
};

}  // namespace

std::vector<Branch> enumerate(const Program& program, const Register& prepared) {
  std::vector<Trajectory> current{{{}, prepared}};
  for (const Step& step : program.steps) {
    std::vector<Trajectory> next;
    next.reserve(current.size() * 2);
    for (const Trajectory& t : current) std::visit(EnumerateStep{next, t}, step);
    current = std::move(next);
  }
  std::vector<Branch> branches;
  branches.reserve(current.size());
  for (const Trajectory& t : current) {
    check_output_wires(program, t.reg);
    Branch br;
    br.announcement = announcement_of(program, t.bits);
    br.joint = t.reg.density();
    br.probability = br.joint.trace();
    if (br.probability > 0.0) br.output = br.joint.normalized();
    branches.push_back(std::move(br));
  }
  std::sort(branches.begin(), branches.end(),
            [](const Branch& x, const Branch& y) { return x.announcement < y.announcement; });
  for (std::size_t i = 1; i < branches.size(); ++i) {
    if (branches[i].announcement == branches[i - 1].announcement) {
      throw ConfigError("program produced two branches with the same announcement");
    }
  }
  return branches;
}

SampledRun sample(const Program& program, const Register& prepared, RngStream& rng) {
  Trajectory t{{}, prepared};
  for (const Step& step : program.steps) std::visit(SampleStep{t, rng}, step);
  check_output_wires(program, t.reg);
  return {announcement_of(program, t.bits), t.reg.density().normalized()};
}

}  // namespace circuit

std::vector<Branch> run_exact(ProtocolId protocol, const ProtocolParams& params) {
  return circuit::enumerate(circuit::agent_program(protocol, params.m), circuit::prepare(params));
}

SampledRun run_sampled(ProtocolId protocol, const ProtocolParams& params, RngStream& rng) {
  return circuit::sample(circuit::agent_program(protocol, params.m), circuit::prepare(params), rng);
}

}  // namespace qtcert
