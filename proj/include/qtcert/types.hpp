#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace qtcert {

// Qubit ordering used throughout: in an n-qubit register, qubit 0 is the most
// significant bit of the basis-state label, qubit n-1 the least significant.

inline constexpr int kMaxQubits = 24;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Construction-time and positivity tolerances, per scalar type.
template <typename Real>
struct Tolerance {
  static constexpr Real construction = Real(1e-12);
  static constexpr Real positivity = Real(1e-10);
};

template <>
struct Tolerance<float> {
  static constexpr float construction = 1e-5f;
  static constexpr float positivity = 1e-4f;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Invalid parameter or configuration combination.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace bits {

inline std::uint64_t dim(int num_qubits) { return std::uint64_t{1} << num_qubits; }

inline int bit_of(std::uint64_t label, int num_qubits, int qubit) {
  return static_cast<int>((label >> (num_qubits - 1 - qubit)) & 1u);
}

/// Packs the bits of `qubits` (first entry most significant) out of `label`.
inline std::uint64_t gather(std::uint64_t label, int num_qubits, std::span<const int> qubits) {
  std::uint64_t out = 0;
  for (int q : qubits) out = (out << 1) | static_cast<std::uint64_t>(bit_of(label, num_qubits, q));
  return out;
}

/// Inverse of gather: writes the bits of `packed` into the positions `qubits`.
inline std::uint64_t scatter(std::uint64_t packed, int num_qubits, std::span<const int> qubits) {
  std::uint64_t out = 0;
  const auto k = static_cast<int>(qubits.size());
  for (int i = 0; i < k; ++i) {
    const std::uint64_t b = (packed >> (k - 1 - i)) & 1u;
    out |= b << (num_qubits - 1 - qubits[static_cast<std::size_t>(i)]);
  }
  return out;
}

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

}  // namespace bits

inline void check_capacity(int num_qubits, int max_qubits = kMaxQubits) {
  if (num_qubits > max_qubits) {
    throw CapacityError("register of " + std::to_string(num_qubits) +
                        " qubits exceeds the limit of " + std::to_string(max_qubits));
  }
}

}  // namespace qtcert
