#pragma once

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "qtcert/unitary.hpp"

namespace qtcert {

template <typename Real = double>
BasicUnitary<Real> identity_gate(int num_qubits = 1) {
  check_capacity(num_qubits);
  const auto d = static_cast<Eigen::Index>(bits::dim(num_qubits));
  return BasicUnitary<Real>(CMatrix<Real>::Identity(d, d));
}

/// Standard Hadamard, H|e> = (|0> + (-1)^e |1>)/sqrt(2). Stored with det -1;
/// no SU(2) re-phasing.
template <typename Real = double>
BasicUnitary<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  CMatrix<Real> h(2, 2);
  h << s, s, s, -s;
  return BasicUnitary<Real>(std::move(h));
}

template <typename Real = double>
BasicUnitary<Real> pauli_x() {
  CMatrix<Real> x(2, 2);
  x << 0, 1, 1, 0;
  return BasicUnitary<Real>(std::move(x));
}

template <typename Real = double>
BasicUnitary<Real> pauli_y() {
  using C = Complex<Real>;
  CMatrix<Real> y(2, 2);
  y << C(0), C(0, -1), C(0, 1), C(0);
  return BasicUnitary<Real>(std::move(y));
}

template <typename Real = double>
BasicUnitary<Real> pauli_z() {
  CMatrix<Real> z(2, 2);
  z << 1, 0, 0, -1;
  return BasicUnitary<Real>(std::move(z));
}

/// Controlled-NOT with the higher-order (first) qubit as control.
template <typename Real = double>
BasicUnitary<Real> cnot() {
  CMatrix<Real> c = CMatrix<Real>::Zero(4, 4);
  c(0, 0) = 1;
  c(1, 1) = 1;
  c(2, 3) = 1;
  c(3, 2) = 1;
  return BasicUnitary<Real>(std::move(c));
}

/// R(theta, phi)|0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, completed to det 1.
template <typename Real = double>
BasicUnitary<Real> bloch_rotation(Real theta, Real phi) {
  const Real c = std::cos(theta / 2);
  const Real s = std::sin(theta / 2);
  const Complex<Real> e = std::polar(Real(1), phi);
  CMatrix<Real> r(2, 2);
  r << Complex<Real>(c), -std::conj(e) * s, e * s, Complex<Real>(c);
  return BasicUnitary<Real>(std::move(r));
}

/// One-parameter m-qubit GHZ rotation:
///   cos(theta/2) 1 + sin(theta/2) (-iY) (x) X^(m-1).
/// On |0>^m this gives cos(theta/2)|0>^m + sin(theta/2)|1>^m, the same as
/// cos(theta/2) 1 + sin(theta/2) X^m, but unlike that operator it is unitary
/// for every theta. Reduces to bloch_rotation(theta, 0) at m = 1.
template <typename Real = double>
BasicUnitary<Real> ghz_rotation(int m, Real theta) {
  if (m < 1) throw DimensionError("ghz_rotation needs m >= 1");
  check_capacity(m);
  const auto d = static_cast<Eigen::Index>(bits::dim(m));
  const Real c = std::cos(theta / 2);
  const Real s = std::sin(theta / 2);
  // (-iY) (x) X^(m-1) maps |0 x> -> |1 ~x> and |1 x> -> -|0 ~x>.
  CMatrix<Real> r = CMatrix<Real>::Identity(d, d) * c;
  const Eigen::Index flip = d - 1;
  for (Eigen::Index col = 0; col < d; ++col) {
    const Eigen::Index row = col ^ flip;
    const bool top_set = (col & (d >> 1)) != 0;
    r(row, col) += top_set ? -s : s;
  }
  return BasicUnitary<Real>(std::move(r));
}

/// CNOT (H (x) 1): maps |e0 e1> to the four ebits.
template <typename Real = double>
BasicUnitary<Real> entanglement_gadget() {
  const CMatrix<Real> h1 = Eigen::kroneckerProduct(hadamard<Real>().matrix(), CMatrix<Real>::Identity(2, 2)).eval();
  return BasicUnitary<Real>(cnot<Real>().matrix() * h1);
}

/// (H (x) 1) CNOT, the Bell-measurement basis change.
template <typename Real = double>
BasicUnitary<Real> entanglement_gadget_inverse() {
  const CMatrix<Real> h1 = Eigen::kroneckerProduct(hadamard<Real>().matrix(), CMatrix<Real>::Identity(2, 2)).eval();
  return BasicUnitary<Real>(h1 * cnot<Real>().matrix());
}

}  // namespace qtcert
