#pragma once

#include "qtcert/types.hpp"

namespace qtcert {

/// Square complex matrix of power-of-two dimension, checked unitary on construction.
template <typename Real>
class BasicUnitary {
 public:
  using Matrix = CMatrix<Real>;

  explicit BasicUnitary(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() ||
        !bits::is_power_of_two(static_cast<std::uint64_t>(entries_.rows()))) {
      throw DimensionError("unitary must be square with power-of-two dimension");
    }
    num_qubits_ = bits::log2_exact(static_cast<std::uint64_t>(entries_.rows()));
    check_capacity(num_qubits_);
    const Real err = unitarity_error(entries_);
    if (!(err <= Tolerance<Real>::construction)) {
      throw DimensionError("matrix is not unitary (max |U^dag U - 1| = " + std::to_string(static_cast<double>(err)) + ")");
    }
  }

  static Real unitarity_error(const Matrix& u) {
    const Matrix residual = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return residual.cwiseAbs().maxCoeff();
  }

  Real unitarity_error() const { return unitarity_error(entries_); }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  BasicUnitary adjoint() const { return BasicUnitary(entries_.adjoint()); }

  friend BasicUnitary operator*(const BasicUnitary& lhs, const BasicUnitary& rhs) {
    if (lhs.dim() != rhs.dim()) throw DimensionError("unitary product dimension mismatch");
    return BasicUnitary(lhs.entries_ * rhs.entries_);
  }

 private:
  Matrix entries_;
  int num_qubits_ = 0;
};

using UnitaryMatrix = BasicUnitary<double>;

}  // namespace qtcert
