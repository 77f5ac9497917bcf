#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qtcert/types.hpp"
#include "qtcert/unitary.hpp"

namespace qtcert {

/// Dense amplitude vector over an ordered qubit register.
///
/// States are allowed to be sub-normalized: a branch produced by projecting
/// onto a measurement outcome carries its probability as its squared norm.
template <typename Real>
class BasicPureState {
 public:
  using Vector = CVector<Real>;

  /// Empty register; the single amplitude is 1.
  BasicPureState() : amplitudes_(Vector::Ones(1)) {}

  explicit BasicPureState(Vector amplitudes, int max_qubits = kMaxQubits)
      : amplitudes_(std::move(amplitudes)) {
    const auto size = static_cast<std::uint64_t>(amplitudes_.size());
    if (!bits::is_power_of_two(size)) {
      throw DimensionError("amplitude vector length must be a power of two");
    }
    num_qubits_ = bits::log2_exact(size);
    check_capacity(num_qubits_, max_qubits);
  }

  static BasicPureState basis(int num_qubits, std::uint64_t label) {
    check_capacity(num_qubits);
    if (num_qubits < 0 || label >= bits::dim(num_qubits)) {
      throw DimensionError("basis label out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(bits::dim(num_qubits)));
    v(static_cast<Eigen::Index>(label)) = Real(1);
    return BasicPureState(std::move(v));
  }

  /// |0...0> on `num_qubits` qubits.
  static BasicPureState zeros(int num_qubits) { return basis(num_qubits, 0); }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex<Real> operator[](Eigen::Index i) const { return amplitudes_(i); }

  Real norm_squared() const { return amplitudes_.squaredNorm(); }

  /// Branch probability carried by a sub-normalized state.
  Real probability() const { return norm_squared(); }

  bool is_normalized(Real tol = Tolerance<Real>::construction) const {
    return std::abs(norm_squared() - Real(1)) <= tol;
  }

  BasicPureState normalized() const {
    const Real n2 = norm_squared();
    if (!(n2 > Real(0))) throw StateError("cannot normalize a zero-norm state");
    return BasicPureState(amplitudes_ / std::sqrt(n2));
  }

  BasicPureState scaled(Real factor) const { return BasicPureState(amplitudes_ * factor); }

 private:
  Vector amplitudes_;
  int num_qubits_ = 0;
};

/// Hermitian positive operator, possibly sub-normalized (trace in [0, 1]).
template <typename Real>
class BasicDensityOperator {
 public:
  using Matrix = CMatrix<Real>;

  BasicDensityOperator() : matrix_(Matrix::Ones(1, 1)) {}

  /// Checked construction: shape, Hermiticity and trace range. Positivity is
  /// checked by `validated`, which needs an eigendecomposition.
  explicit BasicDensityOperator(Matrix matrix) : matrix_(std::move(matrix)) {
    set_shape();
    const Real herm = hermiticity_error();
    if (!(herm <= Tolerance<Real>::construction)) {
      throw StateError("density operator is not Hermitian");
    }
    const Complex<Real> tr = matrix_.trace();
    if (std::abs(tr.imag()) > Tolerance<Real>::construction || tr.real() < -Tolerance<Real>::construction ||
        tr.real() > Real(1) + Tolerance<Real>::construction) {
      throw StateError("density operator trace outside [0, 1]");
    }
  }

  /// Full invariant check including positive semidefiniteness.
  static BasicDensityOperator validated(Matrix matrix) {
    BasicDensityOperator rho(std::move(matrix));
    if (rho.min_eigenvalue() < -Tolerance<Real>::positivity) {
      throw StateError("density operator is not positive semidefinite");
    }
    return rho;
  }

  /// Skips the checks; for results of operations that preserve the invariants.
  static BasicDensityOperator trusted(Matrix matrix) {
    BasicDensityOperator rho;
    rho.matrix_ = std::move(matrix);
    rho.set_shape();
    return rho;
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  Complex<Real> operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

  Real trace() const { return matrix_.trace().real(); }

  Real hermiticity_error() const { return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff(); }

  Real min_eigenvalue() const {
    const Matrix herm = (matrix_ + matrix_.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

  BasicDensityOperator scaled(Real factor) const { return trusted(matrix_ * factor); }

  BasicDensityOperator normalized() const {
    const Real tr = trace();
    if (!(tr > Real(0))) throw StateError("cannot normalize a zero-trace operator");
    return trusted(matrix_ / tr);
  }

  friend BasicDensityOperator operator+(const BasicDensityOperator& a, const BasicDensityOperator& b) {
    if (a.dim() != b.dim()) throw DimensionError("density operator sum dimension mismatch");
    return trusted(a.matrix_ + b.matrix_);
  }

 private:
  void set_shape() {
    if (matrix_.rows() != matrix_.cols() || !bits::is_power_of_two(static_cast<std::uint64_t>(matrix_.rows()))) {
      throw DimensionError("density operator must be square with power-of-two dimension");
    }
    num_qubits_ = bits::log2_exact(static_cast<std::uint64_t>(matrix_.rows()));
  }

  Matrix matrix_;
  int num_qubits_ = 0;
};

using PureState = BasicPureState<double>;
using DensityOperator = BasicDensityOperator<double>;

namespace detail {

inline void check_targets(int num_qubits, std::span<const int> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) throw DimensionError("qubit index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw DimensionError("duplicate qubit index");
    }
  }
}

inline std::vector<int> complement(int num_qubits, std::span<const int> qubits) {
  std::vector<int> rest;
  for (int q = 0; q < num_qubits; ++q) {
    if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
  }
  return rest;
}

/// Labels of every basis state of `qubits` embedded into the full register.
inline std::vector<std::uint64_t> offsets(int num_qubits, std::span<const int> qubits) {
  std::vector<std::uint64_t> out(bits::dim(static_cast<int>(qubits.size())));
  for (std::uint64_t j = 0; j < out.size(); ++j) out[j] = bits::scatter(j, num_qubits, qubits);
  return out;
}

/// M <- (U on targets) M, acting on the row index of M.
template <typename Real, typename Derived>
void apply_rows(Eigen::MatrixBase<Derived>& m, const CMatrix<Real>& u, int num_qubits, std::span<const int> targets) {
  const auto rest = complement(num_qubits, targets);
  const auto local = offsets(num_qubits, targets);
  const auto bases = offsets(num_qubits, rest);
  const auto k = static_cast<Eigen::Index>(local.size());
  CMatrix<Real> block(k, m.cols());
  for (std::uint64_t base : bases) {
    for (Eigen::Index j = 0; j < k; ++j) block.row(j) = m.row(static_cast<Eigen::Index>(base | local[static_cast<std::size_t>(j)]));
    block = u * block;
    for (Eigen::Index j = 0; j < k; ++j) m.row(static_cast<Eigen::Index>(base | local[static_cast<std::size_t>(j)])) = block.row(j);
  }
}

}  // namespace detail

/// a (x) b, with a's qubits in the high-order positions.
template <typename Real>
BasicPureState<Real> tensor(const BasicPureState<Real>& a, const BasicPureState<Real>& b, int max_qubits = kMaxQubits) {
  check_capacity(a.num_qubits() + b.num_qubits(), max_qubits);
  CVector<Real> out = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return BasicPureState<Real>(std::move(out), max_qubits);
}

template <typename Real>
BasicDensityOperator<Real> tensor(const BasicDensityOperator<Real>& a, const BasicDensityOperator<Real>& b,
                                  int max_qubits = kMaxQubits) {
  check_capacity(a.num_qubits() + b.num_qubits(), max_qubits);
  CMatrix<Real> out = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return BasicDensityOperator<Real>::trusted(std::move(out));
}

template <typename Real>
BasicPureState<Real> apply_unitary(const BasicPureState<Real>& state, const BasicUnitary<Real>& u,
                                   std::span<const int> targets) {
  detail::check_targets(state.num_qubits(), targets);
  if (u.num_qubits() != static_cast<int>(targets.size())) {
    throw DimensionError("unitary dimension does not match the number of targets");
  }
  CVector<Real> amps = state.amplitudes();
  detail::apply_rows<Real>(amps, u.matrix(), state.num_qubits(), targets);
  return BasicPureState<Real>(std::move(amps));
}

template <typename Real>
BasicPureState<Real> apply_unitary(const BasicPureState<Real>& state, const BasicUnitary<Real>& u,
                                   std::initializer_list<int> targets) {
  return apply_unitary(state, u, std::span<const int>(targets.begin(), targets.size()));
}

/// rho -> U rho U^dag on the target qubits.
template <typename Real>
BasicDensityOperator<Real> apply_unitary(const BasicDensityOperator<Real>& rho, const BasicUnitary<Real>& u,
                                         std::span<const int> targets) {
  detail::check_targets(rho.num_qubits(), targets);
  if (u.num_qubits() != static_cast<int>(targets.size())) {
    throw DimensionError("unitary dimension does not match the number of targets");
  }
  CMatrix<Real> m = rho.matrix();
  detail::apply_rows<Real>(m, u.matrix(), rho.num_qubits(), targets);
  CMatrix<Real> mt = m.adjoint();
  detail::apply_rows<Real>(mt, u.matrix(), rho.num_qubits(), targets);
  return BasicDensityOperator<Real>::trusted(mt.adjoint());
}

template <typename Real>
BasicDensityOperator<Real> apply_unitary(const BasicDensityOperator<Real>& rho, const BasicUnitary<Real>& u,
                                         std::initializer_list<int> targets) {
  return apply_unitary(rho, u, std::span<const int>(targets.begin(), targets.size()));
}

template <typename Real>
BasicDensityOperator<Real> to_density(const BasicPureState<Real>& psi) {
  return BasicDensityOperator<Real>::trusted(psi.amplitudes() * psi.amplitudes().adjoint());
}

/// Traces out `discard`; discarding every qubit leaves the 1x1 operator [tr rho].
template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real>& rho, std::span<const int> discard) {
  const int n = rho.num_qubits();
  detail::check_targets(n, discard);
  const auto kept = detail::complement(n, discard);
  const auto keep_off = detail::offsets(n, kept);
  const auto disc_off = detail::offsets(n, discard);
  const auto d = static_cast<Eigen::Index>(keep_off.size());
  CMatrix<Real> out = CMatrix<Real>::Zero(d, d);
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex<Real> acc{};
      for (std::uint64_t t : disc_off) {
        acc += m(static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(i)] | t),
                 static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(j)] | t));
      }
      out(i, j) = acc;
    }
  }
  return BasicDensityOperator<Real>::trusted(std::move(out));
}

template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real>& rho, std::initializer_list<int> discard) {
  return partial_trace(rho, std::span<const int>(discard.begin(), discard.size()));
}

/// Reduced operator of a pure state, computed as M M^dag with M indexed (kept, discarded).
template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicPureState<Real>& psi, std::span<const int> discard) {
  const int n = psi.num_qubits();
  detail::check_targets(n, discard);
  const auto kept = detail::complement(n, discard);
  const auto keep_off = detail::offsets(n, kept);
  const auto disc_off = detail::offsets(n, discard);
  CMatrix<Real> m(static_cast<Eigen::Index>(keep_off.size()), static_cast<Eigen::Index>(disc_off.size()));
  for (std::size_t i = 0; i < keep_off.size(); ++i) {
    for (std::size_t t = 0; t < disc_off.size(); ++t) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          psi[static_cast<Eigen::Index>(keep_off[i] | disc_off[t])];
    }
  }
  return BasicDensityOperator<Real>::trusted(m * m.adjoint());
}

/// <psi|rho|psi>; the imaginary residue must vanish to construction tolerance.
template <typename Real>
Real expectation(const BasicDensityOperator<Real>& rho, const BasicPureState<Real>& psi) {
  if (rho.dim() != psi.dim()) throw DimensionError("expectation: qubit count mismatch");
  const Complex<Real> v = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  if (std::abs(v.imag()) > Tolerance<Real>::construction) {
    throw StateError("expectation value has a non-negligible imaginary part");
  }
  return v.real();
}

/// Projects `qubit` onto |bit> and removes it; the result keeps the outcome
/// probability as its squared norm.
template <typename Real>
BasicPureState<Real> project_out(const BasicPureState<Real>& psi, int qubit, int bit) {
  const int n = psi.num_qubits();
  const int one[] = {qubit};
  detail::check_targets(n, one);
  const auto kept = detail::complement(n, one);
  const auto keep_off = detail::offsets(n, kept);
  const std::uint64_t fixed = bit ? (std::uint64_t{1} << (n - 1 - qubit)) : 0;
  CVector<Real> out(static_cast<Eigen::Index>(keep_off.size()));
  for (std::size_t i = 0; i < keep_off.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = psi[static_cast<Eigen::Index>(keep_off[i] | fixed)];
  }
  return BasicPureState<Real>(std::move(out));
}

/// Density-operator analogue of project_out: the |bit><bit| block of `qubit`.
template <typename Real>
BasicDensityOperator<Real> project_out(const BasicDensityOperator<Real>& rho, int qubit, int bit) {
  const int n = rho.num_qubits();
  const int one[] = {qubit};
  detail::check_targets(n, one);
  const auto kept = detail::complement(n, one);
  const auto keep_off = detail::offsets(n, kept);
  const std::uint64_t fixed = bit ? (std::uint64_t{1} << (n - 1 - qubit)) : 0;
  const auto d = static_cast<Eigen::Index>(keep_off.size());
  CMatrix<Real> out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = rho(static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(i)] | fixed),
                      static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(j)] | fixed));
    }
  }
  return BasicDensityOperator<Real>::trusted(std::move(out));
}

/// Inserts a fresh |0><0| qubit so that it becomes qubit `position` of the result.
template <typename Real>
BasicDensityOperator<Real> insert_zero(const BasicDensityOperator<Real>& rho, int position, int max_qubits = kMaxQubits) {
  const int n = rho.num_qubits() + 1;
  if (position < 0 || position >= n) throw DimensionError("insertion position out of range");
  check_capacity(n, max_qubits);
  const int one[] = {position};
  const auto kept = detail::complement(n, one);
  const auto keep_off = detail::offsets(n, kept);
  const auto d = static_cast<Eigen::Index>(bits::dim(n));
  CMatrix<Real> out = CMatrix<Real>::Zero(d, d);
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      out(static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(i)]),
          static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(j)])) = rho(i, j);
    }
  }
  return BasicDensityOperator<Real>::trusted(std::move(out));
}

}  // namespace qtcert
