#pragma once

// Brute-force reference model used by the tests. Every operator acts on the
// full (m+2)-qubit register as an explicit 2^n x 2^n matrix built from
// Kronecker products; qubits are only traced out at the very end. Nothing here
// calls into the library.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat X() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat Z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Mat H() {
  Mat m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
/// |bit><bit|
inline Mat P(int bit) {
  Mat m = Mat::Zero(2, 2);
  m(bit, bit) = 1;
  return m;
}
/// |row><col|
inline Mat E(int row, int col) {
  Mat m = Mat::Zero(2, 2);
  m(row, col) = 1;
  return m;
}

/// `g` on qubit q of n (qubit 0 is the leftmost Kronecker factor).
inline Mat on(int n, int q, const Mat& g) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, k == q ? g : I2());
  return out;
}

inline Mat cnot(int n, int control, int target) {
  return on(n, control, P(0)) + on(n, control, P(1)) * on(n, target, X());
}

/// Keeps the listed qubits (in the listed order) and sums over the rest.
inline Mat keep(const Mat& rho, int n, const std::vector<int>& kept) {
  const int k = static_cast<int>(kept.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    bool found = false;
    for (int x : kept) found = found || x == q;
    if (!found) traced.push_back(q);
  }
  const Eigen::Index dk = Eigen::Index{1} << k;
  const Eigen::Index dt = Eigen::Index{1} << traced.size();
  auto label = [&](Eigen::Index kept_bits, Eigen::Index traced_bits) {
    Eigen::Index full = 0;
    for (int i = 0; i < k; ++i) {
      if ((kept_bits >> (k - 1 - i)) & 1) full |= Eigen::Index{1} << (n - 1 - kept[static_cast<std::size_t>(i)]);
    }
    const int t = static_cast<int>(traced.size());
    for (int i = 0; i < t; ++i) {
      if ((traced_bits >> (t - 1 - i)) & 1) full |= Eigen::Index{1} << (n - 1 - traced[static_cast<std::size_t>(i)]);
    }
    return full;
  };
  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      for (Eigen::Index t = 0; t < dt; ++t) out(r, c) += rho(label(r, t), label(c, t));
    }
  }
  return out;
}

/// Target |Psi> written out directly for each family.
inline Vec target(const std::string& family, int m, double theta, double phi) {
  const Eigen::Index d = Eigen::Index{1} << m;
  Vec v = Vec::Zero(d);
  if (family == "trivial") {
    v(0) = 1;
  } else if (family == "ghz") {
    v(0) = std::cos(theta / 2);
    v(d - 1) += std::sin(theta / 2);
  } else {
    v(0) = std::cos(theta / 2);
    v(1) = std::polar(1.0, phi) * std::sin(theta / 2);
  }
  return v;
}

struct Branch {
  int a = 0;
  std::optional<int> b;
  /// Sub-normalized operator over the m-1 ancillas then B's qubit.
  Mat joint;
};

/// Reset of qubit q to |0>: sum_k |0><k| rho |k><0| (trash then fresh |0>).
inline Mat reset(const Mat& rho, int n, int q) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (int k = 0; k < 2; ++k) {
    const Mat kraus = on(n, q, E(0, k));
    out += kraus * rho * kraus.adjoint();
  }
  return out;
}

/// Runs one of "p0", "pa1", "pa2", "pb", "pab".
inline std::vector<Branch> run(const std::string& protocol, const std::string& family, int m, double theta,
                               double phi) {
  const int n = m + 2;
  const int sender = m - 1;
  const int share_a = m;
  const int share_b = m + 1;
  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const Vec psi0 = kron(target(family, m, theta, phi), bell);
  const Mat rho0 = psi0 * psi0.adjoint();

  std::vector<int> out_qubits;
  for (int q = 0; q < m - 1; ++q) out_qubits.push_back(q);
  out_qubits.push_back(share_b);

  const Mat bsm = on(n, sender, H()) * cnot(n, sender, share_a);
  auto pow = [](const Mat& g, int k) { return k ? g : I2(); };

  std::vector<Branch> out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Mat rho;
      if (protocol == "p0") {
        const Mat proj = on(n, sender, P(a)) * on(n, share_a, P(b));
        const Mat fix = on(n, share_b, pow(Z(), a) * pow(X(), b));
        rho = fix * proj * bsm * rho0 * bsm.adjoint() * proj * fix.adjoint();
      } else if (protocol == "pa1") {
        const Mat proj = on(n, sender, P(a));
        const Mat fix = on(n, share_b, pow(Z(), a) * pow(X(), b));
        rho = 0.5 * fix * proj * rho0 * proj * fix.adjoint();
      } else if (protocol == "pa2") {
        const Mat fix = on(n, share_b, pow(Z(), a) * pow(X(), b));
        rho = 0.25 * fix * rho0 * fix.adjoint();
      } else if (protocol == "pb") {
        const Mat proj = on(n, sender, P(a)) * on(n, share_a, P(b));
        const Mat fix = on(n, share_b, pow(X(), a));
        rho = fix * reset(proj * bsm * rho0 * bsm.adjoint() * proj, n, share_b) * fix.adjoint();
      } else if (protocol == "pab") {
        if (b == 1) continue;
        const Mat proj = on(n, sender, P(a));
        const Mat fix = on(n, share_b, pow(X(), a));
        rho = fix * reset(proj * rho0 * proj, n, share_b) * fix.adjoint();
      }
      Branch br;
      br.a = a;
      if (protocol != "pab") br.b = b;
      br.joint = keep(rho, n, out_qubits);
      out.push_back(std::move(br));
    }
  }
  return out;
}

/// sum over branches of <Psi|joint|Psi>.
inline double threshold(const std::vector<Branch>& branches, const Vec& psi) {
  double f = 0.0;
  for (const Branch& br : branches) f += (psi.adjoint() * br.joint * psi)(0, 0).real();
  return f;
}

}  // namespace oracle
