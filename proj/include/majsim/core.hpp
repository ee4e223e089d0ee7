#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace majsim {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr double norm_tolerance = 1e-12;
inline constexpr double dead_state_norm = 1e-14;

// Thrown when an evolution or a post-selected error leaves no amplitude behind.
struct annihilated_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Local basis per site is (empty, occupied), so the number operator is
// (1 + sigma^z)/2 and the all-empty Fock state sits at index 0.
// Site k occupies bit k-1 of the basis index.
inline const Mat2& pauli_matrix(char letter) {
  static const Mat2 I = Mat2::Identity();
  static const Mat2 X = (Mat2() << 0, 1, 1, 0).finished();
  static const Mat2 Y = (Mat2() << 0, cplx(0, 1), cplx(0, -1), 0).finished();
  static const Mat2 Z = (Mat2() << -1, 0, 0, 1).finished();
  switch (letter) {
    case 'I': return I;
    case 'X': return X;
    case 'Y': return Y;
    case 'Z': return Z;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// letters[k] acts on site k+1; site 1 is the least significant bit.
inline Mat site_chain_matrix(const std::vector<char>& letters) {
  Mat m = Mat::Identity(1, 1);
  for (char l : letters) m = kron(pauli_matrix(l), m);
  return m;
}

struct StateVector {
  int site_count = 0;
  Vec amplitudes;

  StateVector() = default;
  StateVector(int sites, Vec a) : site_count(sites), amplitudes(std::move(a)) {
    if (amplitudes.size() != (Eigen::Index(1) << site_count))
      throw std::invalid_argument("amplitude count is not 2^site_count");
    normalize();
  }

  static StateVector vacuum(int sites) {
    Vec a = Vec::Zero(Eigen::Index(1) << sites);
    a(0) = 1.0;
    return StateVector(sites, std::move(a));
  }

  Eigen::Index dimension() const { return amplitudes.size(); }

  void normalize() {
    double n = amplitudes.norm();
    if (n <= dead_state_norm) throw annihilated_error("state norm below 1e-14");
    amplitudes /= n;
  }
};

// <a|b>
inline cplx overlap(const StateVector& a, const StateVector& b) {
  if (a.site_count != b.site_count) throw std::invalid_argument("site count mismatch");
  return a.amplitudes.dot(b.amplitudes);
}

// Rotates m by a global phase so that its first entry above eps, scanning
// column 0 downward then the remaining columns, becomes real positive.
// Returns the phase that was removed.
template <typename MatT>
inline cplx fix_global_phase(MatT& m, double eps = 1e-9) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > eps) {
        cplx phase = m(r, c) / std::abs(m(r, c));
        m *= std::conj(phase);
        return phase;
      }
  return cplx(1.0, 0.0);
}

inline bool is_hermitian(const Mat& m, double tol = 1e-10) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace majsim
