#pragma once

#include "majsim/ite_engine.hpp"

#include <array>

namespace majsim {

inline constexpr int chain_sites = 6;
inline constexpr double leakage_threshold = 1e-6;

// Amplitudes over {|00_g>, |01_g>, |10_g>, |11_g>}; residual is the norm of
// the component outside the code space, so |amplitudes|^2 + residual^2 = 1
// for a decoded physical state.
struct LogicalState {
  Vec4 amplitudes = Vec4::Zero();
  double residual = 0.0;
};

struct LogicalGate {
  Mat4 matrix4 = Mat4::Identity();
  Mat2 even_block = Mat2::Identity();  // on {|00_g>, |11_g>}
  cplx stripped_phase = 1.0;           // global phase removed by the convention
  double leakage = 0.0;                // max residual^2 over the basis runs
  bool code_preserving = true;
};

namespace detail {

inline void add_product(Vec& v, cplx amp, std::initializer_list<int> occupied) {
  Eigen::Index idx = 0;
  for (int site : occupied) idx |= Eigen::Index(1) << (site - 1);
  v(idx) += amp;
}

// Logical basis per the chain encoding: chain 1 (sites 1,2) and chain 2
// (sites 4,5,6) ground doublets, link site 3 empty.
//   |0_12> = (|00> + |11>)/sqrt2         |1_12> = (|10> + |01>)/sqrt2
//   |0_456> = even-occupation strings /2  |1_456> = odd-occupation strings /2
inline std::array<StateVector, 4> build_logical_basis() {
  const double h = 0.5, r = 1.0 / std::sqrt(2.0);
  auto assemble = [&](bool chain1_one, bool chain2_one) {
    Vec v = Vec::Zero(64);
    std::vector<std::pair<double, std::vector<int>>> left, right;
    if (!chain1_one) left = {{r, {}}, {r, {1, 2}}};
    else left = {{r, {1}}, {r, {2}}};
    if (!chain2_one) right = {{h, {}}, {h, {4, 5}}, {h, {4, 6}}, {h, {5, 6}}};
    else right = {{h, {4, 5, 6}}, {h, {4}}, {h, {5}}, {h, {6}}};
    for (const auto& [la, ls] : left)
      for (const auto& [ra, rs] : right) {
        Eigen::Index idx = 0;
        for (int s : ls) idx |= Eigen::Index(1) << (s - 1);
        for (int s : rs) idx |= Eigen::Index(1) << (s - 1);
        v(idx) += la * ra;
      }
    return StateVector(chain_sites, std::move(v));
  };
  return {assemble(false, false), assemble(false, true), assemble(true, false),
          assemble(true, true)};
}

}  // namespace detail

inline const std::array<StateVector, 4>& logical_basis_states() {
  static const std::array<StateVector, 4> basis = detail::build_logical_basis();
  return basis;
}

inline StateVector encode_logical(const LogicalState& l) {
  if (l.residual != 0.0) throw std::invalid_argument("cannot encode a state with leakage");
  const auto& basis = logical_basis_states();
  Vec v = Vec::Zero(64);
  for (int k = 0; k < 4; ++k) v += l.amplitudes(k) * basis[k].amplitudes;
  return StateVector(chain_sites, std::move(v));
}

inline LogicalState decode_logical(const StateVector& psi) {
  const auto& basis = logical_basis_states();
  LogicalState l;
  for (int k = 0; k < 4; ++k) l.amplitudes(k) = overlap(basis[k], psi);
  l.residual = std::sqrt(std::max(0.0, 1.0 - l.amplitudes.squaredNorm()));
  return l;
}

// Fixed transform between the x-basis ground states
//   (|x x zbar x x x>, |x x zbar xb xb xb>, |xb xb zbar x x x>, |xb xb zbar xb xb xb>)
// and the logical basis; rows (1,1,1,1), (-1,1,-1,1), (1,1,-1,-1), (-1,1,1,-1), all /2.
inline const Eigen::Matrix4d& xbasis_transform() {
  static const Eigen::Matrix4d m = [] {
    Eigen::Matrix4d t;
    t << 1, 1, 1, 1, -1, 1, -1, 1, 1, 1, -1, -1, -1, 1, 1, -1;
    return Eigen::Matrix4d(0.5 * t);
  }();
  return m;
}

inline LogicalState xbasis_to_logical(const Vec4& xamps) {
  LogicalState l;
  l.amplitudes = xbasis_transform().transpose().cast<cplx>() * xamps;
  return l;
}

inline Vec4 logical_to_xbasis(const Vec4& logical) {
  return xbasis_transform().cast<cplx>() * logical;
}

// The static chain Hamiltonian of the two-chain network (hand-entered spin
// form): H0 = -X1X2 + Z3 - X4X5 - X5X6. Its ground space is the code space.
inline const SpinHamiltonian& chain_hamiltonian() {
  static const SpinHamiltonian h{{
      make_string(-1.0, chain_sites, {{1, Pauli::X}, {2, Pauli::X}}),
      make_string(1.0, chain_sites, {{3, Pauli::Z}}),
      make_string(-1.0, chain_sites, {{4, Pauli::X}, {5, Pauli::X}}),
      make_string(-1.0, chain_sites, {{5, Pauli::X}, {6, Pauli::X}}),
  }};
  return h;
}

namespace detail {

inline const Mat& code_reference_matrix() {
  static const Mat m = spin_matrix(chain_hamiltonian(), chain_sites).matrix;
  return m;
}

}  // namespace detail

// Runs the schedule on each encoded basis state and assembles the decoded
// columns into a 4x4 matrix, then removes the global phase. A basis state
// annihilated along the way (post-selected noise) contributes a zero column
// and clears code_preserving. The schedule must begin and end with a segment
// of the chain Hamiltonian so the code space is defined at both ends.
inline LogicalGate extract_gate(const Schedule& s) {
  if (s.segments.empty()) throw std::invalid_argument("empty schedule");
  const Mat& href = detail::code_reference_matrix();
  for (const Segment* seg : {&s.segments.front(), &s.segments.back()}) {
    if (seg->kind != SegmentKind::imaginary)
      throw std::invalid_argument("schedule must start and end with chain-Hamiltonian segments");
    Mat m = spin_matrix(seg->hamiltonian, chain_sites).matrix;
    if ((m - href).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("schedule must start and end with chain-Hamiltonian segments");
  }

  const auto& basis = logical_basis_states();
  LogicalGate g;
  g.matrix4 = Mat4::Zero();
  bool dead = false;
  for (int k = 0; k < 4; ++k) {
    try {
      StateVector out = run_schedule(basis[k], s);
      LogicalState l = decode_logical(out);
      g.matrix4.col(k) = l.amplitudes;
      g.leakage = std::max(g.leakage, l.residual * l.residual);
    } catch (const annihilated_error&) {
      dead = true;
    }
  }
  g.stripped_phase = fix_global_phase(g.matrix4);
  g.even_block(0, 0) = g.matrix4(0, 0);
  g.even_block(0, 1) = g.matrix4(0, 3);
  g.even_block(1, 0) = g.matrix4(3, 0);
  g.even_block(1, 1) = g.matrix4(3, 3);
  fix_global_phase(g.even_block);
  g.code_preserving = !dead && g.leakage <= leakage_threshold;
  return g;
}

// The {|00_g>, |11_g>} submatrix, phase-fixed. Gates mixing the parity
// sectors are rejected.
inline Mat2 even_parity_block(const LogicalGate& g) {
  double mixing = 0.0;
  for (int r : {0, 3})
    for (int c : {1, 2})
      mixing = std::max({mixing, std::abs(g.matrix4(r, c)), std::abs(g.matrix4(c, r))});
  if (mixing > 1e-8) throw std::invalid_argument("gate mixes fermion parity sectors");
  Mat2 b;
  b << g.matrix4(0, 0), g.matrix4(0, 3), g.matrix4(3, 0), g.matrix4(3, 3);
  fix_global_phase(b);
  return b;
}

// |tr(U^dag V)|^2 / d^2; global-phase invariant and symmetric.
inline double process_fidelity(const Mat& u, const Mat& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw std::invalid_argument("process_fidelity needs square matrices of equal shape");
  cplx tr = (u.adjoint() * v).trace();
  double d = static_cast<double>(u.rows());
  return std::norm(tr) / (d * d);
}

inline double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

inline double state_fidelity(const Vec4& a, const Vec4& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace majsim
