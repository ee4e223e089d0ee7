#pragma once

#include "majsim/noise_lab.hpp"

#include <algorithm>
#include <cmath>

namespace majsim {

enum class SegmentKind { imaginary, real };

struct Segment {
  SpinHamiltonian hamiltonian;
  SegmentKind kind = SegmentKind::imaginary;
  double duration = 20.0;
};

struct NoiseInsertion {
  int position = 0;  // applied after this many segments have run
  NoiseSpec spec;
};

struct Schedule {
  std::vector<Segment> segments;
  std::vector<NoiseInsertion> noise_insertions;
};

inline Segment ite_segment(SpinHamiltonian h, double t = 20.0) {
  return {std::move(h), SegmentKind::imaginary, t};
}

inline Segment real_segment(SpinHamiltonian h, double tau) {
  return {std::move(h), SegmentKind::real, tau};
}

// e^{-Ht} psi, renormalized. Exponents are taken relative to the ground
// energy, so a state orthogonal to all of the surviving spectrum fails
// loudly instead of flushing to zero.
inline StateVector ite_step(const StateVector& psi, const Mat& H, double t) {
  if (t <= 0.0) throw std::invalid_argument("imaginary time must be positive");
  if (!is_hermitian(H)) throw std::invalid_argument("ite_step needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  Vec a = es.eigenvectors().adjoint() * psi.amplitudes;
  const double e0 = es.eigenvalues()(0);
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) *= std::exp(-(es.eigenvalues()(k) - e0) * t);
  return StateVector(psi.site_count, es.eigenvectors() * a);
}

inline StateVector ite_step(const StateVector& psi, const SpinHamiltonian& h, double t) {
  return ite_step(psi, spin_matrix(h, psi.site_count).matrix, t);
}

// Per-term factors e^{-(c_k P_k) t} applied in sequence with one final
// normalization. Exact (and equal to ite_step) when the terms commute,
// which is checked up front. Each factor is applied in the bounded form
// cosh-normalized to avoid overflow at large t.
inline StateVector ite_factored(const StateVector& psi, const SpinHamiltonian& h, double t) {
  if (t <= 0.0) throw std::invalid_argument("imaginary time must be positive");
  for (size_t i = 0; i < h.terms.size(); ++i)
    for (size_t j = i + 1; j < h.terms.size(); ++j)
      if (!h.terms[i].commutes_with(h.terms[j]))
        throw std::invalid_argument("ite_factored needs mutually commuting terms");
  Vec v = psi.amplitudes;
  for (const auto& term : h.terms) {
    if (term.weight() == 0) continue;  // constant shift, absorbed by normalization
    PauliString unit{1.0, term.letters};
    Mat P = spin_matrix(SpinHamiltonian{{unit}}, psi.site_count).matrix;
    double th = std::tanh(term.coefficient * t);
    v = v - th * (P * v);
  }
  return StateVector(psi.site_count, std::move(v));
}

struct DissipativeStep {
  StateVector state;
  double keep_probability = 0.0;
};

// The ancilla route to e^{-(term) t}: a two-level environment is appended as
// the highest tensor slot, a unitary rotates the high-energy branch of the
// term toward the discarded ancilla state, the ancilla is projected onto the
// kept branch and dropped.
inline DissipativeStep dissipative_term_step(const StateVector& psi, const PauliString& term,
                                             double t) {
  if (t <= 0.0) throw std::invalid_argument("imaginary time must be positive");
  if (term.coefficient == 0.0) throw std::invalid_argument("term with zero coefficient");
  if (term.weight() == 0) return {psi, 1.0};  // pure shift
  const double c = std::abs(term.coefficient);
  PauliString unit{1.0, term.letters};
  Mat P = spin_matrix(SpinHamiltonian{{unit}}, psi.site_count).matrix;
  const double sign = term.coefficient > 0 ? 1.0 : -1.0;
  const Eigen::Index dim = psi.dimension();

  // joint state, ancilla |0_e> block first
  Vec joint = Vec::Zero(2 * dim);
  joint.head(dim) = psi.amplitudes;

  Vec high = 0.5 * (psi.amplitudes + sign * (P * psi.amplitudes));
  Vec low = psi.amplitudes - high;
  const double theta = std::acos(std::clamp(std::exp(-2.0 * c * t), 0.0, 1.0));
  joint.head(dim) = low + std::cos(theta) * high;
  joint.tail(dim) = std::sin(theta) * high;

  Vec kept = joint.head(dim);
  double prob = kept.squaredNorm();
  if (prob < dead_state_norm) throw annihilated_error("dissipative step post-selection died");
  return {StateVector(psi.site_count, std::move(kept)), prob};
}

// e^{-iH tau} psi; tau = 0 is a no-op.
inline StateVector real_time_step(const StateVector& psi, const Mat& H, double tau) {
  if (!is_hermitian(H)) throw std::invalid_argument("real_time_step needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  Vec a = es.eigenvectors().adjoint() * psi.amplitudes;
  for (Eigen::Index k = 0; k < a.size(); ++k)
    a(k) *= std::exp(cplx(0, -es.eigenvalues()(k) * tau));
  return StateVector(psi.site_count, es.eigenvectors() * a);
}

inline StateVector real_time_step(const StateVector& psi, const SpinHamiltonian& h, double tau) {
  return real_time_step(psi, spin_matrix(h, psi.site_count).matrix, tau);
}

// Folds the segments over psi, applying each noise insertion once the given
// number of segments has completed. Survival probabilities are appended to
// survival_log in schedule order when provided.
inline StateVector run_schedule(const StateVector& psi, const Schedule& s,
                                std::vector<double>* survival_log = nullptr) {
  if (s.segments.empty()) throw std::invalid_argument("empty schedule");
  for (const auto& ins : s.noise_insertions)
    if (ins.position < 0 || ins.position > static_cast<int>(s.segments.size()))
      throw std::invalid_argument("noise position out of range");

  StateVector state = psi;
  auto fire_noise = [&](int completed) {
    for (const auto& ins : s.noise_insertions) {
      if (ins.position != completed) continue;
      NoisyState n = apply_noise(state, ins.spec);
      state = std::move(n.state);
      if (survival_log) survival_log->push_back(n.survival);
    }
  };
  fire_noise(0);
  for (size_t k = 0; k < s.segments.size(); ++k) {
    const Segment& seg = s.segments[k];
    if (seg.kind == SegmentKind::imaginary)
      state = ite_step(state, seg.hamiltonian, seg.duration);
    else
      state = real_time_step(state, seg.hamiltonian, seg.duration);
    fire_noise(static_cast<int>(k) + 1);
  }
  return state;
}

}  // namespace majsim
