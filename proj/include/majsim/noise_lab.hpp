#pragma once

#include "majsim/jw_spin.hpp"

namespace majsim {

enum class NoiseKind { phase, flip };

// A post-selected projective error: applied at a schedule boundary, the state
// is projected, renormalized and the squared pre-normalization norm recorded
// as the survival probability. position counts completed segments; -1 asks
// the owning recipe for its default insertion point.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::phase;
  std::vector<int> sites;
  int position = -1;
};

inline void validate_noise(const NoiseSpec& n, int site_count) {
  if (n.kind == NoiseKind::phase) {
    if (n.sites.size() != 1) throw std::invalid_argument("phase error takes exactly one site");
  } else {
    if (n.sites.size() != 2) throw std::invalid_argument("flip error takes a site pair");
    if (std::abs(n.sites[0] - n.sites[1]) != 1)
      throw std::invalid_argument("flip error sites must be adjacent");
  }
  for (int s : n.sites)
    if (s < 1 || s > site_count) throw std::invalid_argument("noise site out of range");
}

// phase: (1 + Z_s)/2, projector.  flip: (X_i X_j + Y_i Y_j)/2, fermion
// tunneling between neighbouring sites; swaps antialigned pairs, kills
// aligned ones.
inline DenseOperator noise_operator(const NoiseSpec& n, int site_count) {
  validate_noise(n, site_count);
  if (n.kind == NoiseKind::phase) {
    SpinHamiltonian h{{make_string(0.5, site_count, {}),
                      make_string(0.5, site_count, {{n.sites[0], Pauli::Z}})}};
    return spin_matrix(h);
  }
  SpinHamiltonian h{{make_string(0.5, site_count, {{n.sites[0], Pauli::X}, {n.sites[1], Pauli::X}}),
                    make_string(0.5, site_count, {{n.sites[0], Pauli::Y}, {n.sites[1], Pauli::Y}})}};
  return spin_matrix(h);
}

struct NoisyState {
  StateVector state;
  double survival = 0.0;
};

inline NoisyState apply_noise(const StateVector& psi, const NoiseSpec& n) {
  Mat op = noise_operator(n, psi.site_count).matrix;
  Vec out = op * psi.amplitudes;
  double survival = out.squaredNorm();
  if (survival < dead_state_norm) throw annihilated_error("error projector left zero survival");
  return {StateVector(psi.site_count, std::move(out)), survival};
}

inline NoisyState apply_phase_error(const StateVector& psi, int site) {
  return apply_noise(psi, NoiseSpec{NoiseKind::phase, {site}, -1});
}

inline NoisyState apply_flip_error(const StateVector& psi, std::pair<int, int> sites) {
  return apply_noise(psi, NoiseSpec{NoiseKind::flip, {sites.first, sites.second}, -1});
}

}  // namespace majsim
