#pragma once

#include "majsim/core.hpp"

#include <bit>
#include <compare>
#include <set>
#include <utility>

namespace majsim {

enum class Species : char { a = 'a', b = 'b' };

struct MajoranaIndex {
  int site = 1;
  Species species = Species::a;
  friend auto operator<=>(const MajoranaIndex&, const MajoranaIndex&) = default;
};

inline std::string label(const MajoranaIndex& m) {
  return std::to_string(m.site) + static_cast<char>(m.species);
}

// One pairing term: i * coefficient * gamma_first * gamma_second.
struct MajoranaTerm {
  double coefficient = 1.0;
  MajoranaIndex first, second;
};

struct MajoranaHamiltonian {
  std::vector<MajoranaTerm> terms;
};

struct DenseOperator {
  int site_count = 0;
  Mat matrix;
};

inline void check_mode(const MajoranaIndex& m, int site_count) {
  if (m.site < 1 || m.site > site_count)
    throw std::out_of_range("Majorana site " + std::to_string(m.site) + " out of range");
}

// gamma_{ja} = Z_1..Z_{j-1} X_j and gamma_{jb} = -Z_1..Z_{j-1} Y_j.
// The species-b sign is the per-site gauge that makes c^dag_j c_j = (1+sigma^z_j)/2.
inline DenseOperator majorana_matrix(const MajoranaIndex& m, int site_count) {
  check_mode(m, site_count);
  std::vector<char> letters(site_count, 'I');
  for (int k = 0; k + 1 < m.site; ++k) letters[k] = 'Z';
  letters[m.site - 1] = (m.species == Species::a) ? 'X' : 'Y';
  Mat g = site_chain_matrix(letters);
  if (m.species == Species::b) g = -g;
  return {site_count, std::move(g)};
}

inline DenseOperator build_hamiltonian(const MajoranaHamiltonian& h, int site_count) {
  const Eigen::Index dim = Eigen::Index(1) << site_count;
  Mat H = Mat::Zero(dim, dim);
  std::set<std::pair<MajoranaIndex, MajoranaIndex>> seen;
  for (const auto& t : h.terms) {
    check_mode(t.first, site_count);
    check_mode(t.second, site_count);
    if (t.first == t.second) throw std::invalid_argument("pairing term with identical modes");
    auto key = std::minmax(t.first, t.second);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate Majorana pair");
    H += cplx(0, 1) * t.coefficient *
         (majorana_matrix(t.first, site_count).matrix * majorana_matrix(t.second, site_count).matrix);
  }
  return {site_count, std::move(H)};
}

struct GroundSpace {
  double energy = 0.0;
  std::vector<StateVector> basis;
  int degeneracy = 0;
};

// Orthonormal basis of the lowest eigenspace; eigenvalues within tol of the
// minimum are grouped together.
inline GroundSpace ground_space(const DenseOperator& H, double tol = 1e-9) {
  if (!is_hermitian(H.matrix)) throw std::invalid_argument("ground_space needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(H.matrix);
  GroundSpace g;
  g.energy = es.eigenvalues()(0);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) >= g.energy + tol) break;
    g.basis.emplace_back(H.site_count, es.eigenvectors().col(k));
    ++g.degeneracy;
  }
  return g;
}

// Modes absent from every term; each is verified to commute with the built matrix.
inline std::vector<MajoranaIndex> zero_modes(const MajoranaHamiltonian& h, int site_count = 6) {
  std::set<MajoranaIndex> used;
  for (const auto& t : h.terms) {
    used.insert(t.first);
    used.insert(t.second);
  }
  DenseOperator H = build_hamiltonian(h, site_count);
  std::vector<MajoranaIndex> out;
  for (int site = 1; site <= site_count; ++site) {
    for (Species sp : {Species::a, Species::b}) {
      MajoranaIndex m{site, sp};
      if (used.contains(m)) continue;
      Mat g = majorana_matrix(m, site_count).matrix;
      if ((H.matrix * g - g * H.matrix).cwiseAbs().maxCoeff() > 1e-12)
        throw std::logic_error("unpaired mode fails to commute with the Hamiltonian");
      out.push_back(m);
    }
  }
  return out;
}

// (-1)^N as a diagonal matrix; +1 on even-occupation Fock states.
inline DenseOperator parity_operator(int site_count) {
  const Eigen::Index dim = Eigen::Index(1) << site_count;
  Mat P = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    P(i, i) = (std::popcount(static_cast<unsigned long long>(i)) % 2 == 0) ? 1.0 : -1.0;
  return {site_count, std::move(P)};
}

// Restriction of H to the Fock states of the given parity (+1 or -1).
inline Mat parity_sector(const DenseOperator& H, int parity) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < H.matrix.rows(); ++i) {
    int p = (std::popcount(static_cast<unsigned long long>(i)) % 2 == 0) ? 1 : -1;
    if (p == parity) keep.push_back(i);
  }
  Mat out(keep.size(), keep.size());
  for (size_t r = 0; r < keep.size(); ++r)
    for (size_t c = 0; c < keep.size(); ++c) out(r, c) = H.matrix(keep[r], keep[c]);
  return out;
}

}  // namespace majsim
