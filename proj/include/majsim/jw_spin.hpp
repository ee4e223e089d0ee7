#pragma once

#include "majsim/fermion_algebra.hpp"

#include <cstdio>
#include <map>

namespace majsim {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

struct PauliString {
  double coefficient = 0.0;
  std::vector<Pauli> letters;

  int weight() const {
    int w = 0;
    for (Pauli p : letters)
      if (p != Pauli::I) ++w;
    return w;
  }

  // Pauli strings commute iff they anticommute on an even number of sites.
  bool commutes_with(const PauliString& other) const {
    int anti = 0;
    for (size_t k = 0; k < letters.size() && k < other.letters.size(); ++k) {
      Pauli a = letters[k], b = other.letters[k];
      if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
    }
    return anti % 2 == 0;
  }
};

struct SpinHamiltonian {
  std::vector<PauliString> terms;

  int site_count() const { return terms.empty() ? 0 : static_cast<int>(terms[0].letters.size()); }
};

// Merges terms with identical letter arrays and drops vanished coefficients.
inline SpinHamiltonian canonicalized(const SpinHamiltonian& h) {
  std::map<std::vector<Pauli>, double> merged;
  for (const auto& t : h.terms) merged[t.letters] += t.coefficient;
  SpinHamiltonian out;
  for (auto& [letters, c] : merged)
    if (std::abs(c) > 0.0) out.terms.push_back({c, letters});
  return out;
}

inline PauliString make_string(double coefficient, int site_count,
                               std::initializer_list<std::pair<int, Pauli>> letters) {
  PauliString s{coefficient, std::vector<Pauli>(site_count, Pauli::I)};
  for (auto [site, p] : letters) s.letters[site - 1] = p;
  return s;
}

inline DenseOperator spin_matrix(const SpinHamiltonian& h, int site_count = 0) {
  int n = site_count > 0 ? site_count : h.site_count();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat H = Mat::Zero(dim, dim);
  for (const auto& t : h.terms) {
    std::vector<char> letters;
    for (Pauli p : t.letters) letters.push_back(static_cast<char>(p));
    letters.resize(n, 'I');
    H += t.coefficient * site_chain_matrix(letters);
  }
  return {n, std::move(H)};
}

inline Mat pauli_string_matrix(const PauliString& s) {
  return spin_matrix(SpinHamiltonian{{s}}).matrix;
}

namespace detail {

// a * b = phase * result for single-site Paulis
inline std::pair<Pauli, cplx> pauli_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 1.0};
  if (b == Pauli::I) return {a, 1.0};
  if (a == b) return {Pauli::I, 1.0};
  auto third = [](Pauli p, Pauli q) {
    int mask = static_cast<int>(Pauli::X) ^ static_cast<int>(Pauli::Y) ^ static_cast<int>(Pauli::Z);
    return static_cast<Pauli>(mask ^ static_cast<int>(p) ^ static_cast<int>(q));
  };
  // cyclic: XY=iZ, YZ=iX, ZX=iY
  bool forward = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) ||
                 (a == Pauli::Z && b == Pauli::X);
  return {third(a, b), forward ? cplx(0, 1) : cplx(0, -1)};
}

struct GammaString {
  double sign;
  std::vector<Pauli> letters;
};

inline GammaString gamma_string(const MajoranaIndex& m, int site_count) {
  GammaString g{m.species == Species::a ? 1.0 : -1.0, std::vector<Pauli>(site_count, Pauli::I)};
  for (int k = 0; k + 1 < m.site; ++k) g.letters[k] = Pauli::Z;
  g.letters[m.site - 1] = (m.species == Species::a) ? Pauli::X : Pauli::Y;
  return g;
}

}  // namespace detail

// Jordan-Wigner image of the pairing Hamiltonian under the convention of
// majorana_matrix. spin_matrix of the result reproduces build_hamiltonian
// entrywise; the signs of individual X..X bond terms differ from the
// experiment's Hamiltonian table (see sign_gauge_report).
inline SpinHamiltonian jw_transform(const MajoranaHamiltonian& h, int site_count = 6) {
  SpinHamiltonian out;
  for (const auto& t : h.terms) {
    check_mode(t.first, site_count);
    check_mode(t.second, site_count);
    auto g1 = detail::gamma_string(t.first, site_count);
    auto g2 = detail::gamma_string(t.second, site_count);
    cplx phase = cplx(0, 1) * g1.sign * g2.sign;
    std::vector<Pauli> prod(site_count, Pauli::I);
    for (int k = 0; k < site_count; ++k) {
      auto [letter, ph] = detail::pauli_product(g1.letters[k], g2.letters[k]);
      prod[k] = letter;
      phase *= ph;
    }
    if (std::abs(phase.imag()) > 1e-12) throw std::logic_error("quadratic term came out non-Hermitian");
    out.terms.push_back({t.coefficient * phase.real(), std::move(prod)});
  }
  return canonicalized(out);
}

// Spin form of a pairing Hamiltonian matching the experiment's printed chain
// Hamiltonians term by term. It agrees with jw_transform except on b-a bond
// images (-X..X here) and on-site / b-b images, whose signs are calibrated
// against the printed table; the two forms are isospectral.
inline SpinHamiltonian pairing_spin_form(const MajoranaHamiltonian& h, int site_count = 6) {
  SpinHamiltonian out;
  for (const auto& t : h.terms) {
    check_mode(t.first, site_count);
    check_mode(t.second, site_count);
    MajoranaIndex lo = t.first, hi = t.second;
    double sign = 1.0;
    if (hi < lo) {
      std::swap(lo, hi);
      sign = -1.0;
    }
    std::vector<Pauli> letters(site_count, Pauli::I);
    if (lo.site == hi.site) {
      letters[lo.site - 1] = Pauli::Z;
    } else {
      for (int q = lo.site + 1; q < hi.site; ++q) letters[q - 1] = Pauli::Z;
      if (lo.species == Species::b && hi.species == Species::a) {
        letters[lo.site - 1] = Pauli::X;
        letters[hi.site - 1] = Pauli::X;
        sign = -sign;
      } else if (lo.species == Species::a && hi.species == Species::a) {
        letters[lo.site - 1] = Pauli::Y;
        letters[hi.site - 1] = Pauli::X;
      } else if (lo.species == Species::b && hi.species == Species::b) {
        letters[lo.site - 1] = Pauli::X;
        letters[hi.site - 1] = Pauli::Y;
      } else {  // a-b
        letters[lo.site - 1] = Pauli::Y;
        letters[hi.site - 1] = Pauli::Y;
      }
    }
    out.terms.push_back({t.coefficient * sign, std::move(letters)});
  }
  return canonicalized(out);
}

// Greedy first-fit partition into mutually commuting groups.
inline std::vector<std::vector<PauliString>> commuting_groups(const SpinHamiltonian& h) {
  std::vector<std::vector<PauliString>> groups;
  for (const auto& t : h.terms) {
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (const auto& m : g)
        if (!t.commutes_with(m)) {
          ok = false;
          break;
        }
      if (ok) {
        g.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t});
  }
  return groups;
}

// Renders e.g. "-1.0 * X1 X2"; the identity string renders as "I".
inline std::string render(const PauliString& s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", s.coefficient);
  std::string c(buf);
  if (c.find('.') == std::string::npos && c.find('e') == std::string::npos &&
      c.find("inf") == std::string::npos && c.find("nan") == std::string::npos)
    c += ".0";
  std::string body;
  for (size_t k = 0; k < s.letters.size(); ++k) {
    if (s.letters[k] == Pauli::I) continue;
    if (!body.empty()) body += ' ';
    body += static_cast<char>(s.letters[k]);
    body += std::to_string(k + 1);
  }
  if (body.empty()) body = "I";
  return c + " * " + body;
}

struct TermSignEntry {
  std::string term;  // rendered with unit coefficient
  double jw_coefficient = 0.0;
  double reference_coefficient = 0.0;
  double sign_ratio = 0.0;  // 0 when the term is missing on one side
};

// Per-term sign gauge between the JW image and a reference (hand-entered)
// Hamiltonian: matches terms by letter array and reports coefficient ratios.
inline std::vector<TermSignEntry> sign_gauge_report(const SpinHamiltonian& jw_image,
                                                    const SpinHamiltonian& reference) {
  std::map<std::vector<Pauli>, std::pair<double, double>> table;
  for (const auto& t : canonicalized(jw_image).terms) table[t.letters].first = t.coefficient;
  for (const auto& t : canonicalized(reference).terms) table[t.letters].second = t.coefficient;
  std::vector<TermSignEntry> out;
  for (const auto& [letters, cc] : table) {
    TermSignEntry e;
    e.term = render(PauliString{1.0, letters});
    e.jw_coefficient = cc.first;
    e.reference_coefficient = cc.second;
    e.sign_ratio = (cc.first != 0.0 && cc.second != 0.0) ? cc.first / cc.second : 0.0;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace majsim
