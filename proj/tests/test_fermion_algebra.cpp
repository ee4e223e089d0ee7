#include "test_helpers.hpp"

using namespace majsim;
using testutil::diff;
using testutil::fock_state;

namespace {

std::vector<MajoranaIndex> all_modes(int sites) {
  std::vector<MajoranaIndex> v;
  for (int s = 1; s <= sites; ++s)
    for (Species sp : {Species::a, Species::b}) v.push_back({s, sp});
  return v;
}

DenseOperator creation_operator(int site, int sites) {
  Mat c = 0.5 * (majorana_matrix({site, Species::a}, sites).matrix -
                 cplx(0, 1) * majorana_matrix({site, Species::b}, sites).matrix);
  return {sites, std::move(c)};
}

}  // namespace

TEST_CASE("single-site Majorana operator", "[fermion]") {
  Mat g = majorana_matrix({1, Species::a}, 1).matrix;
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  CHECK(diff(g, x) < 1e-15);
}

TEST_CASE("Majorana operators are Hermitian involutions", "[fermion]") {
  for (const auto& m : all_modes(6)) {
    Mat g = majorana_matrix(m, 6).matrix;
    CHECK(diff(g, g.adjoint()) < 1e-12);
    CHECK(diff(g * g, Mat::Identity(64, 64)) < 1e-12);
  }
}

TEST_CASE("anticommutation relations hold exhaustively", "[fermion]") {
  auto modes = all_modes(6);
  for (size_t i = 0; i < modes.size(); ++i) {
    Mat gi = majorana_matrix(modes[i], 6).matrix;
    for (size_t j = i; j < modes.size(); ++j) {
      Mat gj = majorana_matrix(modes[j], 6).matrix;
      Mat anti = gi * gj + gj * gi;
      Mat expected = (i == j) ? Mat(2.0 * Mat::Identity(64, 64)) : Mat(Mat::Zero(64, 64));
      CHECK(diff(anti, expected) < 1e-12);
    }
  }
}

TEST_CASE("chain Hamiltonian spectral data", "[fermion]") {
  DenseOperator H = build_hamiltonian(pairings::chain(), 6);
  REQUIRE(is_hermitian(H.matrix));

  GroundSpace g = ground_space(H);
  CHECK(g.energy == Catch::Approx(-4.0).margin(1e-12));
  CHECK(g.degeneracy == 4);

  // restricted to even fermion parity the degeneracy halves
  DenseOperator even{5, parity_sector(H, +1)};
  GroundSpace ge = ground_space(even);
  CHECK(ge.energy == Catch::Approx(-4.0).margin(1e-12));
  CHECK(ge.degeneracy == 2);
}

TEST_CASE("ground space of a single-site sigma z", "[fermion]") {
  DenseOperator H{1, pauli_matrix('Z')};
  GroundSpace g = ground_space(H);
  CHECK(g.degeneracy == 1);
  CHECK(g.energy == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("empty and single-pair Hamiltonians", "[fermion]") {
  CHECK(testutil::max_abs(build_hamiltonian({}, 6).matrix) == 0.0);

  // H_e = -i g3a g3b squares to the identity
  MajoranaHamiltonian he{{{-1.0, {3, Species::a}, {3, Species::b}}}};
  Mat m = build_hamiltonian(he, 6).matrix;
  CHECK(diff(m * m, Mat::Identity(64, 64)) < 1e-12);
}

TEST_CASE("zero modes of the braid configurations", "[fermion]") {
  auto zm = zero_modes(pairings::chain());
  REQUIRE(zm.size() == 4);
  CHECK(zm[0] == MajoranaIndex{1, Species::a});
  CHECK(zm[1] == MajoranaIndex{2, Species::b});
  CHECK(zm[2] == MajoranaIndex{4, Species::a});
  CHECK(zm[3] == MajoranaIndex{6, Species::b});

  auto zm1 = zero_modes(pairings::hadamard_steps()[0]);
  REQUIRE(zm1.size() == 4);
  CHECK(zm1[0] == MajoranaIndex{2, Species::b});
  CHECK(zm1[1] == MajoranaIndex{3, Species::b});
  CHECK(zm1[2] == MajoranaIndex{5, Species::a});
  CHECK(zm1[3] == MajoranaIndex{6, Species::b});

  // pairing every mode leaves none
  MajoranaHamiltonian full = pairings::chain();
  full.terms.push_back({1.0, {1, Species::a}, {2, Species::b}});
  full.terms.push_back({1.0, {4, Species::a}, {6, Species::b}});
  CHECK(zero_modes(full).empty());
}

TEST_CASE("parity operator", "[fermion]") {
  DenseOperator P = parity_operator(6);
  StateVector vac = StateVector::vacuum(6);
  CHECK(std::real(vac.amplitudes.dot(P.matrix * vac.amplitudes)) == Catch::Approx(1.0));

  Mat c1 = creation_operator(1, 6).matrix, c2 = creation_operator(2, 6).matrix;
  Vec two = c2 * (c1 * vac.amplitudes);
  StateVector psi2(6, two);
  CHECK(std::real(psi2.amplitudes.dot(P.matrix * psi2.amplitudes)) == Catch::Approx(1.0));

  StateVector psi1(6, c1 * vac.amplitudes);
  CHECK(std::real(psi1.amplitudes.dot(P.matrix * psi1.amplitudes)) == Catch::Approx(-1.0));
}

TEST_CASE("every pairing Hamiltonian commutes with parity", "[fermion]") {
  Mat P = parity_operator(6).matrix;
  std::vector<MajoranaHamiltonian> all{pairings::chain()};
  for (const auto& h : pairings::hadamard_steps()) all.push_back(h);
  for (const auto& h : pairings::phase_steps()) all.push_back(h);
  for (const auto& h : pairings::colocation_steps(-1.0)) all.push_back(h);
  for (const auto& h : all) {
    Mat H = build_hamiltonian(h, 6).matrix;
    CHECK(testutil::max_abs(H * P - P * H) < 1e-12);
  }
}

TEST_CASE("ground energies agree across the exchange steps", "[fermion]") {
  double e0 = ground_space(build_hamiltonian(pairings::chain(), 6)).energy;
  for (const auto& h : pairings::hadamard_steps()) {
    double e = ground_space(build_hamiltonian(h, 6)).energy;
    CHECK(std::abs(e - e0) < 1e-10);
  }
}

TEST_CASE("fermion algebra error paths", "[fermion]") {
  CHECK_THROWS_AS(majorana_matrix({7, Species::a}, 6), std::out_of_range);
  CHECK_THROWS_AS(majorana_matrix({0, Species::a}, 6), std::out_of_range);

  MajoranaHamiltonian same{{{1.0, {1, Species::a}, {1, Species::a}}}};
  CHECK_THROWS_AS(build_hamiltonian(same, 6), std::invalid_argument);

  MajoranaHamiltonian dup{{{1.0, {1, Species::a}, {2, Species::a}},
                           {0.5, {2, Species::a}, {1, Species::a}}}};
  CHECK_THROWS_AS(build_hamiltonian(dup, 6), std::invalid_argument);

  Mat nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(ground_space(DenseOperator{1, nh}), std::invalid_argument);
}
