#include "test_helpers.hpp"

using namespace majsim;
using testutil::diff;
using testutil::fock_state;

TEST_CASE("error operators have the advertised algebra", "[noise]") {
  Mat p = noise_operator({NoiseKind::phase, {3}, -1}, 6).matrix;
  CHECK(is_hermitian(p));
  CHECK(diff(p * p, p) < 1e-12);  // projector

  Mat f = noise_operator({NoiseKind::flip, {4, 5}, -1}, 6).matrix;
  CHECK(is_hermitian(f));
  Mat f2 = f * f;
  CHECK(diff(f2 * f2, f2) < 1e-12);  // squares to a projector
  // the projector is onto the antialigned subspace of the pair
  Mat zz = spin_matrix(SpinHamiltonian{{make_string(1.0, 6, {{4, Pauli::Z}, {5, Pauli::Z}})}}).matrix;
  CHECK(diff(f2, Mat(0.5 * (Mat::Identity(64, 64) - zz))) < 1e-12);
}

TEST_CASE("phase error on polarized states", "[noise]") {
  StateVector up = fock_state(6, {2});  // site 2 occupied: Z_2 = +1
  NoisyState kept = apply_phase_error(up, 2);
  CHECK((kept.state.amplitudes - up.amplitudes).norm() < 1e-14);
  CHECK(kept.survival == Catch::Approx(1.0));

  StateVector down = fock_state(6, {});  // site 2 empty: annihilated
  CHECK_THROWS_AS(apply_phase_error(down, 2), annihilated_error);
}

TEST_CASE("phase error on site 3 annihilates the idle code", "[noise]") {
  StateVector e00 = logical_basis_states()[0];
  // brute-force check first: the code keeps site 3 empty
  Mat p = noise_operator({NoiseKind::phase, {3}, -1}, 6).matrix;
  CHECK((p * e00.amplitudes).norm() < 1e-14);
  CHECK_THROWS_AS(apply_phase_error(e00, 3), annihilated_error);
}

TEST_CASE("flip error swaps antialigned pairs and kills aligned ones", "[noise]") {
  StateVector anti = fock_state(6, {4});  // |z zbar| on (4,5)
  NoisyState swapped = apply_flip_error(anti, {4, 5});
  CHECK(swapped.survival == Catch::Approx(1.0));
  CHECK((swapped.state.amplitudes - fock_state(6, {5}).amplitudes).norm() < 1e-14);

  StateVector aligned = fock_state(6, {4, 5});
  CHECK_THROWS_AS(apply_flip_error(aligned, {4, 5}), annihilated_error);
}

TEST_CASE("flip error survival on the encoded zero state", "[noise]") {
  StateVector e00 = logical_basis_states()[0];
  NoisyState out = apply_flip_error(e00, {4, 5});
  CHECK(out.survival == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("noise validation", "[noise]") {
  StateVector psi = logical_basis_states()[0];
  CHECK_THROWS_AS(apply_flip_error(psi, {1, 4}), std::invalid_argument);
  CHECK_THROWS_AS(apply_phase_error(psi, 7), std::invalid_argument);
  CHECK_THROWS_AS(apply_noise(psi, NoiseSpec{NoiseKind::phase, {1, 2}, -1}),
                  std::invalid_argument);
}

TEST_CASE("error pattern during the pi/8 gate", "[noise]") {
  GateRecipe t = t_gate();

  // single-mode disturbances heal: site 4 phase, (4,5) flip
  CorruptedGate phase4 = corrupted_gate(t, {NoiseKind::phase, {4}, -1});
  CHECK(phase4.process_fidelity_vs_ideal >= 0.999);
  CHECK(phase4.process_fidelity_vs_ideal == Catch::Approx(1.0).margin(1e-9));
  CHECK_FALSE(phase4.corrupted);
  for (double s : phase4.survival) CHECK(s == Catch::Approx(0.5).margin(1e-9));

  CorruptedGate flip45 = corrupted_gate(t, {NoiseKind::flip, {4, 5}, -1});
  CHECK(flip45.process_fidelity_vs_ideal >= 0.999);
  CHECK(flip45.process_fidelity_vs_ideal == Catch::Approx(1.0).margin(1e-9));
  CHECK_FALSE(flip45.corrupted);

  // both colocated modes disturbed: corrupted, two basis columns die
  CorruptedGate phase3 = corrupted_gate(t, {NoiseKind::phase, {3}, -1});
  CHECK(phase3.process_fidelity_vs_ideal < 0.99);
  CHECK(phase3.process_fidelity_vs_ideal == Catch::Approx(0.25).margin(1e-9));
  CHECK(phase3.corrupted);
  CHECK_FALSE(phase3.gate.code_preserving);
  CHECK(phase3.survival[0] == Catch::Approx(0.0).margin(1e-9));
  CHECK(phase3.survival[1] == Catch::Approx(0.0).margin(1e-9));
  CHECK(phase3.survival[2] == Catch::Approx(1.0).margin(1e-9));
  CHECK(phase3.survival[3] == Catch::Approx(1.0).margin(1e-9));

  CorruptedGate flip34 = corrupted_gate(t, {NoiseKind::flip, {3, 4}, -1});
  CHECK(flip34.process_fidelity_vs_ideal < 0.99);
  CHECK(flip34.process_fidelity_vs_ideal == Catch::Approx(0.0).margin(1e-9));
  CHECK(flip34.corrupted);
}

TEST_CASE("noise disjoint from all occupied and colocated sites is harmless", "[noise]") {
  // at the station the zero modes sit on sites 3, 4, 6 and the colocated
  // on-site pairs occupy 1 and 2; site 5 is free
  GateRecipe t = t_gate();
  CorruptedGate phase5 = corrupted_gate(t, {NoiseKind::phase, {5}, -1});
  CHECK(phase5.process_fidelity_vs_ideal >= 1.0 - 1e-3);
  CorruptedGate flip56 = corrupted_gate(t, {NoiseKind::flip, {5, 6}, -1});
  CHECK(flip56.process_fidelity_vs_ideal >= 1.0 - 1e-3);
}

TEST_CASE("mid-braid single-mode errors are healed by the following projection", "[noise]") {
  GateRecipe r = braid_CD();
  CorruptedGate c = corrupted_gate(r, {NoiseKind::phase, {3}, 2});
  CHECK(c.process_fidelity_vs_ideal == Catch::Approx(1.0).margin(1e-9));
  for (double s : c.survival) CHECK(s == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("survival probabilities stay in the unit interval", "[noise]") {
  GateRecipe t = t_gate();
  for (const NoiseSpec& n :
       {NoiseSpec{NoiseKind::phase, {4}, -1}, NoiseSpec{NoiseKind::flip, {3, 4}, -1},
        NoiseSpec{NoiseKind::phase, {3}, -1}}) {
    CorruptedGate c = corrupted_gate(t, n);
    for (double s : c.survival) {
      CHECK(s >= 0.0);
      CHECK(s <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("corrupted_gate argument checks", "[noise]") {
  GateRecipe t = t_gate();
  CHECK_THROWS_AS(corrupted_gate(t, {NoiseKind::flip, {1, 4}, -1}), std::invalid_argument);
  CHECK_THROWS_AS(corrupted_gate(t, {NoiseKind::phase, {4}, 1000}), std::invalid_argument);
  // the station keeps site 2 empty, so a site-2 phase error annihilates
  // every basis column
  CHECK_THROWS_AS(corrupted_gate(t, {NoiseKind::phase, {2}, -1}), annihilated_error);
}
