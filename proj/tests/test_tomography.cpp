#include "test_helpers.hpp"

using namespace majsim;
using testutil::diff;

TEST_CASE("the standard plan has 16 inputs and 16 settings", "[tomo]") {
  TomographyPlan plan = standard_tomography_plan();
  CHECK(plan.input_states.size() == 16);
  CHECK(plan.measurement_settings.size() == 16);
  // informationally complete: 256 expectation values determine the process
  CHECK(plan.input_states.size() * plan.measurement_settings.size() == 256);
}

TEST_CASE("tomography of the trivial schedule returns the identity", "[tomo]") {
  TomographyResult res = simulate_tomography(identity_recipe().schedule, standard_tomography_plan());
  CHECK(diff(res.gate.matrix4, Mat4::Identity()) < 1e-8);
  CHECK(res.expectations.rows() == 16);
  CHECK(res.expectations.cols() == 16);
}

TEST_CASE("tomography reproduces the extracted exchange gate", "[tomo]") {
  GateRecipe r = braid_AC();
  LogicalGate direct = extract_gate(r.schedule);
  TomographyResult res = simulate_tomography(r.schedule, standard_tomography_plan());
  CHECK(diff(res.gate.matrix4, direct.matrix4) < 1e-8);
  CHECK(diff(res.gate.matrix4, testutil::eq7_matrix()) < 1e-8);
}

TEST_CASE("tomography agrees with direct column assembly on a corrupted run", "[tomo]") {
  // a site-3 phase error after the first exchange step hits a single zero
  // mode; every input survives with probability 1/2 and the following
  // projection heals the state, so the map stays proportional to a unitary
  GateRecipe r = braid_CD();
  NoiseSpec err{NoiseKind::phase, {3}, 2};
  CorruptedGate direct = corrupted_gate(r, err);

  Schedule s = r.schedule;
  s.noise_insertions.push_back({err.position, err});
  TomographyResult res = simulate_tomography(s, standard_tomography_plan());
  CHECK(diff(res.gate.matrix4, direct.gate.matrix4) < 1e-8);
}

TEST_CASE("an incomplete plan is rejected", "[tomo]") {
  TomographyPlan degenerate = standard_tomography_plan();
  for (auto& in : degenerate.input_states) in = degenerate.input_states[0];
  CHECK_THROWS_AS(simulate_tomography(identity_recipe().schedule, degenerate),
                  std::invalid_argument);
}

TEST_CASE("shot sampling is seeded and converges", "[tomo]") {
  GateRecipe r = braid_AC();
  TomographyOptions opt{200000, 7};
  TomographyResult a = simulate_tomography(r.schedule, standard_tomography_plan(), opt);
  TomographyResult b = simulate_tomography(r.schedule, standard_tomography_plan(), opt);
  CHECK(diff(a.gate.matrix4, b.gate.matrix4) == 0.0);

  LogicalGate direct = extract_gate(r.schedule);
  CHECK(process_fidelity(direct.matrix4, a.gate.matrix4) > 0.99);
}

TEST_CASE("process fidelity is phase-invariant and symmetric", "[tomo]") {
  Mat2 h = testutil::hadamard2();
  Mat2 r;
  r << 1, 0, 0, cplx(0, -1);
  CHECK(process_fidelity(h, Mat2(std::polar(1.0, 2.1) * h)) == Catch::Approx(1.0));
  CHECK(process_fidelity(h, r) == Catch::Approx(process_fidelity(r, h)));
}

TEST_CASE("final states of the three gates match the closed forms", "[tomo]") {
  const double c8 = std::cos(std::numbers::pi / 8), s8 = std::sin(std::numbers::pi / 8);
  const double r = 1.0 / std::sqrt(2.0);
  auto L = [](cplx a00, cplx a11) {
    Vec4 v = Vec4::Zero();
    v(0) = a00;
    v(3) = a11;
    v /= v.norm();
    return v;
  };
  std::array<Vec4, 4> inputs{L(1, 0), L(0, 1), L(1, cplx(0, -1)), L(1, 1)};

  struct Row {
    GateRecipe recipe;
    std::array<Vec4, 4> finals;
  };
  std::vector<Row> table;
  table.push_back({braid_AC(),
                   {L(r, r), L(r, -r), L(r, cplx(0, -r)), L(0, 1)}});
  table.push_back({braid_CD(),
                   {L(1, 0), L(0, 1), L(r, -r), L(r, cplx(0, -r))}});
  table.push_back({dynamic_phase(std::numbers::pi / 8),
                   {L(c8, cplx(0, -s8)), L(s8, cplx(0, c8)),
                    L(c8 - s8, cplx(0, -(c8 + s8))), L(cplx(c8, -s8), cplx(c8, -s8))}});

  for (const auto& row : table)
    for (int k = 0; k < 4; ++k) {
      StateVector in = encode_logical({inputs[k], 0.0});
      StateVector out = run_schedule(in, row.recipe.schedule);
      StateVector target = encode_logical({row.finals[k], 0.0});
      CHECK(state_fidelity(out, target) >= 1.0 - 1e-8);
    }
}
