#pragma once

#include "majsim/braiding_protocols.hpp"

namespace majsim {

enum class OracleKind { constant, balanced };

// constant: U_f = identity (do nothing); balanced: U_f = Z, two successive
// C-D exchanges.

struct DJStage {
  std::string label;
  LogicalState state;
};

struct DJResult {
  std::vector<DJStage> trajectory;
  OracleKind verdict = OracleKind::constant;
  bool ambiguous = false;
  double overlap_00 = 0.0;
  double overlap_11 = 0.0;
};

struct DJOptions {
  double ite_time = 20.0;
  // Optional occupation perturbation eps*(1+Z_site)/2 on all intermediate
  // braid segments, for robustness studies.
  int perturbation_site = 0;
  double perturbation_eps = 0.0;
};

inline constexpr double dj_verdict_threshold = 0.99;

// |00_g> -> H -> U_f -> H; the final state is |11_g> for the constant oracle
// and |00_g> for the balanced one. The run uses braiding segments only.
inline DJResult run_dj(OracleKind oracle, const DJOptions& opt = {}) {
  Schedule had = braid_AC(opt.ite_time).schedule;
  Schedule zz = z_gate(opt.ite_time).schedule;
  if (opt.perturbation_site > 0) {
    had = perturb_intermediate_segments(had, opt.perturbation_site, opt.perturbation_eps);
    zz = perturb_intermediate_segments(zz, opt.perturbation_site, opt.perturbation_eps);
  }

  DJResult res;
  StateVector psi = logical_basis_states()[0];
  psi = run_schedule(psi, had);
  res.trajectory.push_back({"after first exchange of A and C", decode_logical(psi)});
  if (oracle == OracleKind::balanced) {
    psi = run_schedule(psi, zz);
    res.trajectory.push_back({"after the oracle (two C-D exchanges)", decode_logical(psi)});
  } else {
    res.trajectory.push_back({"after the oracle (identity)", decode_logical(psi)});
  }
  psi = run_schedule(psi, had);
  LogicalState fin = decode_logical(psi);
  res.trajectory.push_back({"after second exchange of A and C", fin});

  res.overlap_00 = std::norm(fin.amplitudes(0));
  res.overlap_11 = std::norm(fin.amplitudes(3));
  if (res.overlap_11 >= dj_verdict_threshold)
    res.verdict = OracleKind::constant;
  else if (res.overlap_00 >= dj_verdict_threshold)
    res.verdict = OracleKind::balanced;
  else
    res.ambiguous = true;
  return res;
}

}  // namespace majsim
