#pragma once

#include "majsim/braiding_protocols.hpp"

#include <random>

namespace majsim {

// Two-label analogue of single-qubit Pauli tomography over the code space:
// 16 product input states {|0>,|1>,|+>,|+i>}^x2 and the 16 two-label Pauli
// observables, 256 expectation values in total.
struct TomographyPlan {
  std::vector<Vec4> input_states;       // 16, informationally complete
  std::vector<Mat4> measurement_settings;  // 16, spanning the operator space
};

inline TomographyPlan standard_tomography_plan() {
  TomographyPlan plan;
  const double r = 1.0 / std::sqrt(2.0);
  std::array<Eigen::Vector2cd, 4> s1;
  s1[0] << 1, 0;
  s1[1] << 0, 1;
  s1[2] << r, r;
  s1[3] << r, cplx(0, r);
  for (const auto& u : s1)
    for (const auto& v : s1) {
      Vec4 in;
      in << u(0) * v(0), u(0) * v(1), u(1) * v(0), u(1) * v(1);
      plan.input_states.push_back(in);
    }
  for (char a : {'I', 'X', 'Y', 'Z'})
    for (char b : {'I', 'X', 'Y', 'Z'}) {
      // standard single-qubit Paulis on the logical labels (|0> first)
      auto p = [](char l) {
        Mat2 m;
        if (l == 'I') m = Mat2::Identity();
        if (l == 'X') m << 0, 1, 1, 0;
        if (l == 'Y') m << 0, cplx(0, -1), cplx(0, 1), 0;
        if (l == 'Z') m << 1, 0, 0, -1;
        return m;
      };
      Mat4 setting = Mat4::Zero();
      Mat2 pa = p(a), pb = p(b);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          setting.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pb;
      plan.measurement_settings.push_back(setting);
    }
  return plan;
}

struct TomographyOptions {
  long shots = 0;  // 0 = exact expectation values
  std::uint64_t seed = 0;
};

struct TomographyResult {
  LogicalGate gate;
  Eigen::MatrixXd expectations;  // settings x inputs, the raw 256 values
};

namespace detail {

inline double sampled_expectation(double exact, long shots, std::uint64_t seed) {
  if (shots <= 0) return exact;
  std::mt19937_64 rng(seed);
  double p = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
  std::binomial_distribution<long> dist(shots, p);
  long up = dist(rng);
  return 2.0 * static_cast<double>(up) / static_cast<double>(shots) - 1.0;
}

}  // namespace detail

// Runs the schedule on each (encoded) input, measures every setting on the
// normalized logical output, reconstructs the Pauli transfer matrix by linear
// inversion, reshuffles to the Choi matrix and extracts the closest unitary
// from the dominant eigenvector by polar decomposition.
inline TomographyResult simulate_tomography(const Schedule& s, const TomographyPlan& plan,
                                            const TomographyOptions& opt = {}) {
  const int m_count = static_cast<int>(plan.measurement_settings.size());
  const int in_count = static_cast<int>(plan.input_states.size());
  TomographyResult res;
  res.expectations.resize(m_count, in_count);
  Eigen::MatrixXd in_components(m_count, in_count);

  double leakage = 0.0;
  for (int k = 0; k < in_count; ++k) {
    Vec4 in = plan.input_states[k].normalized();
    StateVector phys = encode_logical({in, 0.0});
    StateVector fin = run_schedule(phys, s);
    LogicalState out = decode_logical(fin);
    leakage = std::max(leakage, out.residual * out.residual);
    Vec4 amps = out.amplitudes;
    double n = amps.norm();
    if (n < 1e-12) throw annihilated_error("tomography input left the code space entirely");
    amps /= n;
    for (int m = 0; m < m_count; ++m) {
      double exact = (amps.adjoint() * plan.measurement_settings[m] * amps)(0, 0).real();
      std::uint64_t stream = opt.seed * 0x9e3779b97f4a7c15ULL + 16ULL * m + k;
      res.expectations(m, k) = detail::sampled_expectation(exact, opt.shots, stream);
      in_components(m, k) = (in.adjoint() * plan.measurement_settings[m] * in)(0, 0).real();
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(in_components);
  if (!lu.isInvertible())
    throw std::invalid_argument("tomography plan is not informationally complete");
  Eigen::MatrixXd ptm = res.expectations * lu.inverse();

  // superoperator S = (1/d) sum_mn ptm(m,n) vec(P_m) vec(P_n)^dag, column-major vec
  const int d = 4;
  Mat S = Mat::Zero(d * d, d * d);
  for (int m = 0; m < m_count; ++m) {
    Vec vm = plan.measurement_settings[m].reshaped();
    for (int n = 0; n < m_count; ++n) {
      Vec vn = plan.measurement_settings[n].reshaped();
      S += (ptm(m, n) / d) * (vm * vn.adjoint());
    }
  }
  // Choi reshuffle: J[i + d j, k + d l] = S[i + d k, j + d l]
  Mat J = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) J(i + d * j, k + d * l) = S(i + d * k, j + d * l);

  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (J + J.adjoint()));
  Vec w = es.eigenvectors().col(d * d - 1);
  Mat4 raw;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) raw(i, j) = w(i + d * j);
  Eigen::JacobiSVD<Mat4> svd(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat4 unitary = svd.matrixU() * svd.matrixV().adjoint();

  res.gate.matrix4 = unitary;
  res.gate.stripped_phase = fix_global_phase(res.gate.matrix4);
  res.gate.leakage = leakage;
  res.gate.code_preserving = leakage <= leakage_threshold;
  res.gate.even_block << res.gate.matrix4(0, 0), res.gate.matrix4(0, 3), res.gate.matrix4(3, 0),
      res.gate.matrix4(3, 3);
  fix_global_phase(res.gate.even_block);
  return res;
}

}  // namespace majsim
