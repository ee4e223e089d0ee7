#pragma once

#include "majsim/dj_runner.hpp"
#include "majsim/tomography.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace majsim {

using json = nlohmann::ordered_json;

inline constexpr const char* artifact_name = "majsim";
inline constexpr const char* artifact_version = "0.1.0";

// complex numbers serialize as [re, im] in JSON and "re+imi" in CSV
inline json json_complex(cplx z) { return json::array({z.real(), z.imag()}); }

inline std::string csv_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

template <typename MatT>
inline json json_matrix(const MatT& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json json_real_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json json_logical_state(const LogicalState& l) {
  json amps = json::array();
  for (int k = 0; k < 4; ++k) amps.push_back(json_complex(l.amplitudes(k)));
  return json{{"amplitudes", std::move(amps)}, {"residual", l.residual}};
}

// density-matrix data of the even block, plot-ready
inline json json_density(const Mat2& u, const Vec4& input_even) {
  Eigen::Vector2cd in(input_even(0), input_even(3));
  Eigen::Vector2cd out = u * in;
  double n = out.norm();
  if (n > 0) out /= n;
  Mat2 rho = out * out.adjoint();
  return json{{"real", json::array({json::array({rho(0, 0).real(), rho(0, 1).real()}),
                                    json::array({rho(1, 0).real(), rho(1, 1).real()})})},
              {"imag", json::array({json::array({rho(0, 0).imag(), rho(0, 1).imag()}),
                                    json::array({rho(1, 0).imag(), rho(1, 1).imag()})})}};
}

inline json json_gate(const LogicalGate& g) {
  return json{{"matrix4", json_matrix(g.matrix4)},
              {"even_block", json_matrix(g.even_block)},
              {"stripped_phase", json_complex(g.stripped_phase)},
              {"leakage", g.leakage},
              {"code_preserving", g.code_preserving}};
}

}  // namespace majsim
