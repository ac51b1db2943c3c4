#pragma once

#include "imexlmm/rational.hpp"

#include <Eigen/Dense>

#include <initializer_list>
#include <string>
#include <vector>

namespace testutil {

inline imexlmm::Rational R(const char* s) { return imexlmm::parse_rational(s); }

inline std::vector<imexlmm::Rational> Rs(std::initializer_list<const char*> xs) {
  std::vector<imexlmm::Rational> out;
  for (const char* x : xs) out.push_back(R(x));
  return out;
}

inline Eigen::MatrixXd upper(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = n - static_cast<Eigen::Index>(row.size());
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace testutil
