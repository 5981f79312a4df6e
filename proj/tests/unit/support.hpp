// Copyright 2026 The ftwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "ftwalk/matrix.hpp"
#include "ftwalk/ring.hpp"

namespace ftwalk::testing {

inline std::string fixture(const std::string& name) {
  return std::string(FTWALK_FIXTURES) + "/" + name;
}

// Haar-ish random unitary from the QR factorization of a complex Gaussian.
inline Eigen::MatrixXcd random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    q.col(j) *= r / std::abs(r);
  }
  return q;
}

inline Eigen::MatrixXd random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

// Total order on exact matrices for use as a map key.
using RingKey = std::array<std::int64_t, 20>;
inline RingKey ring_key(const Ring2x2& m) {
  RingKey k{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) k[5 * i + j] = m.e[i].coeffs()[j];
    k[5 * i + 4] = m.e[i].k();
  }
  return k;
}

}  // namespace ftwalk::testing
