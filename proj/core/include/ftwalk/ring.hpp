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
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace ftwalk {

/// Exact element of Z[w, 1/sqrt2] with w = exp(i pi/4):
///
///   (a0 + a1 w + a2 w^2 + a3 w^3) / sqrt2^k,   k >= 0.
///
/// Canonical form: k is lowered while k > 0 and the numerator is divisible by
/// sqrt2 in Z[w] (a0 = a2 and a1 = a3 mod 2). Zero is stored with k = 0. Every
/// operation returns canonical values, so equality is coefficient-wise.
class RingScalar {
 public:
  using Coeffs = std::array<std::int64_t, 4>;

  RingScalar() = default;
  RingScalar(Coeffs numerator, int k);
  explicit RingScalar(std::int64_t integer) : RingScalar({integer, 0, 0, 0}, 0) {}

  static RingScalar zero() { return {}; }
  static RingScalar one() { return RingScalar(1); }
  /// w^j for any integer j.
  static RingScalar omega_power(int j);
  static RingScalar inv_sqrt2() { return RingScalar({1, 0, 0, 0}, 1); }

  const Coeffs& coeffs() const { return c_; }
  int k() const { return k_; }
  bool is_zero() const { return c_ == Coeffs{}; }

  std::complex<double> to_complex() const;
  RingScalar conj() const;

  friend RingScalar operator+(const RingScalar& x, const RingScalar& y);
  friend RingScalar operator-(const RingScalar& x, const RingScalar& y);
  friend RingScalar operator*(const RingScalar& x, const RingScalar& y);
  friend RingScalar operator-(const RingScalar& x);
  friend bool operator==(const RingScalar&, const RingScalar&) = default;

  std::string to_string() const;

 private:
  void canonicalize();

  Coeffs c_{};
  int k_ = 0;
};

/// Numerator helpers shared with the packed search representation.
namespace ring_detail {
/// x * w
RingScalar::Coeffs times_omega(const RingScalar::Coeffs& x);
/// x * sqrt2 (= x * (w - w^3))
RingScalar::Coeffs times_sqrt2(const RingScalar::Coeffs& x);
/// true iff x is divisible by sqrt2 in Z[w]
bool divisible_by_sqrt2(const RingScalar::Coeffs& x);
/// x / sqrt2, requires divisible_by_sqrt2(x)
RingScalar::Coeffs div_sqrt2(const RingScalar::Coeffs& x);
/// Float value of x / sqrt2^k.
std::complex<double> to_complex(const RingScalar::Coeffs& x, int k);
}  // namespace ring_detail

/// Exact 2x2 matrix over the ring, row-major.
struct Ring2x2 {
  std::array<RingScalar, 4> e{};

  static Ring2x2 identity();
  const RingScalar& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }
  RingScalar& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }

  Eigen::Matrix2cd to_matrix() const;
  Ring2x2 transpose() const;

  friend bool operator==(const Ring2x2&, const Ring2x2&) = default;
};

/// Exact product; throws RingOverflowError if a coefficient leaves int64.
Ring2x2 ring_mul(const Ring2x2& x, const Ring2x2& y);
inline Ring2x2 operator*(const Ring2x2& x, const Ring2x2& y) { return ring_mul(x, y); }

std::ostream& operator<<(std::ostream& os, const RingScalar& x);

}  // namespace ftwalk
