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

#include "ftwalk/ring.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "ftwalk/error.hpp"

namespace ftwalk {

namespace {

using Coeffs = RingScalar::Coeffs;
__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw RingOverflowError("ring coefficient overflow");
  }
  return static_cast<std::int64_t>(v);
}

bool even(std::int64_t v) { return (v & 1) == 0; }

// Numerator scaled up to denominator sqrt2^target.
Coeffs lift(Coeffs x, int from, int target) {
  int d = target - from;
  for (; d >= 2; d -= 2) {
    for (auto& v : x) v = narrow(static_cast<i128>(v) * 2);
  }
  if (d == 1) x = ring_detail::times_sqrt2(x);
  return x;
}

}  // namespace

namespace ring_detail {

Coeffs times_omega(const Coeffs& x) {
  return {narrow(-static_cast<i128>(x[3])), x[0], x[1], x[2]};
}

Coeffs times_sqrt2(const Coeffs& x) {
  const i128 a0 = x[0], a1 = x[1], a2 = x[2], a3 = x[3];
  return {narrow(a1 - a3), narrow(a0 + a2), narrow(a1 + a3), narrow(a2 - a0)};
}

bool divisible_by_sqrt2(const Coeffs& x) {
  return even(x[0] - x[2]) && even(x[1] - x[3]);
}

Coeffs div_sqrt2(const Coeffs& x) {
  // x / sqrt2 = x * sqrt2 / 2
  const i128 a0 = x[0], a1 = x[1], a2 = x[2], a3 = x[3];
  return {narrow((a1 - a3) / 2), narrow((a0 + a2) / 2), narrow((a1 + a3) / 2),
          narrow((a2 - a0) / 2)};
}

std::complex<double> to_complex(const Coeffs& x, int k) {
  const double a0 = static_cast<double>(x[0]);
  const double a1 = static_cast<double>(x[1]);
  const double a2 = static_cast<double>(x[2]);
  const double a3 = static_cast<double>(x[3]);
  const double re = a0 + (a1 - a3) * M_SQRT1_2;
  const double im = a2 + (a1 + a3) * M_SQRT1_2;
  const double scale =
      (k % 2 == 0) ? std::ldexp(1.0, -k / 2) : std::ldexp(M_SQRT1_2, -(k - 1) / 2);
  return {re * scale, im * scale};
}

}  // namespace ring_detail

RingScalar::RingScalar(Coeffs numerator, int k) : c_(numerator), k_(k) {
  if (k < 0) throw ValidationError("RingScalar: negative sqrt2 exponent");
  canonicalize();
}

void RingScalar::canonicalize() {
  if (is_zero()) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && ring_detail::divisible_by_sqrt2(c_)) {
    c_ = ring_detail::div_sqrt2(c_);
    --k_;
  }
}

RingScalar RingScalar::omega_power(int j) {
  const int r = ((j % 8) + 8) % 8;
  Coeffs c{};
  c[static_cast<std::size_t>(r % 4)] = r < 4 ? 1 : -1;
  return RingScalar(c, 0);
}

std::complex<double> RingScalar::to_complex() const { return ring_detail::to_complex(c_, k_); }

RingScalar RingScalar::conj() const {
  // conj(w) = -w^3, conj(w^2) = -w^2, conj(w^3) = -w
  return RingScalar({c_[0], -c_[3], -c_[2], -c_[1]}, k_);
}

RingScalar operator+(const RingScalar& x, const RingScalar& y) {
  const int k = std::max(x.k_, y.k_);
  const Coeffs a = lift(x.c_, x.k_, k);
  const Coeffs b = lift(y.c_, y.k_, k);
  Coeffs s;
  for (std::size_t i = 0; i < 4; ++i) s[i] = narrow(static_cast<i128>(a[i]) + b[i]);
  return RingScalar(s, k);
}

RingScalar operator-(const RingScalar& x) {
  Coeffs n;
  for (std::size_t i = 0; i < 4; ++i) n[i] = narrow(-static_cast<i128>(x.c_[i]));
  RingScalar r;
  r.c_ = n;
  r.k_ = x.k_;
  return r;
}

RingScalar operator-(const RingScalar& x, const RingScalar& y) { return x + (-y); }

RingScalar operator*(const RingScalar& x, const RingScalar& y) {
  const i128 a0 = x.c_[0], a1 = x.c_[1], a2 = x.c_[2], a3 = x.c_[3];
  const i128 b0 = y.c_[0], b1 = y.c_[1], b2 = y.c_[2], b3 = y.c_[3];
  // w^4 = -1
  const Coeffs p{narrow(a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1),
                 narrow(a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2),
                 narrow(a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3),
                 narrow(a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0)};
  return RingScalar(p, x.k_ + y.k_);
}

std::string RingScalar::to_string() const {
  std::ostringstream os;
  os << '(' << c_[0] << ", " << c_[1] << ", " << c_[2] << ", " << c_[3] << ")/sqrt2^" << k_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RingScalar& x) { return os << x.to_string(); }

Ring2x2 Ring2x2::identity() {
  Ring2x2 m;
  m(0, 0) = RingScalar::one();
  m(1, 1) = RingScalar::one();
  return m;
}

Eigen::Matrix2cd Ring2x2::to_matrix() const {
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = (*this)(r, c).to_complex();
  return m;
}

Ring2x2 Ring2x2::transpose() const {
  Ring2x2 t = *this;
  std::swap(t(0, 1), t(1, 0));
  return t;
}

Ring2x2 ring_mul(const Ring2x2& x, const Ring2x2& y) {
  Ring2x2 z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) z(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
  return z;
}

}  // namespace ftwalk
