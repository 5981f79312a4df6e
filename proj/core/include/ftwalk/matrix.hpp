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

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace ftwalk {

using Complex = std::complex<double>;

/// Global tolerance for "this matrix is unitary": max |(M^dag M - I)_jk|.
inline constexpr double kUnitarityTolerance = 1e-10;

/// Dense square complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Throws ValidationError if `m` is not square or has NaN/Inf entries.
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim);
  static ComplexMatrix from_real(const Eigen::MatrixXd& re);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  const Eigen::MatrixXcd& eigen() const { return m_; }

  /// max |(M^dag M - I)_jk|
  double unitarity_residue() const;
  bool is_unitary(double tol = kUnitarityTolerance) const {
    return unitarity_residue() < tol;
  }
  /// True if every imaginary part has magnitude <= tol.
  bool is_real(double tol = 0.0) const;
  /// Max entrywise |A - B|; dimensions must agree.
  double max_deviation(const ComplexMatrix& other) const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  Eigen::MatrixXcd m_;
};

/// Phase-insensitive distance sqrt((w - |tr(W^dag Wl)|) / w), clamped to [0, 1].
/// Both arguments are expected to be unitary; the value is computed as
/// |W - e^{i theta} Wl|_F / sqrt(2w), which agrees with the trace form there.
double distance(const ComplexMatrix& w, const ComplexMatrix& wl);

struct ErrorStats {
  double max_abs_real = 0.0;  ///< max |Re(Wl) - W|
  double max_rel_real = 0.0;  ///< same, relative to |W|, over entries with W != 0
  double max_imag = 0.0;      ///< max |Im(Wl)|
};

/// Entrywise comparison of an approximation `wl` against a real reference `w`
/// (only the real part of `w` is used).
ErrorStats error_stats(const ComplexMatrix& w, const ComplexMatrix& wl);

// Matrix file: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
ComplexMatrix read_matrix_json(std::istream& in);
ComplexMatrix read_matrix_json_file(const std::string& path);
/// Emits 17 significant digits per entry; output is byte-stable.
void write_matrix_json(std::ostream& out, const ComplexMatrix& m);

/// printf-style "%.17g", shared by every writer that promises byte-stability.
std::string format_double(double x);

}  // namespace ftwalk

namespace ftwalk {

/// acc <- acc * E, where E is the identity with `m` embedded at 0-based
/// rows/cols (p, q).
void right_multiply_two_level(Eigen::MatrixXcd& acc, const Eigen::Matrix2cd& m,
                              std::size_t p, std::size_t q);

}  // namespace ftwalk
