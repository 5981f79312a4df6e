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

#include "ftwalk/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "ftwalk/error.hpp"

namespace ftwalk {

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw ValidationError("matrix is not square (" + std::to_string(m_.rows()) +
                          "x" + std::to_string(m_.cols()) + ")");
  }
  if (!m_.allFinite()) throw ValidationError("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n));
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ComplexMatrix(Eigen::MatrixXcd::Zero(n, n));
}

ComplexMatrix ComplexMatrix::from_real(const Eigen::MatrixXd& re) {
  return ComplexMatrix(re.cast<Complex>());
}

double ComplexMatrix::unitarity_residue() const {
  const auto n = m_.rows();
  return (m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

bool ComplexMatrix::is_real(double tol) const {
  return m_.size() == 0 || m_.imag().cwiseAbs().maxCoeff() <= tol;
}

double ComplexMatrix::max_deviation(const ComplexMatrix& other) const {
  if (dim() != other.dim()) throw ValidationError("dimension mismatch");
  if (m_.size() == 0) return 0.0;
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("dimension mismatch");
  return ComplexMatrix(a.m_ * b.m_);
}

namespace {

void check_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
  if (a.dim() == 0) throw ValidationError("empty matrices");
  // ComplexMatrix guarantees finiteness on construction; re-check since Eigen
  // arithmetic on huge values can still overflow.
  if (!a.eigen().allFinite() || !b.eigen().allFinite()) {
    throw ValidationError("non-finite matrix entries");
  }
}

}  // namespace

double distance(const ComplexMatrix& w, const ComplexMatrix& wl) {
  check_pair(w, wl);
  // For unitaries, n - |tr(W^dag Wl)| = |W - e^{i theta} Wl|_F^2 / 2 with
  // theta = -arg tr(W^dag Wl); this form has no sqrt(epsilon) floor at W = Wl.
  const double n = static_cast<double>(w.dim());
  const Complex tr = (w.eigen().adjoint() * wl.eigen()).trace();
  const Complex phase = std::abs(tr) > 0.0 ? std::conj(tr) / std::abs(tr) : Complex(1.0);
  const double gap = (w.eigen() - phase * wl.eigen()).squaredNorm() / 2.0;
  return std::sqrt(std::clamp(gap / n, 0.0, 1.0));
}

ErrorStats error_stats(const ComplexMatrix& w, const ComplexMatrix& wl) {
  check_pair(w, wl);
  ErrorStats s;
  const auto& a = w.eigen();
  const auto& b = wl.eigen();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double ref = a(i, j).real();
      const double err = std::abs(b(i, j).real() - ref);
      s.max_abs_real = std::max(s.max_abs_real, err);
      if (ref != 0.0) s.max_rel_real = std::max(s.max_rel_real, err / std::abs(ref));
      s.max_imag = std::max(s.max_imag, std::abs(b(i, j).imag()));
    }
  }
  return s;
}

ComplexMatrix read_matrix_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("matrix file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re")) {
    throw ValidationError("matrix file: expected object with \"dim\" and \"re\"");
  }
  const auto& dim_node = doc["dim"];
  if (!dim_node.is_number_integer() || dim_node.get<long long>() < 1) {
    throw ValidationError("matrix file: \"dim\" must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(dim_node.get<long long>());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  auto load = [&](const char* key, bool imag) {
    const auto& rows = doc[key];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
      throw ValidationError(std::string("matrix file: \"") + key + "\" must have dim rows");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw ValidationError(std::string("matrix file: row ") + std::to_string(i + 1) +
                              " of \"" + key + "\" must have dim entries");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto& v = row[static_cast<std::size_t>(j)];
        if (!v.is_number()) throw ValidationError("matrix file: non-numeric entry");
        if (imag) {
          m(i, j).imag(v.get<double>());
        } else {
          m(i, j).real(v.get<double>());
        }
      }
    }
  };
  load("re", false);
  if (doc.contains("im")) load("im", true);
  return ComplexMatrix(std::move(m));
}

ComplexMatrix read_matrix_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file: " + path);
  return read_matrix_json(in);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix_json(std::ostream& out, const ComplexMatrix& m) {
  const auto n = m.dim();
  auto block = [&](bool imag) {
    out << "[\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << "    [";
      for (std::size_t j = 0; j < n; ++j) {
        const Complex z = m(i, j);
        out << (j ? ", " : "") << format_double(imag ? z.imag() : z.real());
      }
      out << (i + 1 < n ? "],\n" : "]\n");
    }
    out << "  ]";
  };
  out << "{\n  \"dim\": " << n << ",\n  \"re\": ";
  block(false);
  out << ",\n  \"im\": ";
  block(true);
  out << "\n}\n";
}

}  // namespace ftwalk

namespace ftwalk {

void right_multiply_two_level(Eigen::MatrixXcd& acc, const Eigen::Matrix2cd& m,
                              std::size_t p, std::size_t q) {
  const auto ip = static_cast<Eigen::Index>(p);
  const auto iq = static_cast<Eigen::Index>(q);
  if (p == q || ip >= acc.cols() || iq >= acc.cols()) {
    throw ValidationError("two-level op indices out of range");
  }
  const Eigen::VectorXcd cp = acc.col(ip);
  const Eigen::VectorXcd cq = acc.col(iq);
  acc.col(ip) = cp * m(0, 0) + cq * m(1, 0);
  acc.col(iq) = cp * m(0, 1) + cq * m(1, 1);
}

}  // namespace ftwalk
