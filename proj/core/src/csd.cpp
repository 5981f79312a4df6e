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

#include "ftwalk/csd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ftwalk/error.hpp"
#include "csv_util.hpp"

namespace ftwalk {

namespace {

constexpr double kDeg = 180.0 / M_PI;
constexpr double kRad = M_PI / 180.0;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void emit(std::vector<TwoLevelOp>& out, OpKind kind, double angle_deg, int p, int q) {
  if (kind == OpKind::Z) {
    out.push_back({kind, 0.0, p, q});
    return;
  }
  const double a = normalize_degrees(angle_deg);
  if (std::abs(a) < kAngleDropThreshold) return;
  out.push_back({kind, a, p, q});
}

// 2x2 block on 0-based rows (offset, offset+1).
void terminal_ops(const Eigen::Matrix2d& v, int offset, std::vector<TwoLevelOp>& out) {
  const int p = offset + 1;
  if (v.determinant() > 0) {
    emit(out, OpKind::Ry, std::atan2(v(0, 1), v(0, 0)) * kDeg, p, p + 1);
  } else {
    // v = Ry(phi) Z
    emit(out, OpKind::Ry, std::atan2(-v(0, 1), v(0, 0)) * kDeg, p, p + 1);
    emit(out, OpKind::Z, 0.0, p, p + 1);
  }
}

double safe_arg(Complex z) { return std::abs(z) < 1e-15 ? 0.0 : std::arg(z); }

void terminal_ops(const Eigen::Matrix2cd& v, int offset, std::vector<TwoLevelOp>& out) {
  const int p = offset + 1;
  // v = e^{i a} Rz(b) Ry(g) Rz(d), and e^{i a} on both entries = Rz(a) Phase(2a).
  const double alpha = std::arg(v.determinant()) / 2.0;
  const Eigen::Matrix2cd w = v * std::polar(1.0, -alpha);
  const double gamma = std::atan2(std::abs(w(0, 1)), std::abs(w(0, 0)));
  const double sum = safe_arg(w(0, 0));
  const double diff = safe_arg(w(0, 1));
  emit(out, OpKind::Rz, alpha * kDeg, p, p + 1);
  emit(out, OpKind::Phase, 2.0 * alpha * kDeg, p, p + 1);
  emit(out, OpKind::Rz, (sum + diff) / 2.0 * kDeg, p, p + 1);
  emit(out, OpKind::Ry, gamma * kDeg, p, p + 1);
  emit(out, OpKind::Rz, (sum - diff) / 2.0 * kDeg, p, p + 1);
}

template <class Scalar>
struct CsFactors {
  Mat<Scalar> l1, l2, r1, r2;
  std::vector<double> angles_rad;  // atan2(s, c) per pair
};

// Columns of `x` in `order`, orthonormalized; vectors that vanish are replaced
// by a completion of the basis.
template <class Scalar>
Mat<Scalar> orthonormal_columns(const Mat<Scalar>& x, const std::vector<Eigen::Index>& order) {
  const Eigen::Index n = x.rows();
  Mat<Scalar> q = Mat<Scalar>::Zero(n, n);
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> done;
  auto project_out = [&](Vec<Scalar>& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j : done) v -= q.col(j) * q.col(j).dot(v);
  };
  for (Eigen::Index j : order) {
    Vec<Scalar> v = x.col(j);
    project_out(v);
    const double nv = v.norm();
    if (nv > 1e-12) {
      q.col(j) = v / nv;
      filled[static_cast<std::size_t>(j)] = true;
      done.push_back(j);
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (filled[static_cast<std::size_t>(j)]) continue;
    Vec<Scalar> best;
    double best_norm = -1.0;
    for (Eigen::Index e = 0; e < n; ++e) {
      Vec<Scalar> v = Vec<Scalar>::Unit(n, e);
      project_out(v);
      if (v.norm() > best_norm) {
        best_norm = v.norm();
        best = v;
      }
    }
    q.col(j) = best / best_norm;
    filled[static_cast<std::size_t>(j)] = true;
    done.push_back(j);
  }
  return q;
}

// u = diag(L1, L2) [[C, S], [-S, C]] diag(R1, R2), C and S nonnegative.
template <class Scalar>
CsFactors<Scalar> cs_split(const Mat<Scalar>& u) {
  const Eigen::Index h = u.rows() / 2;
  const Mat<Scalar> u11 = u.topLeftCorner(h, h);
  const Mat<Scalar> u12 = u.topRightCorner(h, h);
  const Mat<Scalar> u21 = u.bottomLeftCorner(h, h);
  const Mat<Scalar> u22 = u.bottomRightCorner(h, h);

  Eigen::JacobiSVD<Mat<Scalar>> svd(u11, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CsFactors<Scalar> f;
  f.l1 = svd.matrixU();
  f.r1 = svd.matrixV().adjoint();
  std::vector<double> c(static_cast<std::size_t>(h));
  for (Eigen::Index j = 0; j < h; ++j) c[static_cast<std::size_t>(j)] = std::min(1.0, svd.singularValues()(j));

  // -U21 R1^dag = L2 S: orthogonal columns with norms s_j.
  const Mat<Scalar> x = -u21 * svd.matrixV();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(h));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return x.col(a).norm() > x.col(b).norm();
  });
  f.l2 = orthonormal_columns<Scalar>(x, order);

  std::vector<double> s(static_cast<std::size_t>(h));
  for (Eigen::Index j = 0; j < h; ++j) {
    s[static_cast<std::size_t>(j)] = std::max(0.0, std::real(f.l2.col(j).dot(x.col(j))));
  }

  // Each row of R2 comes from whichever of U22 = L2 C R2 or U12 = L1 S R2 is
  // better conditioned.
  f.r2.resize(h, h);
  const Mat<Scalar> from_u22 = f.l2.adjoint() * u22;
  const Mat<Scalar> from_u12 = f.l1.adjoint() * u12;
  f.angles_rad.resize(static_cast<std::size_t>(h));
  for (Eigen::Index j = 0; j < h; ++j) {
    const double cj = c[static_cast<std::size_t>(j)];
    const double sj = s[static_cast<std::size_t>(j)];
    f.r2.row(j) = cj >= sj ? Mat<Scalar>(from_u22.row(j) / cj) : Mat<Scalar>(from_u12.row(j) / sj);
    f.angles_rad[static_cast<std::size_t>(j)] = std::atan2(sj, cj);
  }
  return f;
}

template <class Scalar>
void decompose_block(const Mat<Scalar>& u, int offset, std::vector<TwoLevelOp>& out) {
  const Eigen::Index n = u.rows();
  if (n == 2) {
    if constexpr (std::is_same_v<Scalar, double>) {
      terminal_ops(Eigen::Matrix2d(u), offset, out);
    } else {
      terminal_ops(Eigen::Matrix2cd(u), offset, out);
    }
    return;
  }
  const int h = static_cast<int>(n / 2);
  const CsFactors<Scalar> f = cs_split<Scalar>(u);
  decompose_block<Scalar>(f.l1, offset, out);
  decompose_block<Scalar>(f.l2, offset + h, out);
  for (int r = 0; r < h; ++r) {
    emit(out, OpKind::Ry, f.angles_rad[static_cast<std::size_t>(r)] * kDeg, offset + r + 1,
         offset + r + h + 1);
  }
  decompose_block<Scalar>(f.r1, offset, out);
  decompose_block<Scalar>(f.r2, offset + h, out);
}

}  // namespace

const char* to_string(OpKind k) {
  switch (k) {
    case OpKind::Ry: return "Ry";
    case OpKind::Rz: return "Rz";
    case OpKind::Phase: return "Phase";
    case OpKind::Z: return "Z";
  }
  return "?";
}

OpKind parse_op_kind(const std::string& s) {
  if (s == "Ry") return OpKind::Ry;
  if (s == "Rz") return OpKind::Rz;
  if (s == "Phase") return OpKind::Phase;
  if (s == "Z") return OpKind::Z;
  throw ValidationError("unknown op kind \"" + s + "\"");
}

double normalize_degrees(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a <= -180.0) a += 360.0;
  if (a > 180.0) a -= 360.0;
  return a;
}

Eigen::Matrix2cd TwoLevelOp::matrix() const {
  const double t = angle_deg * kRad;
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (kind) {
    case OpKind::Ry:
      m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
      break;
    case OpKind::Rz:
      m(0, 0) = std::polar(1.0, t);
      m(1, 1) = std::polar(1.0, -t);
      break;
    case OpKind::Phase:
      m(0, 0) = 1.0;
      m(1, 1) = std::polar(1.0, t);
      break;
    case OpKind::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

ComplexMatrix pad_to_power_of_two(const ComplexMatrix& u) {
  if (u.dim() == 0) throw ValidationError("cannot pad an empty matrix");
  if (!u.is_unitary()) throw ValidationError("matrix is not unitary");
  std::size_t target = 2;
  while (target < u.dim()) target *= 2;
  if (target == u.dim()) return u;
  const auto n = static_cast<Eigen::Index>(u.dim());
  const auto t = static_cast<Eigen::Index>(target);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(t, t);
  m.topLeftCorner(n, n) = u.eigen();
  return ComplexMatrix(std::move(m));
}

Decomposition cs_decompose(const ComplexMatrix& u) {
  if (!is_power_of_two(u.dim()) || u.dim() < 2) {
    throw ValidationError("cs_decompose needs a 2^M x 2^M matrix with M >= 1, got " +
                          std::to_string(u.dim()));
  }
  if (!u.is_unitary()) throw ValidationError("matrix is not unitary");
  Decomposition d;
  d.padded_dim = u.dim();
  if (u.is_real()) {
    decompose_block<double>(u.eigen().real(), 0, d.ops);
  } else {
    decompose_block<Complex>(u.eigen(), 0, d.ops);
  }
  const double residue = reconstruct(d).max_deviation(u);
  if (!(residue < kReconstructionFailure)) {
    throw InvariantError("cosine-sine decomposition failed: reconstruction residue " +
                         format_double(residue));
  }
  return d;
}

ComplexMatrix reconstruct(const Decomposition& d) {
  const auto n = static_cast<Eigen::Index>(d.padded_dim);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& op : d.ops) {
    if (op.p < 1 || op.q < 1 || op.p > n || op.q > n || op.p == op.q) {
      throw ValidationError("op indices (" + std::to_string(op.p) + "," + std::to_string(op.q) +
                            ") out of range for dimension " + std::to_string(n));
    }
    right_multiply_two_level(acc, op.matrix(), static_cast<std::size_t>(op.p - 1),
                             static_cast<std::size_t>(op.q - 1));
  }
  return ComplexMatrix(std::move(acc));
}

void write_decomposition_csv(std::ostream& out, const Decomposition& d) {
  out << "# padded_dim=" << d.padded_dim << "\n";
  out << "kind,angle_deg,p,q\n";
  for (const auto& op : d.ops) {
    out << to_string(op.kind) << ',';
    if (op.kind != OpKind::Z) out << format_double(op.angle_deg);
    out << ',' << op.p << ',' << op.q << '\n';
  }
}

Decomposition read_decomposition_csv(std::istream& in) {
  Decomposition d;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::size_t declared = 0;
  int max_index = 0;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("decomposition CSV line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    if (line[0] == '#') {
      const std::string key = "# padded_dim=";
      if (line.rfind(key, 0) == 0) declared = std::stoul(line.substr(key.size()));
      continue;
    }
    if (!header) {
      if (detail::split_csv(line) != std::vector<std::string>{"kind", "angle_deg", "p", "q"}) {
        fail("expected header kind,angle_deg,p,q");
      }
      header = true;
      continue;
    }
    const auto f = detail::split_csv(line);
    if (f.size() != 4) fail("expected 4 fields");
    TwoLevelOp op;
    try {
      op.kind = parse_op_kind(f[0]);
      if (op.kind != OpKind::Z) {
        std::size_t used = 0;
        op.angle_deg = std::stod(f[1], &used);
        if (used != f[1].size()) fail("bad angle");
      }
      op.p = std::stoi(f[2]);
      op.q = std::stoi(f[3]);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      fail("unparseable row");
    }
    if (op.p < 1 || op.q < 1 || op.p == op.q) fail("indices must be distinct and >= 1");
    max_index = std::max({max_index, op.p, op.q});
    d.ops.push_back(op);
  }
  if (!header) throw ValidationError("decomposition CSV has no header");
  std::size_t inferred = 2;
  while (inferred < static_cast<std::size_t>(max_index)) inferred *= 2;
  if (declared != 0) {
    if (!is_power_of_two(declared) || declared < static_cast<std::size_t>(max_index)) {
      throw ValidationError("declared padded_dim is inconsistent with the op indices");
    }
    d.padded_dim = declared;
  } else {
    d.padded_dim = inferred;
  }
  return d;
}

Decomposition read_decomposition_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open decomposition file: " + path);
  return read_decomposition_csv(in);
}

}  // namespace ftwalk
