// R-linear maps of C and C^2, their classification as C-linear /
// anti-C-linear / neither, the circle-image test for one variable, and the
// verdict pipeline for norm-and-line-preserving maps between indicatrices.
#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "univmet/complex2.hpp"
#include "univmet/indicatrix.hpp"

namespace univmet {

// A(z) = a z + b conj(z).
struct RLinearMap1 {
  cplx a{}, b{};
  cplx apply(cplx z) const { return a * z + b * std::conj(z); }
};

// Image of the unit circle under A is the ellipse with these semi-axes; it
// is a circle iff a = 0 or b = 0.
struct CircleImage {
  double min_radius = 0.0;
  double max_radius = 0.0;
  bool is_circle(double tol = 1e-12) const { return max_radius - min_radius <= tol; }
};

inline CircleImage circle_image_radii(const RLinearMap1& m) {
  double ma = std::abs(m.a), mb = std::abs(m.b);
  return {std::abs(ma - mb), ma + mb};
}

using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat2 mat2_mul(const Mat2& p, const Mat2& q) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
  return r;
}

inline Mat2 mat2_conj(const Mat2& p) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(p[i][j]);
  return r;
}

inline Mat2 mat2_add(const Mat2& p, const Mat2& q) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = p[i][j] + q[i][j];
  return r;
}

inline double frobenius(const Mat2& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (const auto& v : row) s += std::norm(v);
  return std::sqrt(s);
}

inline constexpr Mat2 mat2_identity() {
  return Mat2{{{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(1, 0)}}};
}

// T(X) = A X + B conj(X), with a derived real 4x4 view in the basis
// (Re X1, Re X2, Im X1, Im X2).
struct RLinearMap2 {
  Mat2 A{}, B{};

  C2 apply(const C2& X) const {
    return {A[0][0] * X[0] + A[0][1] * X[1] + B[0][0] * std::conj(X[0]) + B[0][1] * std::conj(X[1]),
            A[1][0] * X[0] + A[1][1] * X[1] + B[1][0] * std::conj(X[0]) + B[1][1] * std::conj(X[1])};
  }

  Mat4 real_matrix() const {
    const C2 basis[4] = {{cplx(1, 0), 0}, {0, cplx(1, 0)}, {cplx(0, 1), 0}, {0, cplx(0, 1)}};
    Mat4 m{};
    for (int col = 0; col < 4; ++col) {
      C2 img = apply(basis[col]);
      m[0][col] = img[0].real();
      m[1][col] = img[1].real();
      m[2][col] = img[0].imag();
      m[3][col] = img[1].imag();
    }
    return m;
  }

  static RLinearMap2 identity() { return {mat2_identity(), Mat2{}}; }
  static RLinearMap2 conjugation() { return {Mat2{}, mat2_identity()}; }
};

// (S o T)(X) = A_S (A_T X + B_T conj X) + B_S conj(A_T X + B_T conj X)
inline RLinearMap2 compose(const RLinearMap2& s, const RLinearMap2& t) {
  RLinearMap2 r;
  r.A = mat2_add(mat2_mul(s.A, t.A), mat2_mul(s.B, mat2_conj(t.B)));
  r.B = mat2_add(mat2_mul(s.A, t.B), mat2_mul(s.B, mat2_conj(t.A)));
  return r;
}

inline Mat4 complex_structure_matrix() {
  // J = [0 -I; I 0] in the (Re X1, Re X2, Im X1, Im X2) basis
  Mat4 j{};
  j[0][2] = -1.0; j[1][3] = -1.0;
  j[2][0] = 1.0;  j[3][1] = 1.0;
  return j;
}

inline Mat4 mat4_mul(const Mat4& p, const Mat4& q) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) r[i][j] += p[i][k] * q[k][j];
  return r;
}

inline double mat4_frobenius(const Mat4& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

enum class Linearity { CLinear, AntiCLinear, Neither };

inline const char* to_string(Linearity l) {
  switch (l) {
    case Linearity::CLinear: return "CLinear";
    case Linearity::AntiCLinear: return "AntiCLinear";
    case Linearity::Neither: return "Neither";
  }
  return "?";
}

struct ClassifyResult {
  Linearity label = Linearity::Neither;
  double a_norm = 0.0;           // ||A||_F, the conjugate-linear residual for Anti
  double b_norm = 0.0;           // ||B||_F, the residual for CLinear
  double commutator_ratio = 0.0; // ||MJ - JM|| / ||MJ + JM||, diagnostic
};

inline ClassifyResult classify(const RLinearMap2& t, double tol) {
  ClassifyResult r;
  r.a_norm = frobenius(t.A);
  r.b_norm = frobenius(t.B);
  Mat4 m = t.real_matrix();
  Mat4 j = complex_structure_matrix();
  Mat4 mj = mat4_mul(m, j), jm = mat4_mul(j, m);
  Mat4 diff{}, sum{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      diff[i][k] = mj[i][k] - jm[i][k];
      sum[i][k] = mj[i][k] + jm[i][k];
    }
  double den = mat4_frobenius(sum);
  r.commutator_ratio = den > 0.0 ? mat4_frobenius(diff) / den : 0.0;
  if (r.b_norm <= tol * (1.0 + r.a_norm)) r.label = Linearity::CLinear;
  else if (r.a_norm <= tol * (1.0 + r.b_norm)) r.label = Linearity::AntiCLinear;
  else r.label = Linearity::Neither;
  return r;
}

struct MapsLinesResult {
  bool ok = false;
  std::vector<int> permutation;  // sigma: src index -> dst index
  int failed_source = -1;
  std::string reason;
};

// Tests that T carries each source complex line into some destination
// complex line.  The image of the real 2-plane spanned by v, iv lies in a
// complex line iff T(v) and T(iv) are C-proportional.
inline MapsLinesResult maps_lines(const RLinearMap2& t, const std::vector<C2>& src,
                                  const std::vector<C2>& dst, double tol) {
  if (src.size() != dst.size())
    throw domain_error("maps_lines: source and destination line counts differ");
  MapsLinesResult res;
  res.permutation.assign(src.size(), -1);
  std::vector<bool> used(dst.size(), false);
  for (std::size_t j = 0; j < src.size(); ++j) {
    const C2& v = src[j];
    C2 u1 = t.apply(v);
    C2 u2 = t.apply(cplx(0, 1) * v);
    const C2& rep = norm2(u1) >= norm2(u2) ? u1 : u2;
    const C2& other = norm2(u1) >= norm2(u2) ? u2 : u1;
    if (norm2(rep) < 1e-12) {
      res.failed_source = static_cast<int>(j);
      res.reason = "image of source line " + std::to_string(j) + " collapses to zero";
      return res;
    }
    if (norm2(other) > tol * norm2(rep) && !same_complex_line(other, rep, tol)) {
      res.failed_source = static_cast<int>(j);
      res.reason = "image of source line " + std::to_string(j) +
                   " is not contained in a complex line";
      return res;
    }
    int match = -1;
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (used[k]) continue;
      if (same_complex_line(rep, dst[k], tol)) { match = static_cast<int>(k); break; }
    }
    if (match < 0) {
      res.failed_source = static_cast<int>(j);
      res.reason = "image of source line " + std::to_string(j) +
                   " matches no unused destination line";
      return res;
    }
    used[match] = true;
    res.permutation[j] = match;
  }
  res.ok = true;
  return res;
}

struct NormPreservation {
  bool ok = false;
  double worst_relative_deviation = 0.0;
};

// Samples |mu_dst(T X) - mu_src(X)| / mu_src(X) on pseudo-random unit
// vectors with a fixed seed.
inline NormPreservation preserves_norm(const RLinearMap2& t, const IndicatrixModel& src,
                                       const IndicatrixModel& dst, int n_samples,
                                       double tol, std::uint64_t seed = 20240901) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  NormPreservation r;
  for (int s = 0; s < n_samples; ++s) {
    C2 x = {cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng))};
    double n = norm2(x);
    if (n < 1e-6) { --s; continue; }
    x = (1.0 / n) * x;
    double mu1 = minkowski(src, x);
    double mu2 = minkowski(dst, t.apply(x));
    double dev = std::abs(mu2 - mu1) / mu1;
    r.worst_relative_deviation = std::max(r.worst_relative_deviation, dev);
  }
  r.ok = r.worst_relative_deviation <= tol;
  return r;
}

struct LinearityVerdict {
  ClassifyResult classification;
  NormPreservation norm_check;
  MapsLinesResult line_check;
  std::vector<C2> src_lines, dst_lines;
  bool hypotheses_hold = false;
  bool contradiction = false;  // hypotheses held yet the map is Neither
};

// Full pipeline for a map between two >= 3-line indicatrices: sample norm
// preservation, match the line configurations, classify.  When both
// hypotheses hold the classification can never be Neither; that outcome is
// flagged as a contradiction (a bug or a silently violated hypothesis).
inline LinearityVerdict linearity_verdict(const RLinearMap2& t, const IndicatrixModel& src,
                                          const IndicatrixModel& dst,
                                          int n_samples = 2000, double tol = 1e-8) {
  LinearityVerdict v;
  v.src_lines = line_configuration(src);
  v.dst_lines = line_configuration(dst);
  if (v.src_lines.size() < 3 || v.dst_lines.size() < 3)
    throw domain_error("verdict requires at least 3 boundary lines on each side (got " +
                       std::to_string(v.src_lines.size()) + " and " +
                       std::to_string(v.dst_lines.size()) + ")");
  v.norm_check = preserves_norm(t, src, dst, n_samples, tol);
  v.line_check = maps_lines(t, v.src_lines, v.dst_lines, tol);
  v.classification = classify(t, tol);
  v.hypotheses_hold = v.norm_check.ok && v.line_check.ok;
  v.contradiction = v.hypotheses_hold && v.classification.label == Linearity::Neither;
  return v;
}

}  // namespace univmet
