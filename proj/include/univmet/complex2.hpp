// Basic complex scalar/vector types shared by every module.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace univmet {

using cplx = std::complex<double>;

// A point of C^2 (or a tangent vector, they share representation).
using C2 = std::array<cplx, 2>;

inline C2 operator+(const C2& a, const C2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline C2 operator-(const C2& a, const C2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline C2 operator*(const cplx& s, const C2& v) { return {s * v[0], s * v[1]}; }
inline C2 operator*(double s, const C2& v) { return {s * v[0], s * v[1]}; }
inline C2 conj(const C2& v) { return {std::conj(v[0]), std::conj(v[1])}; }

inline double norm2(const C2& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]));
}

// Hermitian inner product <u, v> = u1 conj(v1) + u2 conj(v2).
inline cplx hdot(const C2& u, const C2& v) {
  return u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]);
}

// True when u and v span the same complex line: |<u,v>| >= (1-tol)|u||v|.
inline bool same_complex_line(const C2& u, const C2& v, double tol) {
  double nu = norm2(u), nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) return false;
  return std::abs(hdot(u, v)) >= (1.0 - tol) * nu * nv;
}

// Errors raised across the library.  Each carries a short category so the
// CLI can map them onto its exit-code contract.
class error : public std::runtime_error {
 public:
  enum class kind { domain, parse, numeric };
  error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

inline error domain_error(const std::string& msg) { return error(error::kind::domain, msg); }
inline error parse_error(const std::string& msg) { return error(error::kind::parse, msg); }
inline error numeric_error(const std::string& msg) { return error(error::kind::numeric, msg); }

}  // namespace univmet
