// The Kobayashi indicatrix at a point, its Minkowski functional, boundary
// faces and the configuration of complex lines in the boundary.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "univmet/complex2.hpp"
#include "univmet/domain.hpp"

namespace univmet {

// One defining functional L(X) = l1 X1 + l2 X2 of the indicatrix slab
// {|L(X)| < 1}.
struct Functional {
  C2 l{};
  int source_index = -1;  // universal-set member that produced it
  cplx apply(const C2& X) const { return l[0] * X[0] + l[1] * X[1]; }
};

struct IndicatrixModel {
  C2 base_point{};
  std::vector<Functional> functionals;
};

struct Face {
  C2 base{};               // boundary point the face passes through
  int active_index = -1;   // the unique functional with |L(q)| = 1
  C2 kernel_direction{};   // spans Ker(L_active)
};

namespace detail {

// Smallest singular value of the k x 2 matrix whose rows are the covectors:
// sqrt of the smaller eigenvalue of the 2 x 2 Gram matrix.
inline double min_singular_value(const std::vector<Functional>& fs) {
  double g11 = 0.0, g22 = 0.0;
  cplx g12 = 0.0;
  for (const auto& f : fs) {
    g11 += std::norm(f.l[0]);
    g22 += std::norm(f.l[1]);
    g12 += std::conj(f.l[0]) * f.l[1];
  }
  double tr = g11 + g22;
  double det = g11 * g22 - std::norm(g12);
  double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return std::sqrt(std::max(0.0, tr / 2.0 - disc));
}

}  // namespace detail

// Functionals L_i(X) = F_i'(p) X / (1 - |F_i(p)|^2) over the universal set.
inline IndicatrixModel build_indicatrix(const DomainSpec& spec, const C2& p) {
  require_member(spec, p, "p");
  IndicatrixModel model;
  model.base_point = p;
  int idx = 0;
  for (const auto& m : spec.universal_set.members) {
    cplx fp = eval(m.F, p);
    double scale = 1.0 - std::norm(fp);
    Functional f;
    f.l = {eval(m.dF1, p) / scale, eval(m.dF2, p) / scale};
    f.source_index = idx++;
    if (norm2(f.l) == 0.0)
      throw numeric_error("degenerate indicatrix functional from member " +
                          std::to_string(f.source_index));
    model.functionals.push_back(f);
  }
  if (detail::min_singular_value(model.functionals) <= 1e-9)
    throw numeric_error("indicatrix is unbounded: functionals do not span C^2");
  return model;
}

inline double minkowski(const IndicatrixModel& ind, const C2& X) {
  double best = 0.0;
  for (const auto& f : ind.functionals)
    best = std::max(best, std::abs(f.apply(X)));
  return best;
}

inline C2 boundary_point(const IndicatrixModel& ind, const C2& X) {
  double mu = minkowski(ind, X);
  if (mu == 0.0) throw domain_error("cannot project the zero vector to the boundary");
  return (1.0 / mu) * X;
}

inline std::vector<int> active_set(const IndicatrixModel& ind, const C2& q,
                                   double tol = 1e-9) {
  double mu = minkowski(ind, q);
  if (std::abs(mu - 1.0) > tol)
    throw domain_error("point is not on the indicatrix boundary: mu = " +
                       std::to_string(mu));
  std::vector<int> active;
  for (std::size_t i = 0; i < ind.functionals.size(); ++i)
    if (std::abs(ind.functionals[i].apply(q)) >= 1.0 - tol)
      active.push_back(static_cast<int>(i));
  return active;
}

inline Face face_at(const IndicatrixModel& ind, const C2& q, double tol = 1e-9) {
  auto active = active_set(ind, q, tol);
  if (active.size() != 1) {
    std::string s;
    for (int i : active) s += (s.empty() ? "" : ",") + std::to_string(i);
    throw domain_error("not a smooth face: active set {" + s + "}");
  }
  Face face;
  face.base = q;
  face.active_index = active[0];
  const C2& l = ind.functionals[active[0]].l;
  C2 dir = {-l[1], l[0]};
  face.kernel_direction = (1.0 / norm2(dir)) * dir;
  return face;
}

// Kernel lines of the functionals, projectively deduplicated.
inline std::vector<C2> line_configuration(const IndicatrixModel& ind,
                                          double tol = 1e-9) {
  std::vector<C2> lines;
  for (const auto& f : ind.functionals) {
    C2 dir = {-f.l[1], f.l[0]};
    dir = (1.0 / norm2(dir)) * dir;
    bool dup = false;
    for (const auto& seen : lines)
      if (same_complex_line(dir, seen, tol)) { dup = true; break; }
    if (!dup) lines.push_back(dir);
  }
  return lines;
}

}  // namespace univmet
