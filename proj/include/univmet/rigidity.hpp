// Numerical differentiation of maps between domains, per-point Wirtinger
// classification, isometry residuals, and the global
// holomorphic/antiholomorphic/mixed verdict over a connected grid.
#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "univmet/complex2.hpp"
#include "univmet/domain.hpp"
#include "univmet/rlinear.hpp"

namespace univmet {

struct SampledMap {
  std::function<C2(const C2&)> f;
  DomainSpec source;
  DomainSpec target;
};

enum class PointLabel { Holo, Anti, Mixed };

inline const char* to_string(PointLabel l) {
  switch (l) {
    case PointLabel::Holo: return "Holo";
    case PointLabel::Anti: return "Anti";
    case PointLabel::Mixed: return "Mixed";
  }
  return "?";
}

struct PointClassification {
  C2 p{};
  RLinearMap2 jacobian;
  double wirtinger_z_norm = 0.0;     // ||A||_F
  double wirtinger_zbar_norm = 0.0;  // ||B||_F
  PointLabel label = PointLabel::Mixed;
  bool degenerate = false;  // both Wirtinger blocks below tolerance
  double isometry_residual = -1.0;   // -1 when not evaluated
};

namespace detail {

inline C2 perturb(const C2& p, int coord, double delta) {
  C2 q = p;
  switch (coord) {
    case 0: q[0] += delta; break;
    case 1: q[1] += delta; break;
    case 2: q[0] += cplx(0, delta); break;
    case 3: q[1] += cplx(0, delta); break;
  }
  return q;
}

inline bool stencil_inside(const DomainSpec& spec, const C2& p, double h) {
  for (int c = 0; c < 4; ++c)
    if (!contains(spec, perturb(p, c, h)) || !contains(spec, perturb(p, c, -h)))
      return false;
  return true;
}

}  // namespace detail

// Central-difference real Frechet derivative, split into the Wirtinger
// blocks A (C-linear) and B (conjugate-linear).  The step is halved up to
// three times when the 8-point stencil exits the source domain.
inline RLinearMap2 real_jacobian(const SampledMap& map, const C2& p, double h = 1e-5) {
  if (!contains(map.source, p))
    throw domain_error("jacobian base point is not in the source domain");
  int halvings = 0;
  while (!detail::stencil_inside(map.source, p, h)) {
    if (++halvings > 3)
      throw domain_error("finite-difference stencil leaves the domain; use a smaller step than h = " +
                         std::to_string(h));
    h *= 0.5;
  }
  // columns of T on the real basis e1, e2, i e1, i e2
  C2 col[4];
  for (int c = 0; c < 4; ++c) {
    C2 plus = map.f(detail::perturb(p, c, h));
    C2 minus = map.f(detail::perturb(p, c, -h));
    col[c] = (1.0 / (2.0 * h)) * (plus - minus);
  }
  // T(e_j) = A e_j + B e_j, T(i e_j) = i A e_j - i B e_j
  RLinearMap2 t;
  const cplx I(0, 1);
  for (int j = 0; j < 2; ++j) {
    C2 a_col = 0.5 * (col[j] - I * col[j + 2]);
    C2 b_col = 0.5 * (col[j] + I * col[j + 2]);
    t.A[0][j] = a_col[0]; t.A[1][j] = a_col[1];
    t.B[0][j] = b_col[0]; t.B[1][j] = b_col[1];
  }
  return t;
}

// max over sampled unit directions of the relative defect of
// kappa_target(F(p); T X) = kappa_source(p; X).
inline double check_isometry_at(const SampledMap& map, const C2& p, int n_dirs = 16,
                                double h = 1e-5, std::uint64_t seed = 77) {
  C2 fp = map.f(p);
  if (!contains(map.target, fp))
    throw domain_error("image point is not in the target domain");
  RLinearMap2 t = real_jacobian(map, p, h);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int d = 0; d < n_dirs; ++d) {
    C2 x = {cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng))};
    double n = norm2(x);
    if (n < 1e-6) { --d; continue; }
    x = (1.0 / n) * x;
    double src = caratheodory_metric(map.source, p, x);
    double dst = caratheodory_metric(map.target, fp, t.apply(x));
    worst = std::max(worst, std::abs(dst - src) / src);
  }
  return worst;
}

inline PointClassification classify_point(const SampledMap& map, const C2& p,
                                          double h = 1e-5, double tol = 1e-4) {
  PointClassification pc;
  pc.p = p;
  pc.jacobian = real_jacobian(map, p, h);
  ClassifyResult c = classify(pc.jacobian, tol);
  pc.wirtinger_z_norm = c.a_norm;
  pc.wirtinger_zbar_norm = c.b_norm;
  if (c.a_norm <= tol && c.b_norm <= tol) {
    // both blocks vanish numerically: label by the smaller residual, flagged
    pc.degenerate = true;
    pc.label = c.b_norm <= c.a_norm ? PointLabel::Holo : PointLabel::Anti;
  } else if (c.label == Linearity::CLinear) {
    pc.label = PointLabel::Holo;
  } else if (c.label == Linearity::AntiCLinear) {
    pc.label = PointLabel::Anti;
  } else {
    pc.label = PointLabel::Mixed;
  }
  return pc;
}

struct Grid {
  std::vector<C2> points;
  std::vector<std::pair<int, int>> edges;
};

// Axis-aligned 4-D grid centered at `center` with `n` nodes per axis at
// fixed spacing, restricted to in-domain points; adjacency links axis
// neighbors.
inline Grid make_axis_grid(const DomainSpec& spec, const C2& center, int n, double spacing) {
  Grid g;
  std::vector<std::array<int, 4>> coords;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3) {
          double off = -(n - 1) / 2.0;
          C2 p = {center[0] + cplx((i0 + off) * spacing, (i2 + off) * spacing),
                  center[1] + cplx((i1 + off) * spacing, (i3 + off) * spacing)};
          if (!contains(spec, p)) continue;
          coords.push_back({i0, i1, i2, i3});
          g.points.push_back(p);
        }
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t b = a + 1; b < coords.size(); ++b) {
      int diff = 0;
      for (int c = 0; c < 4; ++c) diff += std::abs(coords[a][c] - coords[b][c]);
      if (diff == 1) g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return g;
}

// Axis neighbors at fixed spacing, for externally supplied point lists.
inline std::vector<std::pair<int, int>> infer_axis_adjacency(const std::vector<C2>& pts,
                                                             double spacing,
                                                             double tol = 1e-9) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double d[4] = {pts[a][0].real() - pts[b][0].real(), pts[a][1].real() - pts[b][1].real(),
                     pts[a][0].imag() - pts[b][0].imag(), pts[a][1].imag() - pts[b][1].imag()};
      int moved = 0;
      bool ok = true;
      for (double x : d) {
        if (std::abs(x) < tol) continue;
        if (std::abs(std::abs(x) - spacing) < tol) ++moved;
        else { ok = false; break; }
      }
      if (ok && moved == 1) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return edges;
}

enum class GlobalVerdict { Holomorphic, Antiholomorphic, Mixed };

inline const char* to_string(GlobalVerdict v) {
  switch (v) {
    case GlobalVerdict::Holomorphic: return "Holomorphic";
    case GlobalVerdict::Antiholomorphic: return "Antiholomorphic";
    case GlobalVerdict::Mixed: return "Mixed";
  }
  return "?";
}

struct MapClassification {
  GlobalVerdict verdict = GlobalVerdict::Mixed;
  std::vector<PointClassification> points;
  std::vector<std::pair<int, int>> label_change_edges;
  double worst_isometry_residual = -1.0;
};

inline bool grid_connected(const Grid& g) {
  if (g.points.empty()) return false;
  std::vector<char> seen(g.points.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  std::vector<std::vector<int>> adj(g.points.size());
  for (auto [a, b] : g.edges) { adj[a].push_back(b); adj[b].push_back(a); }
  while (!q.empty()) {
    int v = q.front(); q.pop();
    for (int u : adj[v])
      if (!seen[u]) { seen[u] = 1; ++count; q.push(u); }
  }
  return count == g.points.size();
}

// Discretized global verdict: per-point Wirtinger classification over a
// connected grid, with isometry residuals attached when requested.
inline MapClassification classify_map(const SampledMap& map, const Grid& grid,
                                      double h = 1e-5, double tol = 1e-4,
                                      int isometry_dirs = 0) {
  if (grid.points.empty()) throw domain_error("empty grid");
  if (!grid_connected(grid))
    throw domain_error("grid is not connected under the declared adjacency");
  MapClassification mc;
  bool all_holo = true, all_anti = true;
  for (const auto& p : grid.points) {
    PointClassification pc = classify_point(map, p, h, tol);
    if (isometry_dirs > 0) {
      pc.isometry_residual = check_isometry_at(map, p, isometry_dirs, h);
      mc.worst_isometry_residual = std::max(mc.worst_isometry_residual, pc.isometry_residual);
    }
    all_holo = all_holo && pc.label == PointLabel::Holo;
    all_anti = all_anti && pc.label == PointLabel::Anti;
    mc.points.push_back(std::move(pc));
  }
  for (auto [a, b] : grid.edges)
    if (mc.points[a].label != mc.points[b].label) mc.label_change_edges.emplace_back(a, b);
  mc.verdict = all_holo ? GlobalVerdict::Holomorphic
             : all_anti ? GlobalVerdict::Antiholomorphic
                        : GlobalVerdict::Mixed;
  return mc;
}

// A map given by two component expressions; conj of variables is allowed
// here, unlike universal-set members.
inline SampledMap expression_map(const std::string& comp1, const std::string& comp2,
                                 const ConstantTable& constants,
                                 DomainSpec source, DomainSpec target) {
  ExprPtr e1 = parse(comp1, constants);
  ExprPtr e2 = parse(comp2, constants);
  SampledMap m;
  m.f = [e1, e2](const C2& z) -> C2 { return {eval(e1, z), eval(e2, z)}; };
  m.source = std::move(source);
  m.target = std::move(target);
  return m;
}

}  // namespace univmet
