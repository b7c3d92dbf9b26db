// Upper bounds for the Lempert function and Kobayashi metric via penalized
// optimization over polynomial analytic discs, and the gap report against
// the Caratheodory lower bound.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "univmet/complex2.hpp"
#include "univmet/domain.hpp"

namespace univmet {

// f(lambda) = sum_j c_j lambda^j, with c_0 anchored at the disc's center.
struct AnalyticDisc {
  std::vector<C2> coefficients;  // c_0 ... c_d
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

inline C2 eval_disc(const AnalyticDisc& disc, cplx lambda) {
  C2 acc = {0.0, 0.0};
  for (auto it = disc.coefficients.rbegin(); it != disc.coefficients.rend(); ++it)
    acc = lambda * acc + *it;
  return acc;
}

namespace detail {

// Membership slacks at a point; every entry must be < 0 inside the domain.
// Slacks are chosen subharmonic along analytic discs (|.|^2 differences), so
// boundary feasibility certifies interior feasibility by the maximum
// principle, up to sampling resolution.
inline void membership_slacks(const DomainSpec& spec, const C2& z, std::vector<double>& out) {
  out.clear();
  switch (spec.kind) {
    case DomainKind::Bidisc:
      out.push_back(std::norm(z[0]) - 1.0);
      out.push_back(std::norm(z[1]) - 1.0);
      break;
    case DomainKind::Dab:
      out.push_back(std::norm(z[0]) - 1.0);
      out.push_back(std::norm(z[1]) - 1.0);
      out.push_back(std::norm(dab_numerator(spec, z)) - std::norm(dab_denominator(spec, z)));
      break;
    case DomainKind::Custom:
      for (const auto& e : spec.membership) out.push_back(std::norm(eval(e, z)) - 1.0);
      break;
  }
}

}  // namespace detail

struct FeasibilityReport {
  bool feasible = false;
  double worst_slack = std::numeric_limits<double>::infinity();
};

// Checks every membership slack at the n-th roots of unity; feasible when
// the worst slack stays below -margin.
inline FeasibilityReport disc_feasible(const AnalyticDisc& disc, const DomainSpec& spec,
                                       int n_boundary = 256, double margin = 1e-7) {
  if (n_boundary < 8) throw domain_error("need at least 8 boundary samples");
  FeasibilityReport rep;
  rep.worst_slack = -std::numeric_limits<double>::infinity();
  std::vector<double> slacks;
  for (int m = 0; m < n_boundary; ++m) {
    double th = 2.0 * M_PI * m / n_boundary;
    C2 z = eval_disc(disc, cplx(std::cos(th), std::sin(th)));
    detail::membership_slacks(spec, z, slacks);
    for (double s : slacks) rep.worst_slack = std::max(rep.worst_slack, s);
  }
  rep.feasible = rep.worst_slack <= -margin;
  return rep;
}

namespace detail {

// Plain Nelder-Mead simplex descent with an evaluation budget.  Stops early
// when the best value reaches `target`.
struct NelderMead {
  double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

  template <typename F>
  std::pair<std::vector<double>, double> minimize(F&& f, std::vector<double> x0,
                                                  double step, int max_evals,
                                                  double target, int& evals_used) const {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    int evals = 0;
    auto call = [&](const std::vector<double>& x) { ++evals; return f(x); };
    for (int i = 1; i <= n; ++i) xs[i][i - 1] += step;
    for (int i = 0; i <= n; ++i) fs[i] = call(xs[i]);
    while (evals < max_evals) {
      std::vector<int> order(n + 1);
      for (int i = 0; i <= n; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
      if (fs[order[0]] <= target) break;
      int lo = order[0], hi = order[n], second_hi = order[n - 1];
      std::vector<double> centroid(n, 0.0);
      for (int i = 0; i <= n; ++i)
        if (i != hi)
          for (int k = 0; k < n; ++k) centroid[k] += xs[i][k] / n;
      auto lerp = [&](double t) {
        std::vector<double> p(n);
        for (int k = 0; k < n; ++k) p[k] = centroid[k] + t * (xs[hi][k] - centroid[k]);
        return p;
      };
      std::vector<double> xr = lerp(-reflect);
      double fr = call(xr);
      if (fr < fs[lo]) {
        std::vector<double> xe = lerp(-expand);
        double fe = call(xe);
        if (fe < fr) { xs[hi] = xe; fs[hi] = fe; }
        else { xs[hi] = xr; fs[hi] = fr; }
      } else if (fr < fs[second_hi]) {
        xs[hi] = xr; fs[hi] = fr;
      } else {
        std::vector<double> xc = lerp(fr < fs[hi] ? -contract : contract);
        double fc = call(xc);
        if (fc < std::min(fr, fs[hi])) { xs[hi] = xc; fs[hi] = fc; }
        else {
          for (int i = 0; i <= n; ++i) {
            if (i == lo) continue;
            for (int k = 0; k < n; ++k) xs[i][k] = xs[lo][k] + shrink * (xs[i][k] - xs[lo][k]);
            fs[i] = call(xs[i]);
          }
        }
      }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
      if (fs[i] < fs[best]) best = i;
    evals_used += evals;
    return {xs[best], fs[best]};
  }
};

struct PenaltyOptions {
  int boundary_samples = 64;
  double margin = 1e-7;
  int multistarts = 4;
  double start_scale = 0.05;
};

// Budget share of a degree: proportional to its free-parameter count, so the
// cheap degree-1 pass never starves the higher degrees.
inline int degree_weight(int d) { return d == 1 ? 1 : 4 * (d - 1); }

// Quadratic hinge penalty of the boundary membership slacks.
inline double boundary_penalty(const AnalyticDisc& disc, const DomainSpec& spec,
                               const PenaltyOptions& opt) {
  double pen = 0.0;
  std::vector<double> slacks;
  for (int m = 0; m < opt.boundary_samples; ++m) {
    double th = 2.0 * M_PI * m / opt.boundary_samples;
    C2 z = eval_disc(disc, cplx(std::cos(th), std::sin(th)));
    membership_slacks(spec, z, slacks);
    for (double s : slacks) {
      double v = std::max(0.0, s + opt.margin);
      pen += v * v;
    }
  }
  return pen;
}

// Free parameters are the real/imag parts of the coefficients c_2 ... c_d.
inline void unpack_free_coeffs(const std::vector<double>& x, AnalyticDisc& disc) {
  for (std::size_t j = 0; 4 * j + 3 < x.size(); ++j) {
    disc.coefficients[j + 2] = {cplx(x[4 * j], x[4 * j + 1]),
                                cplx(x[4 * j + 2], x[4 * j + 3])};
  }
}

struct InnerResult {
  bool feasible = false;
  double penalty = std::numeric_limits<double>::infinity();
  AnalyticDisc disc;
};

// Searches the free coefficients of a degree-d disc for zero boundary
// penalty.  `fix_c1` recomputes c_1 from the remaining coefficients after
// every update (the interpolation constraint is eliminated, not penalized).
template <typename FixC1>
InnerResult solve_free_coefficients(const DomainSpec& spec, AnalyticDisc proto,
                                    FixC1&& fix_c1, const PenaltyOptions& opt,
                                    int inner_budget, int& evals_used, std::mt19937_64& rng,
                                    const std::vector<double>* warm_start) {
  const int d = proto.degree();
  const int n_free = std::max(0, 4 * (d - 1));
  InnerResult best;
  auto objective = [&](const std::vector<double>& x) {
    unpack_free_coeffs(x, proto);
    fix_c1(proto);
    return boundary_penalty(proto, spec, opt);
  };
  if (n_free == 0) {
    ++evals_used;
    best.penalty = objective({});
    unpack_free_coeffs({}, proto);
    fix_c1(proto);
    best.disc = proto;
    best.feasible = best.penalty <= 0.0;
    return best;
  }
  NelderMead nm;
  std::normal_distribution<double> gauss(0.0, 1.0);
  int starts = opt.multistarts;
  int per_start = std::max(n_free + 2, inner_budget / std::max(1, starts));
  int local = 0;
  for (int s = 0; s < starts && local < inner_budget; ++s) {
    std::vector<double> x0(n_free, 0.0);
    if (s == 0 && warm_start && static_cast<int>(warm_start->size()) == n_free) x0 = *warm_start;
    else if (s > 0)
      for (double& v : x0) v = opt.start_scale * gauss(rng);
    auto [x, fx] = nm.minimize(objective, x0, 0.02, std::min(per_start, inner_budget - local),
                               0.0, local);
    if (fx < best.penalty) {
      best.penalty = fx;
      unpack_free_coeffs(x, proto);
      fix_c1(proto);
      best.disc = proto;
    }
    if (best.penalty <= 0.0) break;
  }
  evals_used += local;
  best.feasible = best.penalty <= 0.0;
  return best;
}

}  // namespace detail

struct LempertBound {
  double value = std::numeric_limits<double>::infinity();
  bool found = false;
  AnalyticDisc witness;
  double t = 0.0;            // disc parameter reaching w (distance case)
  double worst_slack = 0.0;  // certification slack of the witness
  long budget_used = 0;
  std::string diagnostics;
};

// Upper bound for the Lempert function: minimize artanh(t) over feasible
// polynomial discs with f(0) = z and f(t) = w.  Outer golden-section on t,
// inner penalized simplex descent over the free coefficients, warm-started
// across degrees.  Budget counts full boundary-penalty evaluations.
inline LempertBound lempert_upper(const DomainSpec& spec, const C2& z, const C2& w,
                                  int degree = 1, int budget = 20000,
                                  std::uint64_t seed = 1) {
  require_member(spec, z, "z");
  require_member(spec, w, "w");
  if (norm2(w - z) == 0.0) throw domain_error("Lempert bound needs distinct points");
  double c = caratheodory_distance(spec, z, w);
  double t_lo = std::tanh(c);
  detail::PenaltyOptions opt;
  std::mt19937_64 rng(seed);
  int evals = 0;
  LempertBound out;

  // inner solve at fixed t for a fixed degree, optional warm start
  auto inner = [&](double t, int d, const std::vector<double>* warm, int inner_budget) {
    AnalyticDisc proto;
    proto.coefficients.assign(d + 1, C2{0.0, 0.0});
    proto.coefficients[0] = z;
    auto fix_c1 = [&, t](AnalyticDisc& disc) {
      // c_1 = (w - z - sum_{j>=2} c_j t^j) / t
      C2 rest = {0.0, 0.0};
      double tj = t;
      for (int j = 2; j <= disc.degree(); ++j) {
        tj *= t;
        rest = rest + tj * disc.coefficients[j];
      }
      disc.coefficients[1] = (1.0 / t) * ((w - z) - rest);
    };
    return detail::solve_free_coefficients(spec, proto, fix_c1, opt, inner_budget,
                                           evals, rng, warm);
  };

  auto pack_free = [](const AnalyticDisc& disc) {
    std::vector<double> x;
    for (int j = 2; j <= disc.degree(); ++j) {
      x.push_back(disc.coefficients[j][0].real());
      x.push_back(disc.coefficients[j][0].imag());
      x.push_back(disc.coefficients[j][1].real());
      x.push_back(disc.coefficients[j][1].imag());
    }
    return x;
  };

  const double big = 1e6;
  std::vector<double> warm;  // free coefficients of the current best witness
  auto cost = [&](double t, int d, int inner_budget) {
    const std::vector<double>* ws = warm.empty() ? nullptr : &warm;
    std::vector<double> padded;
    if (ws && static_cast<int>(ws->size()) < 4 * (d - 1)) {
      padded = *ws;
      padded.resize(4 * (d - 1), 0.0);
      ws = &padded;
    }
    detail::InnerResult r = inner(t, d, ws, inner_budget);
    if (r.feasible) {
      double val = std::atanh(t);
      if (val < out.value) {
        // accept only densely certified witnesses; the optimizer samples the
        // boundary more coarsely and can overshoot between its sample points
        FeasibilityReport cert = disc_feasible(r.disc, spec, 4 * opt.boundary_samples, opt.margin);
        evals += 4;
        if (!cert.feasible) return big + cert.worst_slack + opt.margin;
        out.value = val;
        out.found = true;
        out.witness = r.disc;
        out.t = t;
        warm = pack_free(r.disc);
      }
      return val;
    }
    return big + r.penalty;
  };

  int weight_sum = 0;
  for (int d = 1; d <= degree; ++d) weight_sum += detail::degree_weight(d);
  for (int d = 1; d <= degree; ++d) {
    int degree_budget = budget * detail::degree_weight(d) / weight_sum;
    int golden_iters = d == 1 ? 48 : 28;
    int inner_budget =
        d == 1 ? 1 : std::max(40 * (d - 1), degree_budget / (golden_iters + 6));
    double lo = t_lo, hi;
    if (out.found && d > 1) {
      // the previous witness (warm start) certifies the right endpoint
      hi = out.t;
    } else {
      // bracket: expand upward from the Caratheodory bound until feasible
      hi = t_lo;
      bool bracketed = false;
      for (double step = std::max(1e-6, 0.05 * (1.0 - t_lo)); hi < 1.0 - 1e-9; step *= 2.0) {
        hi = std::min(1.0 - 1e-9, hi + step);
        if (cost(hi, d, inner_budget) < big) { bracketed = true; break; }
      }
      if (!bracketed) {
        if (!out.found) out.diagnostics = "no feasible disc found at degree " + std::to_string(d);
        continue;
      }
    }
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = cost(x1, d, inner_budget), f2 = cost(x2, d, inner_budget);
    for (int it = 0; it < golden_iters && b - a > 1e-10 && evals < budget; ++it) {
      if (f1 <= f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - phi * (b - a);
        f1 = cost(x1, d, inner_budget);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + phi * (b - a);
        f2 = cost(x2, d, inner_budget);
      }
    }
  }
  out.budget_used = evals;
  if (out.found) {
    FeasibilityReport cert = disc_feasible(out.witness, spec, 4 * opt.boundary_samples, opt.margin);
    out.worst_slack = cert.worst_slack;
    if (!cert.feasible) {
      out.diagnostics = "witness failed dense certification (slack " +
                        std::to_string(cert.worst_slack) + ")";
    }
  } else if (out.diagnostics.empty()) {
    out.diagnostics = "no feasible disc found within budget";
  }
  return out;
}

// Upper bound for the Kobayashi metric: minimize alpha > 0 over feasible
// discs with f(0) = p and f'(0) = X / alpha.
inline LempertBound kobayashi_metric_upper(const DomainSpec& spec, const C2& p, const C2& X,
                                           int degree = 1, int budget = 20000,
                                           std::uint64_t seed = 1) {
  require_member(spec, p, "p");
  if (norm2(X) == 0.0) throw domain_error("Kobayashi metric bound needs a nonzero vector");
  double gamma = caratheodory_metric(spec, p, X);
  detail::PenaltyOptions opt;
  std::mt19937_64 rng(seed);
  int evals = 0;
  LempertBound out;

  auto inner = [&](double alpha, int d, const std::vector<double>* warm, int inner_budget) {
    AnalyticDisc proto;
    proto.coefficients.assign(d + 1, C2{0.0, 0.0});
    proto.coefficients[0] = p;
    auto fix_c1 = [&, alpha](AnalyticDisc& disc) {
      disc.coefficients[1] = (1.0 / alpha) * X;
    };
    return detail::solve_free_coefficients(spec, proto, fix_c1, opt, inner_budget,
                                           evals, rng, warm);
  };

  const double big = 1e6;
  std::vector<double> warm;
  auto pack_free = [](const AnalyticDisc& disc) {
    std::vector<double> x;
    for (int j = 2; j <= disc.degree(); ++j) {
      x.push_back(disc.coefficients[j][0].real());
      x.push_back(disc.coefficients[j][0].imag());
      x.push_back(disc.coefficients[j][1].real());
      x.push_back(disc.coefficients[j][1].imag());
    }
    return x;
  };
  auto cost = [&](double alpha, int d, int inner_budget) {
    const std::vector<double>* ws = warm.empty() ? nullptr : &warm;
    std::vector<double> padded;
    if (ws && static_cast<int>(ws->size()) < 4 * (d - 1)) {
      padded = *ws;
      padded.resize(4 * (d - 1), 0.0);
      ws = &padded;
    }
    detail::InnerResult r = inner(alpha, d, ws, inner_budget);
    if (r.feasible) {
      if (alpha < out.value) {
        FeasibilityReport cert = disc_feasible(r.disc, spec, 4 * opt.boundary_samples, opt.margin);
        evals += 4;
        if (!cert.feasible) return big + cert.worst_slack + opt.margin;
        out.value = alpha;
        out.found = true;
        out.witness = r.disc;
        warm = pack_free(r.disc);
      }
      return alpha;
    }
    return big + r.penalty;
  };

  int weight_sum = 0;
  for (int d = 1; d <= degree; ++d) weight_sum += detail::degree_weight(d);
  for (int d = 1; d <= degree; ++d) {
    int degree_budget = budget * detail::degree_weight(d) / weight_sum;
    int golden_iters = d == 1 ? 48 : 28;
    int inner_budget =
        d == 1 ? 1 : std::max(40 * (d - 1), degree_budget / (golden_iters + 6));
    double lo = gamma, hi;
    if (out.found && d > 1) {
      hi = out.value;
    } else {
      hi = gamma;
      bool bracketed = false;
      for (double step = std::max(1e-9, 0.05 * gamma); hi < 64.0 * gamma; step *= 2.0) {
        hi += step;
        if (cost(hi, d, inner_budget) < big) { bracketed = true; break; }
      }
      if (!bracketed) {
        if (!out.found) out.diagnostics = "no feasible disc found at degree " + std::to_string(d);
        continue;
      }
    }
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = cost(x1, d, inner_budget), f2 = cost(x2, d, inner_budget);
    for (int it = 0; it < golden_iters && b - a > 1e-10 * std::max(1.0, gamma) && evals < budget;
         ++it) {
      if (f1 <= f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - phi * (b - a);
        f1 = cost(x1, d, inner_budget);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + phi * (b - a);
        f2 = cost(x2, d, inner_budget);
      }
    }
  }
  out.budget_used = evals;
  if (out.found) {
    FeasibilityReport cert = disc_feasible(out.witness, spec, 4 * opt.boundary_samples, opt.margin);
    out.worst_slack = cert.worst_slack;
  } else if (out.diagnostics.empty()) {
    out.diagnostics = "no feasible disc found within budget";
  }
  return out;
}

struct GapReport {
  double caratheodory = 0.0;
  LempertBound upper;
  double gap = std::numeric_limits<double>::infinity();
};

// c <= l always; a small nonnegative gap numerically witnesses the Lempert
// property.  A negative gap beyond rounding is a bug signal, never clamped.
inline GapReport lempert_gap(const DomainSpec& spec, const C2& z, const C2& w,
                             int degree = 1, int budget = 20000, std::uint64_t seed = 1) {
  GapReport rep;
  rep.caratheodory = caratheodory_distance(spec, z, w);
  rep.upper = lempert_upper(spec, z, w, degree, budget, seed);
  if (rep.upper.found) rep.gap = rep.upper.value - rep.caratheodory;
  return rep;
}

}  // namespace univmet
