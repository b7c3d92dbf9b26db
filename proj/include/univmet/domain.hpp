// Domains in C^2 carrying a finite Caratheodory universal set, membership
// tests, and the Caratheodory distance/metric realized as a max over the set.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "univmet/complex2.hpp"
#include "univmet/disc.hpp"
#include "univmet/expr.hpp"

namespace univmet {

struct UniversalMember {
  ExprPtr F;    // holomorphic map into the unit disc
  ExprPtr dF1;  // d/dz1 F
  ExprPtr dF2;  // d/dz2 F
  std::string source;  // the expression text it was built from
};

struct UniversalSet {
  std::vector<UniversalMember> members;
  std::size_t size() const { return members.size(); }
};

enum class DomainKind { Bidisc, Dab, Custom };

struct DomainSpec {
  DomainKind kind = DomainKind::Bidisc;
  cplx a{}, b{};                    // Dab parameters
  ConstantTable constants;          // Custom constants
  std::vector<ExprPtr> membership;  // Custom: each constraint is |e(z)| < 1
  UniversalSet universal_set;
};

namespace detail {

inline UniversalMember make_member(const std::string& src, const ConstantTable& tab) {
  UniversalMember m;
  m.F = parse(src, tab);
  auto rep = validate_holomorphic(m.F);
  if (!rep.ok)
    throw parse_error("universal-set member '" + src + "' conjugates a variable");
  m.dF1 = d_dz(m.F, 1);
  m.dF2 = d_dz(m.F, 2);
  m.source = src;
  return m;
}

}  // namespace detail

inline DomainSpec make_bidisc() {
  DomainSpec spec;
  spec.kind = DomainKind::Bidisc;
  spec.universal_set.members = {detail::make_member("z1", {}),
                                detail::make_member("z2", {})};
  return spec;
}

// D_{a,b} = {z in D^2 : |a z1 + b z2 - z1 z2| < |conj(b) z1 + conj(a) z2 - 1|}.
// The same denominator is used for F3, so D_{a,b} = {z in D^2 : |F3(z)| < 1}
// holds identically.
inline DomainSpec make_dab(cplx a, cplx b) {
  double ma = std::abs(a), mb = std::abs(b);
  if (!(ma < mb + 1.0))
    throw domain_error("triangle condition failed: |a| < |b| + 1 requires " +
                       std::to_string(ma) + " < " + std::to_string(mb + 1.0));
  if (!(mb < ma + 1.0))
    throw domain_error("triangle condition failed: |b| < |a| + 1 requires " +
                       std::to_string(mb) + " < " + std::to_string(ma + 1.0));
  if (!(1.0 < ma + mb))
    throw domain_error("triangle condition failed: 1 < |a| + |b| requires 1 < " +
                       std::to_string(ma + mb));
  DomainSpec spec;
  spec.kind = DomainKind::Dab;
  spec.a = a;
  spec.b = b;
  ConstantTable tab{{"a", a}, {"b", b}};
  spec.constants = tab;
  spec.universal_set.members = {
      detail::make_member("z1", tab), detail::make_member("z2", tab),
      detail::make_member("(a*z1+b*z2-z1*z2)/(conj(b)*z1+conj(a)*z2-1)", tab)};
  return spec;
}

inline DomainSpec make_custom(const ConstantTable& constants,
                              const std::vector<std::string>& members,
                              const std::vector<std::string>& membership) {
  if (members.empty()) throw parse_error("custom domain needs at least one member");
  if (membership.empty()) throw parse_error("custom domain needs at least one membership constraint");
  DomainSpec spec;
  spec.kind = DomainKind::Custom;
  spec.constants = constants;
  for (const auto& s : members)
    spec.universal_set.members.push_back(detail::make_member(s, constants));
  for (const auto& s : membership) {
    ExprPtr e = parse(s, constants);
    spec.membership.push_back(e);
  }
  return spec;
}

namespace detail {

inline cplx dab_numerator(const DomainSpec& s, const C2& z) {
  return s.a * z[0] + s.b * z[1] - z[0] * z[1];
}
inline cplx dab_denominator(const DomainSpec& s, const C2& z) {
  return std::conj(s.b) * z[0] + std::conj(s.a) * z[1] - 1.0;
}

}  // namespace detail

inline bool contains(const DomainSpec& spec, const C2& z) {
  switch (spec.kind) {
    case DomainKind::Bidisc:
      return std::abs(z[0]) < 1.0 && std::abs(z[1]) < 1.0;
    case DomainKind::Dab: {
      if (!(std::abs(z[0]) < 1.0 && std::abs(z[1]) < 1.0)) return false;
      // strict; when the denominator vanishes |N| < 0 is impossible
      return std::abs(detail::dab_numerator(spec, z)) <
             std::abs(detail::dab_denominator(spec, z));
    }
    case DomainKind::Custom:
      for (const auto& e : spec.membership) {
        try {
          if (!(std::abs(eval(e, z)) < 1.0)) return false;
        } catch (const error&) {
          return false;  // pole of a membership constraint: not in the domain
        }
      }
      return true;
  }
  return false;
}

inline void require_member(const DomainSpec& spec, const C2& z, const char* name) {
  if (!contains(spec, z))
    throw domain_error(std::string(name) + " = (" + std::to_string(z[0].real()) + "," +
                       std::to_string(z[0].imag()) + ") (" + std::to_string(z[1].real()) +
                       "," + std::to_string(z[1].imag()) + ") is not in the domain");
}

// c(z, w) = max_i rho(F_i(z), F_i(w)).
inline double caratheodory_distance(const DomainSpec& spec, const C2& z, const C2& w) {
  require_member(spec, z, "z");
  require_member(spec, w, "w");
  double best = 0.0;
  for (const auto& m : spec.universal_set.members) {
    UnitDiscPoint fz(eval(m.F, z)), fw(eval(m.F, w));
    best = std::max(best, poincare_distance(fz, fw));
  }
  return best;
}

// gamma(p; X) = max_i |dF_i(p) . X| / (1 - |F_i(p)|^2).
inline double caratheodory_metric(const DomainSpec& spec, const C2& p, const C2& X) {
  require_member(spec, p, "p");
  double best = 0.0;
  for (const auto& m : spec.universal_set.members) {
    cplx fp = eval(m.F, p);
    cplx d = eval(m.dF1, p) * X[0] + eval(m.dF2, p) * X[1];
    best = std::max(best, std::abs(d) / (1.0 - std::norm(fp)));
  }
  return best;
}

}  // namespace univmet
