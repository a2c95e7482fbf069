#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dsbranch/blattner.hpp"
#include "dsbranch/error.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"

namespace dsbranch {

enum class ConeClass { Outside, Boundary, RelativeInterior };

inline std::string_view cone_class_name(ConeClass c) {
  switch (c) {
    case ConeClass::Outside: return "Outside";
    case ConeClass::Boundary: return "Boundary";
    case ConeClass::RelativeInterior: return "RelativeInterior";
  }
  return "?";
}

// H-description of cone(generators) in coordinate space: f . x == 0 for every
// equality and f . x >= 0 for every inequality. No inequality vanishes on
// the whole cone, so relative-interior points satisfy all of them strictly.
struct FacetDescription {
  std::vector<std::vector<Rational>> equalities;
  std::vector<std::vector<Rational>> inequalities;
};

namespace detail {

struct Constraint {
  std::vector<Rational> coef;
  bool equality = false;
};

inline bool is_zero_form(const std::vector<Rational>& v, std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i)
    if (v[i] != 0) return false;
  return true;
}

// Scales so the first nonzero entry is +-1 (inequalities keep their sign).
inline void normalize(Constraint& c) {
  for (const auto& x : c.coef) {
    if (x == 0) continue;
    Rational s = c.equality ? x : abs(x);
    for (auto& y : c.coef) y /= s;
    return;
  }
}

inline std::string constraint_key(const Constraint& c) {
  std::string k = c.equality ? "=" : ">";
  for (const auto& x : c.coef) k += x.get_str() + ",";
  return k;
}

inline void dedupe(std::vector<Constraint>& cs) {
  std::set<std::string> seen;
  std::vector<Constraint> out;
  for (auto& c : cs) {
    if (is_zero_form(c.coef, c.coef.size())) continue;
    normalize(c);
    if (seen.insert(constraint_key(c)).second) out.push_back(std::move(c));
  }
  cs = std::move(out);
}

}  // namespace detail

// Projects {(x, c) : x = sum c_j g_j, c >= 0} onto x by exact Fourier-Motzkin
// elimination of the c variables (equalities are used for substitution first).
inline FacetDescription facet_description(const std::vector<Weight>& generators, std::size_t rank) {
  std::size_t m = generators.size();
  std::size_t vars = rank + m;
  std::vector<detail::Constraint> cs;
  for (std::size_t i = 0; i < rank; ++i) {
    detail::Constraint c{std::vector<Rational>(vars, Rational(0)), true};
    c.coef[i] = 1;
    for (std::size_t j = 0; j < m; ++j) c.coef[rank + j] = -generators[j][i];
    cs.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < m; ++j) {
    detail::Constraint c{std::vector<Rational>(vars, Rational(0)), false};
    c.coef[rank + j] = 1;
    cs.push_back(std::move(c));
  }

  for (std::size_t v = rank; v < vars; ++v) {
    auto eq = std::find_if(cs.begin(), cs.end(), [&](const auto& c) { return c.equality && c.coef[v] != 0; });
    if (eq != cs.end()) {
      detail::Constraint pivot = *eq;
      cs.erase(eq);
      for (auto& c : cs) {
        if (c.coef[v] == 0) continue;
        Rational f = c.coef[v] / pivot.coef[v];
        for (std::size_t k = 0; k < vars; ++k) c.coef[k] -= f * pivot.coef[k];
      }
    } else {
      std::vector<detail::Constraint> next, pos, neg;
      for (auto& c : cs) {
        if (c.coef[v] > 0 && !c.equality) pos.push_back(std::move(c));
        else if (c.coef[v] < 0 && !c.equality) neg.push_back(std::move(c));
        else next.push_back(std::move(c));
      }
      for (const auto& p : pos)
        for (const auto& q : neg) {
          detail::Constraint comb{std::vector<Rational>(vars), false};
          Rational fp = -q.coef[v], fq = p.coef[v];
          for (std::size_t k = 0; k < vars; ++k) comb.coef[k] = fp * p.coef[k] + fq * q.coef[k];
          next.push_back(std::move(comb));
        }
      cs = std::move(next);
    }
    detail::dedupe(cs);
  }

  FacetDescription out;
  for (auto& c : cs) {
    std::vector<Rational> f(c.coef.begin(), c.coef.begin() + rank);
    bool vanishes = true;
    for (const auto& g : generators)
      if (dot(f, g) != 0) vanishes = false;
    if (c.equality || vanishes) out.equalities.push_back(std::move(f));
    else out.inequalities.push_back(std::move(f));
  }
  return out;
}

inline ConeClass classify_by_facets(const FacetDescription& facets, const Weight& v) {
  for (const auto& f : facets.equalities)
    if (dot(f, v) != 0) return ConeClass::Outside;
  bool strict = true;
  for (const auto& f : facets.inequalities) {
    Rational s = dot(f, v);
    if (s < 0) return ConeClass::Outside;
    if (s == 0) strict = false;
  }
  return strict ? ConeClass::RelativeInterior : ConeClass::Boundary;
}

namespace detail {

// Dense two-phase simplex with Bland's rule: maximize obj . x subject to
// A x = b, x >= 0. Returns nullopt when infeasible; the problems posed here
// are bounded.
inline std::optional<Rational> simplex_maximize(Matrix a, std::vector<Rational> b, const std::vector<Rational>& obj) {
  std::size_t rows = a.size(), cols = obj.size();
  for (std::size_t i = 0; i < rows; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& x : a[i]) x = -x;
    }
    a[i].resize(cols + rows, Rational(0));
    a[i][cols + i] = 1;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  auto pivot = [&](std::size_t r, std::size_t c) {
    Rational p = a[r][c];
    for (auto& x : a[r]) x /= p;
    b[r] /= p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    basis[r] = c;
  };

  auto run = [&](const std::vector<Rational>& cost, std::size_t allowed) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed && !enter; ++j) {
        Rational d = cost[j];
        for (std::size_t i = 0; i < a.size(); ++i) d -= cost[basis[i]] * a[i][j];
        if (d > 0) enter = j;
      }
      if (!enter) return;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][*enter] <= 0) continue;
        Rational ratio = b[i] / a[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) throw std::logic_error("simplex: unbounded objective");
      pivot(*leave, *enter);
    }
  };

  std::vector<Rational> phase1(cols + rows, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) phase1[cols + i] = -1;
  run(phase1, cols + rows);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (basis[i] >= cols && b[i] != 0) return std::nullopt;

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < a.size();) {
    if (basis[i] < cols) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < cols && !col; ++j)
      if (a[i][j] != 0) col = j;
    if (col) {
      pivot(i, *col);
      ++i;
    } else {
      a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
      b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  std::vector<Rational> phase2(cols + rows, Rational(0));
  for (std::size_t j = 0; j < cols; ++j) phase2[j] = obj[j];
  run(phase2, cols);
  Rational value = 0;
  for (std::size_t i = 0; i < a.size(); ++i) value += phase2[basis[i]] * b[i];
  return value;
}

}  // namespace detail

// Decides v in cone(generators) by linear programming:
//   maximize e  s.t.  sum c_j g_j + e s = v,  e <= 1,  c, e >= 0
// with s = sum g_j, a relative-interior point. Infeasible means Outside; the
// optimum is positive exactly when v - e s stays in the cone for some e > 0,
// i.e. when v is a strictly positive combination.
inline ConeClass classify_by_lp(const std::vector<Weight>& generators, const Weight& v) {
  std::size_t n = v.rank(), m = generators.size();
  Weight s(n);
  for (const auto& g : generators) s += g;
  std::size_t cols = m + 2;  // c_1..c_m, e, slack
  Matrix a(n + 1, std::vector<Rational>(cols, Rational(0)));
  std::vector<Rational> b(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = generators[j][i];
    a[i][m] = s[i];
    b[i] = v[i];
  }
  a[n][m] = 1;
  a[n][m + 1] = 1;
  b[n] = 1;
  std::vector<Rational> obj(cols, Rational(0));
  obj[m] = 1;
  auto best = detail::simplex_maximize(std::move(a), std::move(b), obj);
  if (!best) return ConeClass::Outside;
  return *best > 0 ? ConeClass::RelativeInterior : ConeClass::Boundary;
}

// apex + cone(generators), the local model of the moment polyhedron at lambda.
struct ShiftedCone {
  Weight apex;
  std::vector<Weight> generators;
  std::size_t span_dim = 0;
  FacetDescription facets;
};

inline ShiftedCone make_shifted_cone(const Weight& apex, std::vector<Weight> generators) {
  Matrix rows;
  for (const auto& g : generators) {
    if (g.rank() != apex.rank()) throw Error(ErrorKind::DimensionMismatch, "generator has wrong length");
    rows.push_back(g.coords());
  }
  ShiftedCone cone{apex, std::move(generators), matrix_rank(rows), {}};
  cone.facets = facet_description(cone.generators, apex.rank());
  return cone;
}

// lambda + cone(R_n+); generators are polarized by construction.
inline ShiftedCone moment_cone(const HCParameter& param) {
  return make_shifted_cone(param.lambda, param.positive.r_n_plus);
}

inline ConeClass cone_membership(const ShiftedCone& cone, const Weight& xi) {
  return classify_by_facets(cone.facets, xi - cone.apex);
}

struct Anomaly {
  Weight mu;
  Coeff multiplicity = 0;
  ConeClass classification = ConeClass::Outside;
};

struct VanishingReport {
  std::vector<Anomaly> anomalies;
  std::size_t scanned = 0;
  std::size_t span_dim = 0;
};

// Flags every nonzero m_mu(lambda) whose mu + rho_c misses the relative
// interior of lambda + cone(R_n+).
inline VanishingReport vanishing_report(const HCParameter& param, const BranchingTable& table) {
  auto cone = moment_cone(param);
  VanishingReport report{{}, table.scanned, cone.span_dim};
  for (const auto& [mu, m] : table.canonical_entries()) {
    auto cls = cone_membership(cone, mu + param.compact.rho_c);
    if (cls != ConeClass::RelativeInterior) report.anomalies.push_back({mu, m, cls});
  }
  return report;
}

}  // namespace dsbranch
