#include "tropfw/projection.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropfw {

namespace {

// Scales so the leading nonzero coefficient has absolute value 1. Positive
// scaling only for inequalities; equalities may flip sign too.
void normalize_row(LinearConstraint& c) {
  Rational lead = 0;
  for (const auto& x : c.coeffs) {
    if (x != 0) {
      lead = x;
      break;
    }
  }
  if (lead == 0) return;
  Rational s = c.kind == ConstraintKind::Equal ? lead : abs(lead);
  for (auto& x : c.coeffs) x /= s;
  c.rhs /= s;
}

bool row_less(const LinearConstraint& a, const LinearConstraint& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.rhs != b.rhs) return a.rhs < b.rhs;
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                      b.coeffs.end(),
                                      [](const Rational& x, const Rational& y) { return x < y; });
}

void dedup(std::vector<LinearConstraint>& rows) {
  for (auto& r : rows) normalize_row(r);
  std::sort(rows.begin(), rows.end(), row_less);
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const LinearConstraint& a, const LinearConstraint& b) {
                           return a.kind == b.kind && a.rhs == b.rhs && a.coeffs == b.coeffs;
                         }),
             rows.end());
}

}  // namespace

HPolytope project_out(const HPolytope& h, const std::set<int>& var_indices) {
  if (!h.well_formed()) throw std::invalid_argument("project_out: malformed polytope");
  for (int v : var_indices)
    if (v < 0 || v >= h.dim) throw std::invalid_argument("project_out: variable index out of range");

  std::vector<LinearConstraint> rows = h.constraints;

  for (int v : var_indices) {
    // Substitution via an equality pivot when one is available.
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].kind == ConstraintKind::Equal && rows[i].coeffs[v] != 0) {
        piv = i;
        break;
      }
    }
    if (piv != rows.size()) {
      LinearConstraint p = rows[piv];
      rows.erase(rows.begin() + piv);
      for (auto& r : rows) {
        if (r.coeffs[v] == 0) continue;
        Rational f = r.coeffs[v] / p.coeffs[v];
        for (int j = 0; j < h.dim; ++j) r.coeffs[j] -= f * p.coeffs[j];
        r.rhs -= f * p.rhs;
      }
      continue;
    }

    std::vector<LinearConstraint> uppers, lowers, rest;
    for (auto& r : rows) {
      if (r.coeffs[v] > 0)
        uppers.push_back(std::move(r));
      else if (r.coeffs[v] < 0)
        lowers.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    for (const auto& up : uppers) {
      for (const auto& lo : lowers) {
        LinearConstraint combo;
        combo.kind = ConstraintKind::LessEq;
        combo.coeffs.resize(h.dim);
        const Rational cu = up.coeffs[v];
        const Rational cl = -lo.coeffs[v];
        for (int j = 0; j < h.dim; ++j)
          combo.coeffs[j] = up.coeffs[j] / cu + lo.coeffs[j] / cl;
        combo.rhs = up.rhs / cu + lo.rhs / cl;
        rest.push_back(std::move(combo));
      }
    }
    rows = std::move(rest);
    dedup(rows);
  }

  // Drop vacuous rows, keep an explicitly false one so an empty input stays
  // empty after projection.
  std::vector<LinearConstraint> kept;
  for (auto& r : rows) {
    bool zero = is_zero_vec(r.coeffs);
    if (zero) {
      bool vacuous = r.kind == ConstraintKind::Equal ? r.rhs == 0 : r.rhs >= 0;
      if (vacuous) continue;
    }
    kept.push_back(std::move(r));
  }

  HPolytope out(h.dim - static_cast<int>(var_indices.size()));
  for (auto& r : kept) {
    RatVec coeffs;
    coeffs.reserve(out.dim);
    for (int j = 0; j < h.dim; ++j)
      if (!var_indices.count(j)) coeffs.push_back(std::move(r.coeffs[j]));
    LinearConstraint c{std::move(coeffs), std::move(r.rhs), r.kind};
    out.constraints.push_back(std::move(c));
  }
  dedup(out.constraints);
  return out;
}

}  // namespace tropfw
