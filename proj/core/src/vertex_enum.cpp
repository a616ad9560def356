#include "tropfw/vertex_enum.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>

#include "tropfw/lp.hpp"

namespace tropfw {

namespace {

struct Reduction {
  // x = point + sum_j t_j * basis_col(free[j]); pivot coordinates are affine
  // functions of the free ones.
  int full_dim = 0;
  std::vector<int> free_cols;
  std::vector<int> pivot_cols;
  RatMatrix pivot_expr;  // per pivot: coefficients over free cols
  RatVec pivot_const;
  bool infeasible = false;

  RatVec lift(const RatVec& t) const {
    RatVec x(full_dim);
    for (std::size_t j = 0; j < free_cols.size(); ++j) x[free_cols[j]] = t[j];
    for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
      Rational v = pivot_const[p];
      for (std::size_t j = 0; j < free_cols.size(); ++j)
        if (pivot_expr[p][j] != 0) v += pivot_expr[p][j] * t[j];
      x[pivot_cols[p]] = v;
    }
    return x;
  }
};

// Gaussian elimination on the equality rows.
Reduction reduce_equalities(const HPolytope& h) {
  Reduction red;
  red.full_dim = h.dim;
  RatMatrix eq;
  for (const auto& c : h.constraints) {
    if (c.kind != ConstraintKind::Equal) continue;
    RatVec row = c.coeffs;
    row.push_back(c.rhs);
    eq.push_back(std::move(row));
  }
  const int n = h.dim;
  std::vector<int> pivot_of_col(n, -1);
  std::size_t r = 0;
  for (int c = 0; c < n && r < eq.size(); ++c) {
    std::size_t piv = r;
    while (piv < eq.size() && eq[piv][c] == 0) ++piv;
    if (piv == eq.size()) continue;
    std::swap(eq[r], eq[piv]);
    const Rational p = eq[r][c];
    for (int j = c; j <= n; ++j) eq[r][j] /= p;
    for (std::size_t i = 0; i < eq.size(); ++i) {
      if (i == r || eq[i][c] == 0) continue;
      const Rational f = eq[i][c];
      for (int j = c; j <= n; ++j) eq[i][j] -= f * eq[r][j];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (std::size_t i = r; i < eq.size(); ++i) {
    if (eq[i][n] != 0) {
      red.infeasible = true;
      return red;
    }
  }
  for (int c = 0; c < n; ++c) {
    if (pivot_of_col[c] < 0)
      red.free_cols.push_back(c);
    else
      red.pivot_cols.push_back(c);
  }
  for (int c : red.pivot_cols) {
    const RatVec& row = eq[pivot_of_col[c]];
    RatVec expr(red.free_cols.size());
    for (std::size_t j = 0; j < red.free_cols.size(); ++j) expr[j] = -row[red.free_cols[j]];
    red.pivot_expr.push_back(std::move(expr));
    red.pivot_const.push_back(row[n]);
  }
  return red;
}

struct Row {
  RatVec a;
  Rational b;
};

// Inequality in x-space rewritten over the free coordinates.
std::optional<Row> transform_row(const Reduction& red, const RatVec& coeffs, const Rational& rhs) {
  Row out;
  out.a.assign(red.free_cols.size(), Rational(0));
  out.b = rhs;
  for (std::size_t j = 0; j < red.free_cols.size(); ++j) out.a[j] = coeffs[red.free_cols[j]];
  for (std::size_t p = 0; p < red.pivot_cols.size(); ++p) {
    const Rational& c = coeffs[red.pivot_cols[p]];
    if (c == 0) continue;
    out.b -= c * red.pivot_const[p];
    for (std::size_t j = 0; j < red.free_cols.size(); ++j)
      if (red.pivot_expr[p][j] != 0) out.a[j] += c * red.pivot_expr[p][j];
  }
  if (is_zero_vec(out.a)) {
    if (out.b < 0) return std::nullopt;  // identically false
    out.a.clear();                       // identically true, marker
    return out;
  }
  return out;
}

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& bits, std::size_t i) { bits[i >> 6] |= std::uint64_t(1) << (i & 63); }

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

int popcount_and(const Bits& a, const Bits& b) {
  int n = 0;
  for (std::size_t w = 0; w < a.size(); ++w) n += __builtin_popcountll(a[w] & b[w]);
  return n;
}

struct DDVertex {
  RatVec t;
  Bits tight;
  RatVec slack;  // aligned with the full row array
  bool alive = true;
};

VPolytope finish(const Reduction& red, std::vector<DDVertex>& verts) {
  VPolytope out;
  RatMatrix tpoints;
  for (auto& v : verts)
    if (v.alive) tpoints.push_back(std::move(v.t));
  if (tpoints.empty()) {
    out.affine_dim = -1;
    return out;
  }
  out.affine_dim = affine_dimension(tpoints);
  for (const auto& t : tpoints) out.vertices.push_back(red.lift(t));
  sort_points(out.vertices);
  return out;
}

VPolytope single_point_result(const Reduction& red, const RatVec& t,
                              const std::vector<Row>& rows) {
  VPolytope out;
  for (const auto& r : rows) {
    if (r.a.empty()) continue;
    if (dot(r.a, t) > r.b) {
      out.affine_dim = -1;
      return out;
    }
  }
  out.vertices.push_back(red.lift(t));
  out.affine_dim = 0;
  return out;
}

VPolytope enumerate_impl(const HPolytope& h, const BoxHint* box) {
  if (!h.well_formed()) throw std::invalid_argument("enumerate_vertices: malformed polytope");
  const auto t0 = std::chrono::steady_clock::now();
  struct CounterGuard {
    std::chrono::steady_clock::time_point start;
    ~CounterGuard() {
      auto& pc = perf_counters();
      pc.enum_calls += 1;
      pc.enum_micros += std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    }
  } guard{t0};

  Reduction red = reduce_equalities(h);
  VPolytope empty;
  empty.affine_dim = -1;
  if (red.infeasible) return empty;

  const std::size_t k = red.free_cols.size();

  std::vector<Row> rows;
  for (const auto& c : h.constraints) {
    if (c.kind != ConstraintKind::LessEq) continue;
    auto r = transform_row(red, c.coeffs, c.rhs);
    if (!r) return empty;
    if (!r->a.empty()) rows.push_back(std::move(*r));
  }
  if (box) {
    // Bounds on pivot coordinates become ordinary valid cuts in t-space.
    for (std::size_t p = 0; p < red.pivot_cols.size(); ++p) {
      const int c = red.pivot_cols[p];
      RatVec unit(h.dim, Rational(0));
      unit[c] = 1;
      auto up = transform_row(red, unit, box->hi[c]);
      if (!up) return empty;
      if (!up->a.empty()) rows.push_back(std::move(*up));
      unit[c] = -1;
      auto lo = transform_row(red, unit, -box->lo[c]);
      if (!lo) return empty;
      if (!lo->a.empty()) rows.push_back(std::move(*lo));
    }
  }

  if (k == 0) return single_point_result(red, {}, rows);

  // Per-coordinate bounds: free, when the caller knows them; otherwise by LP,
  // which doubles as the feasibility and boundedness check.
  RatVec lo(k), hi(k);
  if (box) {
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = box->lo[red.free_cols[j]];
      hi[j] = box->hi[red.free_cols[j]];
    }
  } else {
    HPolytope sys(static_cast<int>(k));
    for (const auto& r : rows) sys.add_le(r.a, r.b);
    for (std::size_t j = 0; j < k; ++j) {
      LPProblem p;
      p.constraints = sys;
      p.objective.assign(k, Rational(0));
      p.objective[j] = 1;
      LPResult down = lp_solve(p);
      if (down.status == LPStatus::Infeasible) return empty;
      if (down.status == LPStatus::Unbounded) throw UnboundedPolytopeError();
      lo[j] = down.value;
      p.objective[j] = -1;
      LPResult up = lp_solve(p);
      if (up.status == LPStatus::Unbounded) throw UnboundedPolytopeError();
      hi[j] = -up.value;
    }
  }

  // Enclosing simplex: t_j >= lo_j plus sum_j (t_j - lo_j) <= U.
  Rational spread = 0;
  for (std::size_t j = 0; j < k; ++j) spread += hi[j] - lo[j];
  if (spread == 0) return single_point_result(red, lo, rows);

  std::vector<Row> all_rows;
  for (std::size_t j = 0; j < k; ++j) {
    Row r;
    r.a.assign(k, Rational(0));
    r.a[j] = -1;
    r.b = -lo[j];
    all_rows.push_back(std::move(r));
  }
  {
    Row r;
    r.a.assign(k, Rational(1));
    r.b = spread;
    for (std::size_t j = 0; j < k; ++j) r.b += lo[j];
    all_rows.push_back(std::move(r));
  }
  const std::size_t n_simplex = all_rows.size();
  for (auto& r : rows) all_rows.push_back(std::move(r));
  const std::size_t n_rows = all_rows.size();
  const std::size_t words = (n_rows + 63) / 64;

  std::vector<char> inserted(n_rows, 0);
  for (std::size_t i = 0; i < n_simplex; ++i) inserted[i] = 1;

  std::vector<DDVertex> verts;
  auto make_vertex = [&](RatVec t) {
    DDVertex v;
    v.t = std::move(t);
    v.slack.resize(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) v.slack[i] = all_rows[i].b - dot(all_rows[i].a, v.t);
    v.tight.assign(words, 0);
    for (std::size_t i = 0; i < n_rows; ++i)
      if (inserted[i] && v.slack[i] == 0) set_bit(v.tight, i);
    return v;
  };
  verts.push_back(make_vertex(lo));
  for (std::size_t j = 0; j < k; ++j) {
    RatVec t = lo;
    t[j] += spread;
    verts.push_back(make_vertex(std::move(t)));
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = n_simplex; i < n_rows; ++i) pending.push_back(i);

  while (!pending.empty()) {
    // Insert the row cutting off the most live vertices; rows that cut
    // nothing can never cut later, so they are flushed in one pass.
    std::size_t best = 0;
    int best_cuts = -1;
    for (std::size_t pi = 0; pi < pending.size(); ++pi) {
      int cuts = 0;
      for (const auto& v : verts)
        if (v.alive && sgn(v.slack[pending[pi]]) < 0) ++cuts;
      if (cuts > best_cuts) {
        best_cuts = cuts;
        best = pi;
      }
    }
    if (best_cuts == 0) {
      for (std::size_t r : pending) {
        inserted[r] = 1;
        for (auto& v : verts)
          if (v.alive && v.slack[r] == 0) set_bit(v.tight, r);
      }
      break;
    }

    const std::size_t r = pending[best];
    pending.erase(pending.begin() + best);
    inserted[r] = 1;

    std::vector<std::size_t> in, on, out_idx;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (!verts[i].alive) continue;
      const int s = sgn(verts[i].slack[r]);
      if (s > 0)
        in.push_back(i);
      else if (s == 0)
        on.push_back(i);
      else
        out_idx.push_back(i);
    }

    std::vector<DDVertex> created;
    const int need = static_cast<int>(k) - 1;
    for (std::size_t p : in) {
      for (std::size_t q : out_idx) {
        Bits common(words);
        bool enough = popcount_and(verts[p].tight, verts[q].tight) >= need;
        if (!enough) continue;
        for (std::size_t w = 0; w < words; ++w)
          common[w] = verts[p].tight[w] & verts[q].tight[w];
        bool edge = true;
        for (std::size_t u = 0; u < verts.size(); ++u) {
          if (!verts[u].alive || u == p || u == q) continue;
          if (subset_of(common, verts[u].tight)) {
            edge = false;
            break;
          }
        }
        if (!edge) continue;

        const Rational& sp = verts[p].slack[r];
        const Rational& sq = verts[q].slack[r];
        const Rational den = sp - sq;  // > 0
        DDVertex w;
        w.t.resize(k);
        for (std::size_t j = 0; j < k; ++j)
          w.t[j] = (sp * verts[q].t[j] - sq * verts[p].t[j]) / den;
        w.slack.resize(n_rows);
        for (std::size_t i = 0; i < n_rows; ++i)
          w.slack[i] = (sp * verts[q].slack[i] - sq * verts[p].slack[i]) / den;
        w.tight.assign(words, 0);
        for (std::size_t i = 0; i < n_rows; ++i)
          if (inserted[i] && w.slack[i] == 0) set_bit(w.tight, i);
        created.push_back(std::move(w));
      }
    }
    for (std::size_t q : out_idx) verts[q].alive = false;
    for (std::size_t o : on) set_bit(verts[o].tight, r);
    for (auto& w : created) verts.push_back(std::move(w));

    std::size_t alive = 0;
    for (const auto& v : verts)
      if (v.alive) ++alive;
    if (alive == 0) return empty;
    if (verts.size() > 64 && 2 * alive < verts.size()) {
      std::erase_if(verts, [](const DDVertex& v) { return !v.alive; });
    }
  }

  return finish(red, verts);
}

}  // namespace

VPolytope enumerate_vertices(const HPolytope& h) { return enumerate_impl(h, nullptr); }

VPolytope enumerate_vertices(const HPolytope& h, const BoxHint& box) {
  if (static_cast<int>(box.lo.size()) != h.dim || static_cast<int>(box.hi.size()) != h.dim)
    throw std::invalid_argument("enumerate_vertices: box does not match dimension");
  return enumerate_impl(h, &box);
}

std::vector<RatVec> hull_vertices(std::vector<RatVec> points) {
  sort_points(points);
  if (points.size() <= 1) return points;
  const int dim = static_cast<int>(points[0].size());

  // p is a vertex iff p lies outside conv of the others; dropping an
  // interior point never changes the hull, so the scan may shrink the set
  // as it goes.
  for (std::size_t i = 0; i < points.size();) {
    const std::size_t others = points.size() - 1;
    HPolytope sys(static_cast<int>(others));
    for (int c = 0; c < dim; ++c) {
      RatVec row(others);
      std::size_t col = 0;
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == i) continue;
        row[col++] = points[j][c];
      }
      sys.add_eq(std::move(row), points[i][c]);
    }
    sys.add_eq(RatVec(others, Rational(1)), Rational(1));
    for (std::size_t j = 0; j < others; ++j) {
      RatVec row(others, Rational(0));
      row[j] = -1;
      sys.add_le(std::move(row), Rational(0));
    }
    if (lp_feasible(sys)) {
      points.erase(points.begin() + i);
    } else {
      ++i;
    }
  }
  return points;
}

}  // namespace tropfw
