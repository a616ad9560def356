#include "tropfw/treespace.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "tropfw/random.hpp"
#include "tropfw/vertex_enum.hpp"

namespace tropfw {

int pair_count(int leaves) { return leaves * (leaves - 1) / 2; }

int pair_index(int i, int j, int leaves) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= leaves || i == j) throw std::invalid_argument("pair_index: bad leaf pair");
  // pairs (0,*) first, then (1,*), ...
  return i * leaves - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_from_index(int index, int leaves) {
  for (int i = 0; i < leaves; ++i) {
    const int block = leaves - i - 1;
    if (index < block) return {i, i + 1 + index};
    index -= block;
  }
  throw std::invalid_argument("pair_from_index: index out of range");
}

int TreeTopology::lca_merge(int i, int j) const {
  const std::uint32_t bi = std::uint32_t(1) << i;
  const std::uint32_t bj = std::uint32_t(1) << j;
  for (std::size_t t = 0; t < merges.size(); ++t) {
    const std::uint32_t c = merges[t].cluster();
    if ((c & bi) && (c & bj)) return static_cast<int>(t);
  }
  throw std::logic_error("TreeTopology: leaves never joined");
}

int TreeTopology::parent_merge(int t) const {
  const std::uint32_t c = merges[t].cluster();
  for (std::size_t p = t + 1; p < merges.size(); ++p) {
    if (merges[p].left == c || merges[p].right == c) return static_cast<int>(p);
  }
  return -1;
}

std::optional<TripleViolation> find_ultrametric_violation(const RatVec& v, int leaves) {
  if (static_cast<int>(v.size()) != pair_count(leaves))
    throw std::invalid_argument("ultrametric check: wrong vector length");
  for (int i = 0; i < leaves; ++i) {
    for (int j = i + 1; j < leaves; ++j) {
      for (int k = j + 1; k < leaves; ++k) {
        const Rational& dij = v[pair_index(i, j, leaves)];
        const Rational& dik = v[pair_index(i, k, leaves)];
        const Rational& djk = v[pair_index(j, k, leaves)];
        if (djk > std::max(dij, dik)) return TripleViolation{i, j, k};
        if (dik > std::max(dij, djk)) return TripleViolation{i, k, j};
        if (dij > std::max(dik, djk)) return TripleViolation{j, i, k};
      }
    }
  }
  return std::nullopt;
}

bool is_ultrametric(const RatVec& v, int leaves) {
  return !find_ultrametric_violation(v, leaves).has_value();
}

UltrametricVector::UltrametricVector(int leaves_, RatVec coords_)
    : leaves(leaves_), coords(std::move(coords_)) {
  if (leaves < 3) throw std::invalid_argument("UltrametricVector: need at least three leaves");
  for (const auto& x : coords)
    if (x <= 0) throw std::invalid_argument("UltrametricVector: coordinates must be positive");
  if (auto bad = find_ultrametric_violation(coords, leaves))
    throw std::invalid_argument("UltrametricVector: triple condition fails at (" +
                                std::to_string(bad->i) + "," + std::to_string(bad->j) + "," +
                                std::to_string(bad->k) + ")");
}

namespace {

// Rooted shapes enumerated by leaf insertion: leaf L attaches onto every
// node (splitting its parent edge, or making a new root) of every shape on
// L-1 leaves, which visits each shape exactly once.
struct ShapeNode {
  int leaf = -1;  // >= 0 for leaves
  int left = -1, right = -1;
};

struct Shape {
  std::vector<ShapeNode> nodes;
  int root = -1;
};

std::vector<Shape> enumerate_shapes(int leaves) {
  std::vector<Shape> shapes;
  Shape seed;
  seed.nodes.push_back({0, -1, -1});
  seed.root = 0;
  shapes.push_back(seed);
  for (int leaf = 1; leaf < leaves; ++leaf) {
    std::vector<Shape> grown;
    for (const Shape& s : shapes) {
      for (std::size_t at = 0; at < s.nodes.size(); ++at) {
        int parent = -1;
        bool via_left = false;
        for (std::size_t p = 0; p < s.nodes.size(); ++p) {
          if (s.nodes[p].left == static_cast<int>(at)) {
            parent = static_cast<int>(p);
            via_left = true;
            break;
          }
          if (s.nodes[p].right == static_cast<int>(at)) {
            parent = static_cast<int>(p);
            via_left = false;
            break;
          }
        }
        Shape g = s;
        const int leaf_node = static_cast<int>(g.nodes.size());
        g.nodes.push_back({leaf, -1, -1});
        const int join = static_cast<int>(g.nodes.size());
        g.nodes.push_back({-1, static_cast<int>(at), leaf_node});
        if (parent < 0) {
          g.root = join;
        } else if (via_left) {
          g.nodes[parent].left = join;
        } else {
          g.nodes[parent].right = join;
        }
        grown.push_back(std::move(g));
      }
    }
    shapes = std::move(grown);
  }
  return shapes;
}

std::uint32_t cluster_bits(const Shape& s, int node, std::vector<std::uint32_t>& memo) {
  if (memo[node]) return memo[node];
  const ShapeNode& nd = s.nodes[node];
  std::uint32_t bits = nd.leaf >= 0 ? (std::uint32_t(1) << nd.leaf)
                                    : cluster_bits(s, nd.left, memo) | cluster_bits(s, nd.right, memo);
  memo[node] = bits;
  return bits;
}

TreeTopology shape_to_topology(const Shape& s, int leaves) {
  std::vector<std::uint32_t> memo(s.nodes.size(), 0);
  cluster_bits(s, s.root, memo);
  struct Internal {
    std::uint32_t left, right, cluster;
  };
  std::vector<Internal> internals;
  for (std::size_t idx = 0; idx < s.nodes.size(); ++idx) {
    const auto& nd = s.nodes[idx];
    if (nd.leaf >= 0) continue;
    std::uint32_t l = memo[nd.left], r = memo[nd.right];
    if (l > r) std::swap(l, r);
    internals.push_back({l, r, l | r});
  }
  // Proper subsets have strictly fewer bits, so (popcount, value) order puts
  // children before parents.
  std::sort(internals.begin(), internals.end(), [](const Internal& a, const Internal& b) {
    const int pa = std::popcount(a.cluster), pb = std::popcount(b.cluster);
    if (pa != pb) return pa < pb;
    return a.cluster < b.cluster;
  });
  TreeTopology t;
  t.leaves = leaves;
  for (const auto& in : internals) t.merges.push_back({in.left, in.right});
  return t;
}

}  // namespace

std::vector<TreeTopology> enumerate_topologies(int leaves, int cap) {
  if (leaves < 3) throw std::invalid_argument("enumerate_topologies: need at least three leaves");
  if (leaves > cap) throw std::invalid_argument("enumerate_topologies: leaf count exceeds cap");
  std::vector<TreeTopology> out;
  for (const Shape& s : enumerate_shapes(leaves)) out.push_back(shape_to_topology(s, leaves));
  return out;
}

UltrametricVector ultrametric_from_topology(const TreeTopology& topology, const RatVec& heights) {
  if (heights.size() != topology.merges.size())
    throw std::invalid_argument("ultrametric_from_topology: one height per merge");
  const int N = topology.leaves;
  RatVec coords(pair_count(N));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      coords[pair_index(i, j, N)] = 2 * heights[topology.lca_merge(i, j)];
  return UltrametricVector(N, std::move(coords));
}

UltrametricVector random_equidistant_tree(int leaves, std::uint64_t seed) {
  if (leaves < 3) throw std::invalid_argument("random_equidistant_tree: need at least three leaves");
  Rng rng(seed);
  TreeTopology topology;
  topology.leaves = leaves;
  std::vector<std::uint32_t> clusters;
  for (int i = 0; i < leaves; ++i) clusters.push_back(std::uint32_t(1) << i);
  RatVec heights;
  Rational height = 0;
  while (clusters.size() > 1) {
    const std::size_t a = static_cast<std::size_t>(rng.below(clusters.size()));
    std::size_t b = static_cast<std::size_t>(rng.below(clusters.size() - 1));
    if (b >= a) ++b;
    std::uint32_t l = clusters[a], r = clusters[b];
    if (l > r) std::swap(l, r);
    topology.merges.push_back({l, r});
    clusters.erase(clusters.begin() + std::max(a, b));
    clusters.erase(clusters.begin() + std::min(a, b));
    clusters.push_back(l | r);
    height += rat(rng.int_in(1, 1000), 1000);
    heights.push_back(height);
  }
  // Normalize the root to height one: leaves are equidistant from the root
  // and every distance is at most 2.
  const Rational total = heights.back();
  for (auto& h : heights) h /= total;
  return ultrametric_from_topology(topology, heights);
}

HPolytope topology_cone_quotient(const TreeTopology& topology) {
  const int N = topology.leaves;
  const int C = pair_count(N);
  // Variables: u_2 .. u_C (canonical quotient coordinates) plus the
  // representative scaling lambda in the last slot.
  HPolytope with_lambda(C);
  auto coeff_u = [&](RatVec& row, int pair_idx, const Rational& c) {
    if (pair_idx > 0) row[pair_idx - 1] += c;
  };

  std::vector<int> rep(topology.merges.size(), -1);
  for (std::size_t t = 0; t < topology.merges.size(); ++t) {
    const auto& m = topology.merges[t];
    int first = -1;
    for (int i = 0; i < N; ++i) {
      if (!(m.left & (std::uint32_t(1) << i))) continue;
      for (int j = 0; j < N; ++j) {
        if (!(m.right & (std::uint32_t(1) << j))) continue;
        const int p = pair_index(i, j, N);
        if (first < 0) {
          first = p;
          continue;
        }
        RatVec row(C, Rational(0));
        coeff_u(row, p, 1);
        coeff_u(row, first, -1);
        with_lambda.add_eq(std::move(row), Rational(0));
      }
    }
    rep[t] = first;
  }
  for (std::size_t t = 0; t < topology.merges.size(); ++t) {
    const int p = topology.parent_merge(static_cast<int>(t));
    if (p < 0) continue;
    RatVec row(C, Rational(0));
    coeff_u(row, rep[t], 1);
    coeff_u(row, rep[p], -1);
    with_lambda.add_le(std::move(row), Rational(0));
  }
  // Positivity of a representative: -(u_rep + lambda) <= 0. These rows only
  // bound lambda from below, so the projection discards them: in the
  // quotient a class meets the cone exactly when some representative does.
  for (std::size_t t = 0; t < topology.merges.size(); ++t) {
    RatVec row(C, Rational(0));
    coeff_u(row, rep[t], -1);
    row[C - 1] = -1;
    with_lambda.add_le(std::move(row), Rational(0));
  }
  return project_out(with_lambda, {C - 1});
}

int cone_dimension(const TreeTopology& topology) {
  HPolytope cone = topology_cone_quotient(topology);
  RatMatrix eq_rows;
  for (const auto& c : cone.constraints)
    if (c.kind == ConstraintKind::Equal) eq_rows.push_back(c.coeffs);
  return cone.dim - rank(std::move(eq_rows));
}

TreespaceIntersection fw_intersect_treespace(const std::vector<UltrametricVector>& sample,
                                             int topology_cap) {
  if (sample.empty()) throw std::invalid_argument("fw_intersect_treespace: empty sample");
  const int N = sample[0].leaves;
  for (const auto& u : sample)
    if (u.leaves != N) throw std::invalid_argument("fw_intersect_treespace: mixed leaf counts");

  RatMatrix raw;
  for (const auto& u : sample) raw.push_back(u.coords);
  SampleMatrix points = SampleMatrix::from_raw(raw);
  const int C = pair_count(N);
  const int m = points.m();

  TreespaceIntersection out;
  out.d = min_sum_lp(points);

  HPolytope fw_rows = fw_distance_system(points);
  RatVec sum_row(fw_rows.dim, Rational(0));
  for (int i = 0; i < m; ++i) sum_row[C - 1 + i] = 1;
  fw_rows.add_eq(std::move(sum_row), out.d);
  const BoxHint box = fw_box(points, out.d);

  std::vector<RatVec> all_vertices;
  for (TreeTopology& topology : enumerate_topologies(N, topology_cap)) {
    HPolytope joined = fw_rows;
    for (const auto& c : topology_cone_quotient(topology)) {
      RatVec row(joined.dim, Rational(0));
      std::copy(c.coeffs.begin(), c.coeffs.end(), row.begin());
      if (c.kind == ConstraintKind::Equal)
        joined.add_eq(std::move(row), c.rhs);
      else
        joined.add_le(std::move(row), c.rhs);
    }

    ConeIntersection ci;
    ci.topology = std::move(topology);
    if (lp_feasible(joined)) {
      VPolytope extended = enumerate_vertices(joined, box);
      ci.polytope.vertices = project_to_quotient_vertices(extended.vertices, C);
      ci.polytope.affine_dim =
          ci.polytope.vertices.empty() ? -1 : affine_dimension(ci.polytope.vertices);
      ci.dim = ci.polytope.affine_dim;
      for (const auto& v : ci.polytope.vertices) all_vertices.push_back(v);
      if (ci.dim > out.max_dim) out.max_dim = ci.dim;
    }
    out.cones.push_back(std::move(ci));
  }

  sort_points(all_vertices);
  out.union_vertices = std::move(all_vertices);
  out.unique_in_treespace = out.union_vertices.size() == 1 && out.max_dim == 0;
  if (out.unique_in_treespace) {
    out.unique_point = out.union_vertices[0];
    out.unique_is_all_ones = is_zero_vec(out.unique_point);
  }
  return out;
}

Table1Result table1_experiment(int pool_size, const std::vector<int>& sizes, int trials_per_size,
                               std::uint64_t seed, int leaves) {
  if (pool_size < 1) throw std::invalid_argument("table1_experiment: empty pool");
  for (int s : sizes)
    if (s < 1 || s > pool_size)
      throw std::invalid_argument("table1_experiment: subsample size out of range");

  Table1Result out;
  out.leaves = leaves;
  out.pool_size = pool_size;
  out.trials_per_size = trials_per_size;
  out.seed = seed;
  out.sizes = sizes;
  out.dim_counts.resize(sizes.size());

  std::vector<UltrametricVector> pool;
  pool.reserve(pool_size);
  for (int i = 0; i < pool_size; ++i)
    pool.push_back(random_equidistant_tree(leaves, derive_seed(seed, i)));

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const int size = sizes[si];
    for (int trial = 0; trial < trials_per_size; ++trial) {
      Rng rng(derive_seed(seed, pool_size + si * static_cast<std::uint64_t>(trials_per_size) +
                                    trial));
      // Partial Fisher-Yates draw of `size` distinct pool indices.
      std::vector<int> idx(pool_size);
      for (int i = 0; i < pool_size; ++i) idx[i] = i;
      std::vector<int> members;
      for (int pick = 0; pick < size; ++pick) {
        const std::size_t j = pick + rng.below(pool_size - pick);
        std::swap(idx[pick], idx[j]);
        members.push_back(idx[pick]);
      }
      std::sort(members.begin(), members.end());

      std::vector<UltrametricVector> sub;
      for (int i : members) sub.push_back(pool[i]);
      TreespaceIntersection result = fw_intersect_treespace(sub);
      out.dim_counts[si][result.max_dim] += 1;
      if (result.unique_in_treespace) {
        out.unique_hits.push_back(
            {size, members, result.unique_point, result.unique_is_all_ones});
      }
    }
  }
  return out;
}

}  // namespace tropfw
