#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tropfw/fermat_weber.hpp"
#include "tropfw/projection.hpp"

namespace tropfw {

// Leaf pairs (i, j), i < j, are laid out lexicographically:
// (0,1), (0,2), ..., (0,N-1), (1,2), ...
int pair_count(int leaves);
int pair_index(int i, int j, int leaves);
std::pair<int, int> pair_from_index(int index, int leaves);

// A rooted binary tree shape over [N] leaves as a merge sequence, children
// before parents. Clusters are leaf bitsets. With heights attached (one per
// merge, increasing along ancestor chains) it describes an equidistant tree
// with leaf distances 2 * height(lca).
struct TreeTopology {
  int leaves = 0;
  struct Merge {
    std::uint32_t left = 0, right = 0;
    std::uint32_t cluster() const { return left | right; }
  };
  std::vector<Merge> merges;

  // Merge index of the lowest common ancestor of leaves i and j.
  int lca_merge(int i, int j) const;
  // Parent merge of merge t, or -1 at the root.
  int parent_merge(int t) const;
};

struct TripleViolation {
  int i = 0, j = 0, k = 0;  // D_jk exceeds max(D_ij, D_ik)
};

// Exact three-rotation check of every leaf triple.
bool is_ultrametric(const RatVec& v, int leaves);
std::optional<TripleViolation> find_ultrametric_violation(const RatVec& v, int leaves);

// A positive ultrametric vector; the constructor validates both.
struct UltrametricVector {
  int leaves = 0;
  RatVec coords;

  UltrametricVector(int leaves, RatVec coords);
};

inline constexpr int kDefaultTopologyCap = 6;  // (2*6-3)!! = 945 cones

// All (2N-3)!! rooted binary shapes on N labeled leaves.
std::vector<TreeTopology> enumerate_topologies(int leaves, int cap = kDefaultTopologyCap);

UltrametricVector ultrametric_from_topology(const TreeTopology& topology, const RatVec& heights);

// Uniform random coalescent: merge two uniformly random clusters at strictly
// increasing rational heights, normalized so the root has height one.
// Deterministic per seed.
UltrametricVector random_equidistant_tree(int leaves, std::uint64_t seed);

// The topology's cone as quotient-space constraints over (u_2 .. u_C),
// C = C(N,2): coordinate equalities for pairs sharing an lca and chain
// inequalities along ancestor lines. Built with an explicit representative
// scaling variable for the positivity rows, which Fourier-Motzkin then
// eliminates; a class meets the cone exactly when some representative does.
HPolytope topology_cone_quotient(const TreeTopology& topology);

// Dimension of the cone's affine span in the quotient (N - 2 for maximal
// cones).
int cone_dimension(const TreeTopology& topology);

struct ConeIntersection {
  TreeTopology topology;
  VPolytope polytope;  // full-length canonical vectors
  int dim = -1;
};

struct TreespaceIntersection {
  Rational d;
  std::vector<ConeIntersection> cones;
  int max_dim = -1;
  std::vector<RatVec> union_vertices;
  bool unique_in_treespace = false;
  RatVec unique_point;         // canonical representative, when unique
  bool unique_is_all_ones = false;  // the class of (1,...,1)
};

// Intersects the Fermat-Weber polytope of the sample with every maximal
// cone of treespace, reporting per-cone polytopes and the maximal dimension.
TreespaceIntersection fw_intersect_treespace(const std::vector<UltrametricVector>& sample,
                                             int topology_cap = kDefaultTopologyCap);

struct Table1Result {
  int leaves = 4;
  int pool_size = 0;
  int trials_per_size = 0;
  std::uint64_t seed = 0;
  std::vector<int> sizes;
  // dim -> count, one map per subsample size (dim -1 = empty intersection)
  std::vector<std::map<int, int>> dim_counts;
  struct UniqueHit {
    int size = 0;
    std::vector<int> members;  // indices into the pool
    RatVec point;
    bool all_ones = false;
  };
  std::vector<UniqueHit> unique_hits;
};

// The simulation protocol: a pool of random equidistant trees, random
// subsamples of the given sizes, and for each the maximal dimension of the
// Fermat-Weber set within treespace. Every subsample with a unique
// tree-valued minimizer is logged for the all-ones conjecture audit.
Table1Result table1_experiment(int pool_size, const std::vector<int>& sizes, int trials_per_size,
                               std::uint64_t seed, int leaves = 4);

}  // namespace tropfw
