#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tropfw/fermat_weber.hpp"

using namespace tropfw;

namespace {

SampleMatrix example_24() {
  return SampleMatrix::from_raw({{0, 0, 0}, {0, 3, 1}, {0, 2, 5}});
}

SampleMatrix remark_312() {
  return SampleMatrix::from_raw({{0, 0, 0, 5}, {0, 0, 3, 1}, {0, 4, 5, 7}});
}

SampleMatrix random_sample(std::mt19937_64& rng, int m, int n, long span = 12, long den = 4) {
  RatMatrix raw(m, RatVec(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      long num = static_cast<long>(rng() % (2 * span + 1)) - span;
      raw[i][j] = rat(num, 1 + static_cast<long>(rng() % den));
    }
  return SampleMatrix::from_raw(raw);
}

RatVec full_vec(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(rat(x));
  return v;
}

}  // namespace

TEST_CASE("min_sum_lp on the three-point example") {
  CHECK(min_sum_lp(example_24()) == 7);
  CHECK(min_sum_lp(SampleMatrix::from_raw({{1, 4, 2}})) == 0);
  CHECK(min_sum_lp(remark_312()) == 9);
}

TEST_CASE("min_sum_combinatorial agrees and refuses over budget") {
  CHECK(*min_sum_combinatorial(example_24()) == 7);
  CHECK(*min_sum_combinatorial(SampleMatrix::from_raw({{2, 5}})) == 0);
  CHECK(*min_sum_combinatorial(remark_312()) == 9);
  CHECK(!min_sum_combinatorial(example_24(), 8));  // 3^3 = 27 > 8
}

TEST_CASE("oracle equivalence on random samples") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int n = 2 + static_cast<int>(rng() % 3);
    SampleMatrix s = random_sample(rng, m, n);
    auto comb = min_sum_combinatorial(s);
    REQUIRE(comb);
    CHECK(*comb == min_sum_lp(s));
  }
}

TEST_CASE("admissible pairs bound the minimal sum from below") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    SampleMatrix s = random_sample(rng, 3, 3);
    Rational d = min_sum_lp(s);
    for (int probe = 0; probe < 30; ++probe) {
      std::vector<int> sigma(3), tau(3);
      for (int i = 0; i < 3; ++i) sigma[i] = static_cast<int>(rng() % 3);
      std::vector<int> perm = sigma;
      std::shuffle(perm.begin(), perm.end(), rng);
      tau = perm;  // same multiset by construction
      AssignmentPair pair = AssignmentPair::make(sigma, tau, 3);
      REQUIRE(pair.admissible());
      CHECK(pair.value(s) <= d);
    }
  }
}

TEST_CASE("fw_polytope: example triangle") {
  FWResult r = fw_polytope(example_24());
  CHECK(r.d == 7);
  CHECK(!r.unique);
  CHECK(r.polytope.affine_dim == 2);
  REQUIRE(r.polytope.vertices.size() == 3);
  CHECK(r.polytope.vertices[0] == full_vec({0, 1, 1}));
  CHECK(r.polytope.vertices[1] == full_vec({0, 2, 1}));
  CHECK(r.polytope.vertices[2] == full_vec({0, 2, 2}));
}

TEST_CASE("fw_polytope: single point sample") {
  FWResult r = fw_polytope(SampleMatrix::from_raw({{3, 7, 1}}));
  CHECK(r.d == 0);
  CHECK(r.unique);
  REQUIRE(r.polytope.vertices.size() == 1);
  CHECK(r.polytope.vertices[0] == canonicalize({rat(3), rat(7), rat(1)}).coords());
  CHECK(r.polytope.affine_dim == 0);
}

TEST_CASE("fw_polytope: segment of Remark-style sample") {
  FWResult r = fw_polytope(remark_312());
  CHECK(r.d == 9);
  CHECK(!r.unique);
  CHECK(r.polytope.affine_dim == 1);
  REQUIRE(r.polytope.vertices.size() == 2);
  CHECK(r.polytope.vertices[0] == full_vec({0, 2, 3, 5}));
  CHECK(r.polytope.vertices[1] == full_vec({0, 3, 3, 5}));
}

TEST_CASE("fw_polytope matches the direct inequality family") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    SampleMatrix s = random_sample(rng, 2 + static_cast<int>(rng() % 2), 3);
    FWResult a = fw_polytope(s);
    auto b = fw_polytope_direct(s);
    REQUIRE(b);
    CHECK(a.d == b->d);
    CHECK(a.polytope.vertices == b->polytope.vertices);
    CHECK(a.polytope.affine_dim == b->polytope.affine_dim);
  }
}

TEST_CASE("is_fw_point") {
  SampleMatrix s = example_24();
  CHECK(is_fw_point(canonicalize({0, 1, 1}), s, rat(7)));
  CHECK(!is_fw_point(canonicalize({0, 0, 0}), s, rat(7)));
  SampleMatrix single = SampleMatrix::from_raw({{0, 2, 1}});
  CHECK(is_fw_point(single.row(0), single, rat(0)));
  CHECK_THROWS_AS(is_fw_point(canonicalize({0, 1}), s, rat(7)), std::invalid_argument);
}

TEST_CASE("convexity: midpoints of polytope vertices stay minimizers") {
  for (SampleMatrix s : {example_24(), remark_312()}) {
    FWResult r = fw_polytope(s);
    for (std::size_t i = 0; i < r.polytope.size(); ++i)
      for (std::size_t j = i + 1; j < r.polytope.size(); ++j) {
        RatVec mid = vec_scale(vec_add(r.polytope.vertices[i], r.polytope.vertices[j]), rat(1, 2));
        CHECK(is_fw_point(canonicalize(mid), s, r.d));
      }
  }
}

TEST_CASE("appending a minimizer pins the polytope to it") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 12; ++trial) {
    SampleMatrix s = random_sample(rng, 3, 3);
    FWResult r = fw_polytope(s);
    REQUIRE(!r.polytope.empty());
    // Random rational convex combination of the vertices.
    RatVec combo(s.n(), Rational(0));
    Rational total = 0;
    std::vector<Rational> weights;
    for (std::size_t v = 0; v < r.polytope.size(); ++v) {
      Rational w = rat(1 + static_cast<long>(rng() % 5));
      total += w;
      weights.push_back(w);
    }
    for (std::size_t v = 0; v < r.polytope.size(); ++v)
      combo = vec_add(combo, vec_scale(r.polytope.vertices[v], weights[v] / total));
    QuotientPoint point = canonicalize(combo);
    REQUIRE(is_fw_point(point, s, r.d));

    FWResult pinned = fw_polytope(s.with_row(point));
    CHECK(pinned.unique);
    REQUIRE(pinned.polytope.size() == 1);
    CHECK(pinned.polytope.vertices[0] == point.coords());
  }
}

TEST_CASE("translation equivariance of the polytope") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 8; ++trial) {
    SampleMatrix s = random_sample(rng, 3, 3);
    RatVec shift_raw(3);
    for (auto& x : shift_raw) x = rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3);
    QuotientPoint w = canonicalize(shift_raw);
    FWResult base = fw_polytope(s);
    FWResult moved = fw_polytope(s.translated(w));
    CHECK(base.d == moved.d);
    REQUIRE(base.polytope.size() == moved.polytope.size());
    std::vector<RatVec> shifted;
    for (const auto& v : base.polytope.vertices)
      shifted.push_back(canonicalize(vec_add(v, w.coords())).coords());
    sort_points(shifted);
    CHECK(shifted == moved.polytope.vertices);
  }
}

TEST_CASE("essentiality") {
  EssentialityReport r = is_essential(unique_three_point_instance());
  CHECK(r.essential);

  SampleMatrix dup = SampleMatrix::from_raw({{0, 1, 2}, {0, 1, 2}, {0, 5, 9}});
  EssentialityReport rd = is_essential(dup);
  CHECK(!rd.essential);
  CHECK(rd.row_is_fw_of_rest[0]);

  CHECK(is_essential(remark_312()).essential);

  SampleMatrix pair = SampleMatrix::from_raw({{0, 0, 0}, {0, 3, 1}});
  CHECK(!is_essential(pair).essential);

  CHECK_THROWS_AS(is_essential(SampleMatrix::from_raw({{0, 1, 2}})), std::invalid_argument);
}

TEST_CASE("circulant instances") {
  SampleMatrix c4 = circulant_instance(4);
  // Residue rule for n = 4, before canonicalization the rows are
  // (1,1,-1,-1), (-1,1,1,-1), (-1,-1,1,1), (1,-1,-1,1).
  RatMatrix expect = {{1, 1, -1, -1}, {-1, 1, 1, -1}, {-1, -1, 1, 1}, {1, -1, -1, 1}};
  for (int i = 0; i < 4; ++i) CHECK(c4.row(i) == canonicalize(expect[i]));

  SampleMatrix c5 = circulant_instance(5);
  CHECK(c5.row(0) == canonicalize({rat(1), rat(1), rat(-1), rat(-1), rat(0)}));

  CHECK_THROWS_AS(circulant_instance(3), std::invalid_argument);

  for (int n = 4; n <= 6; ++n) {
    SampleMatrix c = circulant_instance(n);
    FWResult r = fw_polytope(c);
    CHECK(r.d == 2 * n);
    CHECK(r.unique);
    REQUIRE(r.polytope.size() == 1);
    CHECK(is_zero_vec(r.polytope.vertices[0]));
  }

  FWResult r3 = fw_polytope(unique_three_point_instance());
  CHECK(r3.unique);
  CHECK(is_zero_vec(r3.polytope.vertices[0]));
}

TEST_CASE("k_ellipse at the minimum is the polytope itself") {
  SampleMatrix s = example_24();
  EllipseResult e = k_ellipse({s, rat(7)});
  CHECK(!e.boundary_is_locus);
  FWResult r = fw_polytope(s);
  CHECK(e.sublevel.vertices == r.polytope.vertices);

  CHECK_THROWS_AS(k_ellipse({s, rat(5)}), std::invalid_argument);
}

TEST_CASE("k_ellipse: hexagon at a = 8") {
  EllipseResult e = k_ellipse({example_24(), rat(8)});
  CHECK(e.d == 7);
  CHECK(e.boundary_is_locus);
  CHECK(e.sublevel.vertices.size() == 6);
  CHECK(e.sublevel.affine_dim == 2);
}

TEST_CASE("k_ellipse: monotone nesting") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 6; ++trial) {
    SampleMatrix s = random_sample(rng, 3, 3);
    Rational d = min_sum_lp(s);
    Rational a1 = d + rat(1 + static_cast<long>(rng() % 4), 2);
    Rational a2 = a1 + rat(1 + static_cast<long>(rng() % 4), 3);
    EllipseResult inner = k_ellipse({s, a1});
    for (const auto& v : inner.sublevel.vertices)
      CHECK(distance_sum(canonicalize(v), s) <= a2);
  }
}
