#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tropfw/quotient.hpp"

using namespace tropfw;

namespace {

RatVec random_vec(std::mt19937_64& rng, int n, long span = 20, long den = 6) {
  RatVec v(n);
  for (int i = 0; i < n; ++i) {
    long num = static_cast<long>(rng() % (2 * span + 1)) - span;
    v[i] = rat(num, 1 + static_cast<long>(rng() % den));
  }
  return v;
}

}  // namespace

TEST_CASE("canonicalize") {
  CHECK(canonicalize({rat(5), rat(5), rat(5)}).coords() == RatVec{rat(0), rat(0), rat(0)});
  CHECK(canonicalize({rat(1), rat(4), rat(2)}).coords() == RatVec{rat(0), rat(3), rat(1)});
  CHECK_THROWS_AS(canonicalize({rat(1)}), std::invalid_argument);

  // Exact arithmetic on awkward denominators, checked independently.
  RatVec raw = {rat(47, 510), rat(1), rat(1), rat(1), rat(1), rat(125, 151)};
  QuotientPoint q = canonicalize(raw);
  for (std::size_t i = 0; i < raw.size(); ++i) CHECK(q[i] == raw[i] - rat(47, 510));
  CHECK(q[1] == rat(463, 510));
  CHECK(q[5] == rat(125, 151) - rat(47, 510));

  // Idempotence.
  CHECK(canonicalize(q.coords()) == q);
}

TEST_CASE("trop_dist examples") {
  QuotientPoint a = canonicalize({rat(0), rat(0), rat(0)});
  QuotientPoint b = canonicalize({rat(0), rat(3), rat(1)});
  CHECK(trop_dist(a, b) == 3);
  CHECK(trop_dist(b, b) == 0);

  QuotientPoint u = canonicalize({rat(0), rat(2), rat(3), rat(5)});
  QuotientPoint v = canonicalize({rat(0), rat(4), rat(5), rat(7)});
  CHECK(trop_dist(u, v) == 2);

  CHECK_THROWS_AS(trop_dist(a, u), std::invalid_argument);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    QuotientPoint u = canonicalize(random_vec(rng, n));
    QuotientPoint v = canonicalize(random_vec(rng, n));
    QuotientPoint w = canonicalize(random_vec(rng, n));

    CHECK(trop_dist(u, v) == trop_dist(v, u));
    CHECK(trop_dist(u, v) >= 0);
    CHECK((trop_dist(u, v) == 0) == (u == v));
    CHECK(trop_dist(u, w) <= trop_dist(u, v) + trop_dist(v, w));

    // Invariance under vector addition and under scalar multiples of 1.
    QuotientPoint uw = canonicalize(vec_add(u.coords(), w.coords()));
    QuotientPoint vw = canonicalize(vec_add(v.coords(), w.coords()));
    CHECK(trop_dist(uw, vw) == trop_dist(u, v));

    Rational c = rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5));
    RatVec shifted = u.coords();
    for (auto& x : shifted) x += c;
    CHECK(trop_dist(canonicalize(shifted), v) == trop_dist(u, v));
  }
}
