#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tropfw {

// Exact rational scalar. GMP keeps values in lowest terms with a positive
// denominator, so equality of two expressions is decidable by comparing
// representations. Nothing in this library ever rounds.
using Rational = mpq_class;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p" or "p/q" with a nonzero q. Decimal notation ("0.333") is
// rejected: the file formats are exact by contract.
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const RatVec& v);

RatVec parse_rational_vector(const std::vector<std::string>& parts);

// Dense vector helpers used across the polyhedral code.
Rational dot(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_scale(const RatVec& a, const Rational& s);
bool is_zero_vec(const RatVec& a);

}  // namespace tropfw
