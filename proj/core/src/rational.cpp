#include "tropfw/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tropfw {

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  std::string den;
  if (pos < text.size()) {
    if (text[pos] != '/') return std::nullopt;
    ++pos;
    std::size_t den_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      den += text[pos];
      ++pos;
      ++den_digits;
    }
    if (den_digits == 0 || pos != text.size()) return std::nullopt;
  }
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const RatVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  out += ")";
  return out;
}

RatVec parse_rational_vector(const std::vector<std::string>& parts) {
  RatVec out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    auto r = parse_rational(p);
    if (!r) throw std::invalid_argument("not an exact rational: '" + p + "'");
    out.push_back(*r);
  }
  return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  }
  return acc;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: length mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec vec_scale(const RatVec& a, const Rational& s) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

bool is_zero_vec(const RatVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace tropfw
