#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixopt {

/// Exact rational scalar. All arithmetic in this library is over Rat or
/// over Rat extended with +infinity (see ext_real.hpp); nothing is ever
/// rounded.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: dimension mismatch");
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vector add: dimension mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vector sub: dimension mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatVec operator*(const Rat& s, const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

/// Renders p/q, or just p when q == 1.
inline std::string format_rational(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "p", "-p" or "p/q" with q > 0 after sign normalization.
/// Anything else (including "p/0") is rejected.
inline Rat parse_rational(const std::string& s) {
  auto fail = [&]() -> Rat {
    throw std::invalid_argument("invalid rational: '" + s + "'");
  };
  if (s.empty()) return fail();
  std::size_t pos = 0;
  if (s[pos] == '-') ++pos;
  std::size_t num_begin = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == num_begin) return fail();
  std::string num = s.substr(0, pos);
  std::string den = "1";
  if (pos < s.size()) {
    if (s[pos] != '/') return fail();
    ++pos;
    std::size_t den_begin = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == den_begin || pos != s.size()) return fail();
    den = s.substr(den_begin);
  }
  mpz_class d(den);
  if (d == 0) return fail();
  Rat r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

}  // namespace mixopt
