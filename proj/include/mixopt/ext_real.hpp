#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixopt/rational.hpp"

namespace mixopt {

/// A rational number or +infinity. The conventions are
///   a + inf = inf,   0 * inf = 0,   a * inf = inf for a > 0,
/// and inf compares greater than every rational. There is no -infinity:
/// costs are bounded from below by construction and the parser rejects it.
class ExtReal {
 public:
  ExtReal() : finite_(true), value_(0) {}
  ExtReal(Rat v) : finite_(true), value_(std::move(v)) {}
  ExtReal(int v) : finite_(true), value_(v) {}

  static ExtReal infinity() {
    ExtReal e;
    e.finite_ = false;
    e.value_ = 0;
    return e;
  }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }

  const Rat& value() const {
    if (!finite_) throw std::domain_error("ExtReal: value() on +infinity");
    return value_;
  }

  ExtReal operator+(const ExtReal& o) const {
    if (!finite_ || !o.finite_) return infinity();
    return ExtReal(value_ + o.value_);
  }

  /// Scale by a nonnegative rational; 0 * inf = 0, a * inf = inf for a > 0.
  ExtReal scaled(const Rat& a) const {
    if (finite_) return ExtReal(a * value_);
    int s = sgn(a);
    if (s == 0) return ExtReal(Rat(0));
    if (s < 0)
      throw std::domain_error("ExtReal: negative scaling of +infinity");
    return infinity();
  }

  bool operator==(const ExtReal& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
  }
  bool operator!=(const ExtReal& o) const { return !(*this == o); }
  bool operator<(const ExtReal& o) const {
    if (!finite_) return false;             // inf < x never
    if (!o.finite_) return true;            // finite < inf
    return value_ < o.value_;
  }
  bool operator<=(const ExtReal& o) const { return *this < o || *this == o; }
  bool operator>(const ExtReal& o) const { return o < *this; }
  bool operator>=(const ExtReal& o) const { return o <= *this; }

  std::string str() const {
    return finite_ ? format_rational(value_) : std::string("inf");
  }

 private:
  bool finite_;
  Rat value_;
};

/// Performance vector: (W_0, ..., W_J) at one solution, entries in (-inf, inf].
using PerfVec = std::vector<ExtReal>;

inline PerfVec to_perf_vec(const RatVec& v) {
  PerfVec out;
  out.reserve(v.size());
  for (const Rat& r : v) out.emplace_back(r);
  return out;
}

inline bool all_finite(const PerfVec& v) {
  for (const ExtReal& e : v)
    if (e.is_infinite()) return false;
  return true;
}

/// Strips the ExtReal wrapper; every entry must be finite.
inline RatVec finite_values(const PerfVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const ExtReal& e : v) out.push_back(e.value());
  return out;
}

}  // namespace mixopt
