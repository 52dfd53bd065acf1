#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace parcut {

// Exact rational arithmetic for all cut metrics. Desk-scale instances keep
// numerators and denominators far below the int64 range.
using Rat = boost::rational<long long>;

inline std::string rat_str(const Rat &r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rat parse_rat(const std::string &s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) return Rat(std::stoll(s));
  long long p = std::stoll(s.substr(0, pos));
  long long q = std::stoll(s.substr(pos + 1));
  if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(p, q);
}

inline double rat_double(const Rat &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Rational extended with +infinity. Terminal sparsity of a cut whose small
// side holds no terminals is +inf, and guessing loops compare such values
// totally instead of erroring out.
struct ExtRat {
  bool inf = false;
  Rat v = Rat(0);

  ExtRat() = default;
  ExtRat(const Rat &r) : inf(false), v(r) {}  // NOLINT(google-explicit-constructor)
  static ExtRat infinity() {
    ExtRat e;
    e.inf = true;
    return e;
  }

  bool is_inf() const { return inf; }
  const Rat &value() const {
    if (inf) throw std::logic_error("value() on infinite ExtRat");
    return v;
  }

  friend bool operator==(const ExtRat &a, const ExtRat &b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.v == b.v;
  }
  friend bool operator<(const ExtRat &a, const ExtRat &b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.v < b.v;
  }
  friend bool operator<=(const ExtRat &a, const ExtRat &b) { return a < b || a == b; }
  friend bool operator>(const ExtRat &a, const ExtRat &b) { return b < a; }
  friend bool operator>=(const ExtRat &a, const ExtRat &b) { return b <= a; }
};

inline std::string rat_str(const ExtRat &r) {
  return r.is_inf() ? std::string("inf") : rat_str(r.value());
}

inline std::ostream &operator<<(std::ostream &os, const ExtRat &r) { return os << rat_str(r); }

}  // namespace parcut
