#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabgate {

using Int = std::int64_t;

// Exceptions mirror the error classes named in module contracts.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct data_missing_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw consistency_error("integer overflow in add");
  return r;
}
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw consistency_error("integer overflow in mul");
  return r;
}

// Characteristic: a prime, or infinity (characteristic zero).
struct Char {
  Int v = 0;  // 0 encodes infinity

  static Char infinity() { return Char{0}; }
  static Char prime(Int p) { return Char{p}; }
  bool is_infinite() const { return v == 0; }
  bool operator==(const Char&) const = default;

  // true iff this characteristic is >= b (infinity is >= everything)
  bool at_least(Int b) const { return is_infinite() || v >= b; }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(v); }
};

// zeta_{a,b} of the divisibility kind: 1 if a | b else 0; at p = infinity both
// arguments concrete so only the p-dependent wrappers below treat infinity.
inline Int zeta_div(Int a, Int b) { return (a != 0 && b % a == 0) ? 1 : 0; }

// zeta_{n,p}: 1 iff n divides the characteristic; for prime p and n > 1 this
// means p == n. Zero in characteristic zero.
inline Int zeta_at(Int n, Char p) {
  if (p.is_infinite()) return 0;
  return zeta_div(n, p.v);
}

// Small exact rational on Int; enough for weight-coordinate conversions and
// the ZLC feasibility solver.
struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(Int n) : num(n), den(1) {}
  Rat(Int n, Int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw consistency_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Int g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  friend Rat operator+(Rat a, Rat b) {
    return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator-(Rat a, Rat b) {
    return Rat(checked_add(checked_mul(a.num, b.den), -checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator*(Rat a, Rat b) { return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den)); }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw consistency_error("rational division by zero");
    return Rat(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
  }
  Rat operator-() const { return Rat(-num, den); }
  bool operator==(const Rat&) const = default;
  friend bool operator<(Rat a, Rat b) { return checked_mul(a.num, b.den) < checked_mul(b.num, a.den); }
  friend bool operator<=(Rat a, Rat b) { return checked_mul(a.num, b.den) <= checked_mul(b.num, a.den); }
  friend bool operator>(Rat a, Rat b) { return b < a; }
  friend bool operator>=(Rat a, Rat b) { return b <= a; }
};

// Integer-valued expression of the form  base + sum coeff_i * zeta_i  where
// each zeta is either "characteristic equals n" (zeq) or "characteristic
// divides n" (zdiv; i.e. p | n).  This is the shape of every p-dependent value
// in the embedded tables (multiplicities, module dimensions, c totals, d0
// parts, B values, class dimensions).
struct ZExpr {
  struct Term {
    Int coeff = 0;
    Int n = 0;
    bool divides = false;  // true: zeta = [p | n]; false: zeta = [p == n]
    bool operator==(const Term&) const = default;
  };
  Int base = 0;
  std::vector<Term> terms;

  ZExpr() = default;
  ZExpr(Int b) : base(b) {}

  Int eval(Char p) const {
    Int v = base;
    for (const auto& t : terms) {
      Int z;
      if (p.is_infinite())
        z = 0;
      else if (t.divides)
        z = zeta_div(p.v, t.n);  // p divides n
      else
        z = (p.v == t.n) ? 1 : 0;
      v = checked_add(v, checked_mul(t.coeff, z));
    }
    return v;
  }

  // Grammar: INT ( ('+'|'-') INT? ('z'N | 'zdiv'N) )*
  //   "14-z3"    -> 14 - [p==3]
  //   "2+z3"     -> 2 + [p==3]
  //   "20-2zdiv6"-> 20 - 2*[p|6]
  static ZExpr parse(const std::string& s);
  std::string str() const;
};

inline ZExpr ZExpr::parse(const std::string& s) {
  ZExpr e;
  size_t i = 0;
  auto read_int = [&](bool allow_empty) -> Int {
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = s[i] == '-';
      ++i;
    }
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) {
      if (!allow_empty) throw argument_error("bad integer in expression: " + s);
      return neg ? -1 : 1;
    }
    Int v = std::stoll(s.substr(start, i - start));
    return neg ? -v : v;
  };
  if (s.empty()) throw argument_error("empty expression");
  // leading term may be a bare zeta
  if (s[0] != 'z' && !(s.size() > 1 && (s[0] == '+' || s[0] == '-') && s[1] == 'z'))
    e.base = read_int(false);
  while (i < s.size()) {
    Int coeff = read_int(true);
    if (i >= s.size() || s[i] != 'z') throw argument_error("expected zeta term in: " + s);
    ++i;
    bool divides = false;
    if (s.compare(i, 3, "div") == 0) {
      divides = true;
      i += 3;
    }
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw argument_error("zeta needs a modulus in: " + s);
    Int n = std::stoll(s.substr(start, i - start));
    e.terms.push_back({coeff, n, divides});
  }
  return e;
}

inline std::string ZExpr::str() const {
  std::string out = std::to_string(base);
  for (const auto& t : terms) {
    out += (t.coeff >= 0 ? "+" : "-");
    Int c = t.coeff >= 0 ? t.coeff : -t.coeff;
    if (c != 1) out += std::to_string(c);
    out += t.divides ? "zdiv" : "z";
    out += std::to_string(t.n);
  }
  return out;
}

// Deterministic xorshift generator for property sweeps; avoids libc rand.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed ? seed : 1) {}
  std::uint64_t next() {
    std::uint64_t x = state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    state = x;
    return x;
  }
  Int below(Int n) { return static_cast<Int>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace stabgate
