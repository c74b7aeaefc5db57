#pragma once

// Exact rational arithmetic with a distinguished +infinity. All capacities,
// demands, latencies and approximation factors in this library are rationals;
// several instance constructions hinge on strict inequalities that floating
// point would not preserve.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vnep {

enum class ErrorKind {
  Argument,    // a caller-side precondition was violated
  Reference,   // an id that does not exist in the referenced structure
  Model,       // a graph or instance invariant does not hold
  Mapping,     // the operation requires a valid mapping
  Parse,       // malformed textual input
  ClauseSize,  // CNF clause with more than three distinct literals
  Tautology,   // CNF clause containing a literal and its negation
  Overflow,    // exact arithmetic left the representable range
  Internal,    // broken internal invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class Rational {
 public:
  // Finite values are kept as num/den with den > 0 and gcd(|num|, den) == 1.
  // +infinity is encoded as 1/0; there is no -infinity.
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::Argument, "rational with zero denominator");
    *this = reduce(num, den);
  }

  static Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  bool is_infinite() const { return den_ == 0; }
  bool is_zero() const { return den_ != 0 && num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (b.is_infinite()) throw Error(ErrorKind::Argument, "cannot subtract infinity");
    if (a.is_infinite()) return infinity();
    return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
      const Rational& fin = a.is_infinite() ? b : a;
      if (!fin.is_infinite() && fin.num_ <= 0)
        throw Error(ErrorKind::Argument, "undefined product with infinity");
      return infinity();
    }
    return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_infinite()) throw Error(ErrorKind::Argument, "division by infinity");
    if (b.is_zero()) throw Error(ErrorKind::Argument, "division by zero");
    if (a.is_infinite()) {
      if (b.num_ < 0) throw Error(ErrorKind::Argument, "undefined quotient of infinity");
      return infinity();
    }
    return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    if (is_infinite()) throw Error(ErrorKind::Argument, "cannot negate infinity");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // Accepts "p", "p/q", or "inf" (surrounding whitespace allowed).
  static Rational parse(std::string_view text) {
    auto r = try_parse(text);
    if (!r) throw Error(ErrorKind::Parse, "malformed rational: '" + std::string(text) + "'");
    return *r;
  }

  static std::optional<Rational> try_parse(std::string_view text) {
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string_view::npos) return std::nullopt;
    text = text.substr(b, e - b + 1);
    if (text == "inf") return infinity();
    size_t slash = text.find('/');
    std::optional<std::int64_t> num = parse_int(text.substr(0, slash));
    if (!num) return std::nullopt;
    if (slash == std::string_view::npos) return Rational(*num);
    std::optional<std::int64_t> den = parse_int(text.substr(slash + 1));
    if (!den || *den <= 0) return std::nullopt;
    return Rational(*num, *den);
  }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Exact decimal expansion, available iff den == 2^a * 5^b. Infinite and
  // non-terminating values yield nullopt.
  std::optional<std::string> exact_decimal() const {
    if (is_infinite()) return std::nullopt;
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::nullopt;
    int k = twos > fives ? twos : fives;
    if (k > 18) return std::nullopt;
    i128 scaled = i128(num_);
    for (int i = 0; i < k - twos; ++i) scaled *= 2;
    for (int i = 0; i < k - fives; ++i) scaled *= 5;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits;
    if (scaled == 0) digits = "0";
    while (scaled > 0) {
      digits.insert(digits.begin(), static_cast<char>('0' + int(scaled % 10)));
      scaled /= 10;
    }
    while (static_cast<int>(digits.size()) < k + 1) digits.insert(digits.begin(), '0');
    std::string out = neg ? "-" : "";
    if (k == 0) return out + digits;
    out += digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return out;
  }

 private:
  using i128 = __int128;

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational reduce(i128 num, i128 den) {
    if (den < 0) { num = -num; den = -den; }
    i128 g = gcd128(num, den);
    if (g > 1) { num /= g; den /= g; }
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (num < lo || num > hi || den > hi)
      throw Error(ErrorKind::Overflow, "rational out of 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static std::optional<std::int64_t> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = s[0] == '-';
    if (neg) s = s.substr(1);
    if (s.empty()) return std::nullopt;
    i128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
      if (v > i128(INT64_MAX) + 1) return std::nullopt;
    }
    if (neg) v = -v;
    if (v < INT64_MIN || v > INT64_MAX) return std::nullopt;
    return static_cast<std::int64_t>(v);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string to_string(const Rational& r) { return r.to_string(); }

}  // namespace vnep
