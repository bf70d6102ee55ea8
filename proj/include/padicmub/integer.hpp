#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "padicmub/errors.hpp"

namespace padicmub {

__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

/// Deterministic trial-division primality test; the primes used here are small.
constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
}

/// base^exp in 64 bits; throws std::overflow_error instead of wrapping.
constexpr std::uint64_t checked_pow(std::uint64_t base, std::int64_t exp) {
  if (exp < 0) throw std::domain_error("checked_pow: negative exponent");
  std::uint64_t result = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("checked_pow: " + std::to_string(base) + "^" +
                                std::to_string(exp) + " exceeds 64 bits");
    }
    result *= base;
  }
  return result;
}

/// Least non-negative residue of a mod m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

/// Inverse of a modulo a prime p, a not divisible by p.
constexpr std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = mod_floor(a, p), r = p;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("inverse_mod_prime: not invertible");
  return mod_floor(old_s, p);
}

/// p-adic valuation: an integer, or +infinity for zero.
class Valuation {
 public:
  constexpr Valuation(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  /// Throws std::bad_optional_access for +infinity.
  constexpr std::int64_t value() const { return value_.value(); }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return *a.value_ <=> *b.value_;
  }
  friend constexpr Valuation operator+(Valuation a, std::int64_t shift) {
    return a.is_infinite() ? a : Valuation(*a.value_ + shift);
  }
  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    return a.is_infinite() || b.is_infinite() ? infinity() : Valuation(*a.value_ + *b.value_);
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return os << v.to_string();
  }

 private:
  constexpr Valuation() = default;
  std::optional<std::int64_t> value_;
};

constexpr Valuation valuation_of(std::int64_t n, std::int64_t p) {
  if (n == 0) return Valuation::infinity();
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Exact rational with 64-bit numerator and denominator, always reduced and
/// with a positive denominator. Arithmetic throws on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    assign(static_cast<int128>(n), static_cast<int128>(d));
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }

  Valuation valuation(std::int64_t p) const {
    if (num_ == 0) return Valuation::infinity();
    return valuation_of(num_, p).value() - valuation_of(den_, p).value();
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
             static_cast<int128>(a.den_) * b.den_);
    return r;
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.assign(-static_cast<int128>(a.num_), a.den_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
    return r;
  }
  friend bool operator==(const Rational&, const Rational&) = default;

  /// Accepts "n" or "n/d" with optional sign.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    auto to_int = [&](std::string_view s) {
      std::size_t pos = 0;
      std::int64_t value = 0;
      try {
        value = std::stoll(std::string(s), &pos);
      } catch (const std::exception&) {
        throw InvalidArgument("cannot parse rational '" + std::string(text) + "'");
      }
      if (pos != s.size()) throw InvalidArgument("cannot parse rational '" + std::string(text) + "'");
      return value;
    };
    if (slash == std::string_view::npos) return Rational(to_int(text));
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

 private:
  void assign(int128 n, int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      const int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr int128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational arithmetic overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace padicmub
