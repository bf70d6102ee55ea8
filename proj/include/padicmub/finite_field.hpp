#pragma once

// F_{p^r} as F_p[x] / (m(x)) for a monic irreducible m of degree r.
//
// Elements are coefficient vectors (c_0, ..., c_{r-1}) of the representative
// polynomial. Enumeration order, used for matrix rows and columns, is
// lexicographic in that vector with c_0 most significant, which is also the
// order in which candidate moduli are compared.

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "padicmub/character.hpp"
#include "padicmub/errors.hpp"
#include "padicmub/integer.hpp"

namespace padicmub {

using Poly = std::vector<std::uint32_t>;  // coefficients low-to-high

namespace poly_detail {

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// f mod g over F_p, g monic.
inline Poly remainder(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - lead) * g[i]) % p);
    }
    trim(f);
  }
  return f;
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-p digits of index, c_0 most significant.
inline Poly monic_from_index(std::uint64_t index, std::size_t degree, std::uint64_t p) {
  Poly f(degree + 1, 0);
  f[degree] = 1;
  for (std::size_t i = degree; i-- > 0;) {
    f[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return f;
}

}  // namespace poly_detail

inline constexpr std::uint64_t kDefaultFieldCap = 625;

class FieldCtx {
 public:
  /// Trial division by every monic polynomial of degree <= deg/2.
  static bool is_irreducible(const Poly& modulus, std::int64_t p) {
    const std::size_t degree = modulus.size() - 1;
    if (modulus.size() < 2 || modulus.back() != 1) return false;
    if (degree == 1) return true;
    const auto q = static_cast<std::uint64_t>(p);
    for (std::size_t d = 1; d <= degree / 2; ++d) {
      const std::uint64_t count = checked_pow(q, static_cast<std::int64_t>(d));
      for (std::uint64_t i = 0; i < count; ++i) {
        if (poly_detail::remainder(modulus, poly_detail::monic_from_index(i, d, q), q).empty()) return false;
      }
    }
    return true;
  }

  /// All monic irreducible polynomials of degree r, in comparison order.
  static std::vector<Poly> irreducible_polynomials(std::int64_t p, int r) {
    require_prime(p);
    std::vector<Poly> result;
    const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(p), r);
    for (std::uint64_t i = 0; i < count; ++i) {
      Poly f = poly_detail::monic_from_index(i, static_cast<std::size_t>(r), static_cast<std::uint64_t>(p));
      if (is_irreducible(f, p)) result.push_back(std::move(f));
    }
    return result;
  }

  static std::shared_ptr<const FieldCtx> with_modulus(std::int64_t p, Poly modulus,
                                                      std::uint64_t cap = kDefaultFieldCap) {
    require_prime(p);
    if (modulus.size() < 2) throw InvalidArgument("field modulus must have degree >= 1");
    for (auto c : modulus) {
      if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    }
    if (!is_irreducible(modulus, p)) throw InvalidArgument("field modulus is not monic irreducible");
    const int r = static_cast<int>(modulus.size() - 1);
    const std::uint64_t size = checked_pow(static_cast<std::uint64_t>(p), r);
    if (size > cap) {
      throw CapExceeded("field size " + std::to_string(size) + " exceeds cap " + std::to_string(cap));
    }
    return std::shared_ptr<const FieldCtx>(new FieldCtx(p, r, std::move(modulus), size));
  }

  std::int64_t prime() const { return p_; }
  int degree() const { return r_; }
  const Poly& modulus() const { return modulus_; }
  std::uint64_t size() const { return size_; }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldCtx(std::int64_t p, int r, Poly modulus, std::uint64_t size)
      : p_(p), r_(r), modulus_(std::move(modulus)), size_(size) {}

  std::int64_t p_;
  int r_;
  Poly modulus_;
  std::uint64_t size_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// F_{p^r} with the lexicographically least monic irreducible modulus.
inline FieldPtr build_field(std::int64_t p, int r, std::uint64_t cap = kDefaultFieldCap) {
  require_prime(p);
  if (r < 1) throw InvalidArgument("field degree must be >= 1");
  if (checked_pow(static_cast<std::uint64_t>(p), r) > cap) {
    throw CapExceeded("field size " + std::to_string(p) + "^" + std::to_string(r) + " exceeds cap " +
                      std::to_string(cap));
  }
  const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(p), r);
  for (std::uint64_t i = 0; i < count; ++i) {
    Poly f = poly_detail::monic_from_index(i, static_cast<std::size_t>(r), static_cast<std::uint64_t>(p));
    if (FieldCtx::is_irreducible(f, p)) return FieldCtx::with_modulus(p, std::move(f), cap);
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable: one always exists
}

class FieldElem {
 public:
  FieldElem(FieldPtr field, std::vector<std::uint32_t> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(field_->degree())) {
      throw InvalidArgument("field element needs exactly r coefficients");
    }
    for (auto c : coeffs_) {
      if (c >= field_->prime()) throw InvalidArgument("field element coefficient out of range");
    }
  }

  /// Element number `index` in enumeration order.
  static FieldElem from_index(const FieldPtr& field, std::uint64_t index) {
    if (index >= field->size()) throw InvalidArgument("field element index out of range");
    const auto p = static_cast<std::uint64_t>(field->prime());
    std::vector<std::uint32_t> c(static_cast<std::size_t>(field->degree()), 0);
    for (std::size_t i = c.size(); i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(index % p);
      index /= p;
    }
    return FieldElem(field, std::move(c));
  }
  /// The image of an integer in the prime subfield.
  static FieldElem from_int(const FieldPtr& field, std::int64_t c) {
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(field->degree()), 0);
    coeffs[0] = static_cast<std::uint32_t>(mod_floor(c, field->prime()));
    return FieldElem(field, std::move(coeffs));
  }
  static FieldElem zero(const FieldPtr& field) { return from_int(field, 0); }
  static FieldElem one(const FieldPtr& field) { return from_int(field, 1); }

  const FieldPtr& field() const { return field_; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }
  bool is_zero() const {
    for (auto c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }
  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (auto c : coeffs_) idx = idx * static_cast<std::uint64_t>(field_->prime()) + c;
    return idx;
  }

  /// "(c0,c1,...)".
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + std::to_string(coeffs_[i]);
    return s + ")";
  }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return *a.field_ == *b.field_ && a.coeffs_ == b.coeffs_;
  }
  friend std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    const auto p = static_cast<std::uint32_t>(a.field_->prime());
    std::vector<std::uint32_t> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeffs_[i] + b.coeffs_[i]) % p;
    return FieldElem(a.field_, std::move(c));
  }
  friend FieldElem operator-(const FieldElem& a) {
    const auto p = static_cast<std::uint32_t>(a.field_->prime());
    std::vector<std::uint32_t> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (p - a.coeffs_[i]) % p;
    return FieldElem(a.field_, std::move(c));
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    const auto p = static_cast<std::uint64_t>(a.field_->prime());
    Poly prod(2 * a.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a.coeffs_[i]) * b.coeffs_[j]) % p);
      }
    }
    Poly rem = poly_detail::remainder(std::move(prod), a.field_->modulus(), p);
    rem.resize(a.coeffs_.size(), 0);
    return FieldElem(a.field_, std::move(rem));
  }

 private:
  static void same_field(const FieldElem& a, const FieldElem& b) {
    if (a.field_ != b.field_ && !(*a.field_ == *b.field_)) {
      throw InvalidArgument("field elements from different fields");
    }
  }

  FieldPtr field_;
  std::vector<std::uint32_t> coeffs_;
};

inline FieldElem pow(const FieldElem& x, std::uint64_t e) {
  FieldElem result = FieldElem::one(x.field());
  FieldElem base = x;
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

inline FieldElem inv(const FieldElem& x) {
  if (x.is_zero()) throw InvalidArgument("inverse of zero field element");
  return pow(x, x.field()->size() - 2);
}

/// Absolute trace x + x^p + ... + x^{p^{r-1}}, as an element of {0, ..., p-1}.
inline std::uint32_t trace(const FieldElem& x) {
  const auto p = static_cast<std::uint64_t>(x.field()->prime());
  FieldElem frob = x;
  FieldElem acc = x;
  for (int i = 1; i < x.field()->degree(); ++i) {
    frob = pow(frob, p);
    acc = acc + frob;
  }
  for (std::size_t i = 1; i < acc.coeffs().size(); ++i) {
    if (acc.coeffs()[i] != 0) throw std::logic_error("trace left the prime subfield");
  }
  return acc.coeffs()[0];
}

/// Phase tr(x)/p of the canonical additive character of F_{p^r}.
inline UnitPhase ff_char(const FieldElem& x) {
  return UnitPhase::of(x.field()->prime(), trace(x), 1);
}

}  // namespace padicmub
