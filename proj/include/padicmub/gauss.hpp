#pragma once

// Quadratic Gauss sums over Z/p^k Z and F_{p^r}, and quadratic Gauss
// integrals over balls p^{-r} Z_p. Each quantity comes three ways where
// possible: the closed-form norm (three-case formulas, p odd), an exact
// norm-squared from counting solutions of a linear congruence, and a
// brute-force numeric sum.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicmub/character.hpp"
#include "padicmub/errors.hpp"
#include "padicmub/finite_field.hpp"
#include "padicmub/integer.hpp"
#include "padicmub/padic.hpp"
#include "padicmub/summation.hpp"

namespace padicmub {

inline constexpr std::uint64_t kDefaultTermCap = 1'000'000;

/// p^e as a term count, rejecting anything above cap.
inline std::uint64_t capped_pow(std::int64_t p, std::int64_t e, std::uint64_t cap, const char* what) {
  std::uint64_t n = 0;
  try {
    n = checked_pow(static_cast<std::uint64_t>(p), e);
  } catch (const std::overflow_error&) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(p) + "^" + std::to_string(e) + " overflows");
  }
  if (n > cap) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(n) + " terms exceed cap " + std::to_string(cap));
  }
  return n;
}

/// Which branch of a three-case norm formula applies.
enum class GaussCase {
  kQuadratic = 1,  // quadratic term dominates: p^{(...)/2}
  kLinear = 2,     // linear term dominates: the sum vanishes
  kConstant = 3,   // integrand constant: measure of the domain
};

inline const char* case_label(GaussCase c) {
  switch (c) {
    case GaussCase::kQuadratic: return "quadratic";
    case GaussCase::kLinear: return "linear";
    case GaussCase::kConstant: return "constant";
  }
  return "?";
}

struct ClosedNorm {
  PPower norm;
  GaussCase which;
};

// ---------------------------------------------------------------------------
// Sums over Z/p^k Z with character omega = exp(2πi / p^l).

struct RingSumParams {
  std::int64_t p = 3;
  std::int64_t k = 1;
  std::int64_t l = 1;
  std::int64_t a = 0;
  std::int64_t b = 0;

  void validate() const {
    require_prime(p);
    if (l < 1 || k < l) throw InvalidArgument("ring sum needs k >= l >= 1");
  }
  std::uint64_t modulus() const { return checked_pow(static_cast<std::uint64_t>(p), l); }
  std::uint64_t a_reduced() const { return static_cast<std::uint64_t>(mod_floor(a, static_cast<std::int64_t>(modulus()))); }
  std::uint64_t b_reduced() const { return static_cast<std::uint64_t>(mod_floor(b, static_cast<std::int64_t>(modulus()))); }
};

/// Σ_{x=0}^{p^k-1} omega^{a x^2 + b x}, by direct summation in ascending x.
inline std::complex<double> ring_sum_numeric(const RingSumParams& params, std::uint64_t cap = kDefaultTermCap) {
  params.validate();
  const std::uint64_t terms = capped_pow(params.p, params.k, cap, "ring sum");
  const std::uint64_t m = params.modulus();
  const std::uint64_t a = params.a_reduced(), b = params.b_reduced();
  std::vector<std::complex<double>> roots(m);
  for (std::uint64_t e = 0; e < m; ++e) roots[e] = phase_to_complex(UnitPhase::of(params.p, e, params.l));
  CompensatedSum<std::complex<double>> sum;
  for (std::uint64_t x = 0; x < terms; ++x) {
    const std::uint64_t xm = x % m;
    const std::uint64_t e = (mulmod(a, mulmod(xm, xm, m), m) + mulmod(b, xm, m)) % m;
    sum.add(roots[e]);
  }
  return sum.value();
}

/// |g(a,b;k,l)|^2 = p^{2(k-l)} * p^l * #{y mod p^l : a y + b = 0 mod p^l},
/// counted exhaustively.
inline std::uint64_t ring_sum_normsq_exact(const RingSumParams& params, std::uint64_t cap = kDefaultTermCap) {
  params.validate();
  const std::uint64_t m = capped_pow(params.p, params.l, cap, "congruence count");
  const std::uint64_t a = params.a_reduced(), b = params.b_reduced();
  std::uint64_t solutions = 0;
  for (std::uint64_t y = 0; y < m; ++y) {
    if ((mulmod(a, y, m) + b) % m == 0) ++solutions;
  }
  const std::uint64_t scale = checked_pow(static_cast<std::uint64_t>(params.p), 2 * (params.k - params.l) + params.l);
  if (solutions != 0 && scale > std::numeric_limits<std::uint64_t>::max() / solutions) {
    throw std::overflow_error("ring_sum_normsq_exact overflows 64 bits");
  }
  return scale * solutions;
}

/// Three-case closed form for |g(a,b;k,l)|, p odd. Valuations are those of
/// the representatives in [0, p^l); "= 0 mod p^l" is its own case flag.
inline ClosedNorm ring_sum_norm_closed(const RingSumParams& params) {
  params.validate();
  if (params.p == 2) throw LemmaHypothesisError("closed-form Gauss sum norm");
  const std::uint64_t a = params.a_reduced(), b = params.b_reduced();
  if (a != 0) {
    const std::int64_t va = valuation_of(static_cast<std::int64_t>(a), params.p).value();
    if (b == 0 || va <= valuation_of(static_cast<std::int64_t>(b), params.p).value()) {
      return {PPower::half(params.p, 2 * params.k - params.l + va), GaussCase::kQuadratic};
    }
    return {PPower::zero(), GaussCase::kLinear};
  }
  if (b != 0) return {PPower::zero(), GaussCase::kLinear};
  return {PPower::power(params.p, params.k), GaussCase::kConstant};
}

// ---------------------------------------------------------------------------
// Sums over F_{p^r} with the trace character.

/// Σ_{x in F_{p^r}} exp(2πi tr(alpha x^2 + beta x) / p), ascending enumeration.
inline std::complex<double> field_sum_numeric(const FieldElem& alpha, const FieldElem& beta,
                                              std::uint64_t cap = kDefaultTermCap) {
  const FieldPtr& field = alpha.field();
  if (!(*field == *beta.field())) throw InvalidArgument("field sum coefficients from different fields");
  if (field->size() > cap) throw CapExceeded("field sum: " + std::to_string(field->size()) + " terms exceed cap");
  CompensatedSum<std::complex<double>> sum;
  for (std::uint64_t i = 0; i < field->size(); ++i) {
    const FieldElem x = FieldElem::from_index(field, i);
    sum.add(phase_to_complex(ff_char(alpha * x * x + beta * x)));
  }
  return sum.value();
}

/// sqrt(p^r) if alpha != 0; 0 if alpha = 0, beta != 0; p^r if both vanish.
inline ClosedNorm field_sum_norm_closed(const FieldElem& alpha, const FieldElem& beta) {
  const std::int64_t p = alpha.field()->prime();
  const int r = alpha.field()->degree();
  if (p == 2) throw LemmaHypothesisError("closed-form finite-field Gauss sum norm");
  if (!alpha.is_zero()) return {PPower::half(p, r), GaussCase::kQuadratic};
  if (!beta.is_zero()) return {PPower::zero(), GaussCase::kLinear};
  return {PPower::power(p, r), GaussCase::kConstant};
}

// ---------------------------------------------------------------------------
// Integrals ∫_{p^{-r} Z_p} e(a x^2 + b x) dx with Haar measure, mu(Z_p) = 1.

struct IntegralParams {
  std::int64_t p;
  std::int64_t r;
  PadicNumber a;
  PadicNumber b;

  void validate() const {
    require_prime(p);
    if (a.prime() != p || b.prime() != p) throw InvalidArgument("integral coefficients use a different prime");
  }
};

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// Three-case closed form for |∫_{p^{-r}Z_p} e(a x^2 + b x) dx|, p odd.
inline ClosedNorm integral_norm_closed(const IntegralParams& params) {
  params.validate();
  if (params.p == 2) throw LemmaHypothesisError("closed-form Gauss integral norm");
  const Valuation va = params.a.valuation(), vb = params.b.valuation();
  const std::int64_t r = params.r;
  if (va < Valuation(2 * r) && va <= vb + r) {
    return {PPower::half(params.p, va.value()), GaussCase::kQuadratic};
  }
  if (vb < Valuation(r) && va > vb + r) return {PPower::zero(), GaussCase::kLinear};
  return {PPower::power(params.p, r), GaussCase::kConstant};  // va >= 2r and vb >= r
}

/// Reduction of the integral to p^{r-k} g(A, B; k, l) with integers A, B.
struct IntegralReduction {
  std::int64_t k;
  std::int64_t l;
  std::uint64_t A;
  std::uint64_t B;
};

/// l = max(2r - v(a), r - v(b), 1) makes A = a p^{l-2r}, B = b p^{l-r}
/// integral; k >= l additionally satisfies k >= r - v(a)/2, 2r - v(a), r - v(b)
/// so the discarded cross terms lie in Z_p. Zero coefficients impose nothing.
inline IntegralReduction integral_reduction(const IntegralParams& params) {
  params.validate();
  const Valuation va = params.a.valuation(), vb = params.b.valuation();
  const std::int64_t r = params.r;
  std::int64_t l = 1;
  if (va.is_finite()) l = std::max(l, 2 * r - va.value());
  if (vb.is_finite()) l = std::max(l, r - vb.value());
  std::int64_t k = l;
  if (va.is_finite()) k = std::max({k, r - floor_div(va.value(), 2), 2 * r - va.value()});
  if (vb.is_finite()) k = std::max(k, r - vb.value());
  return {k, l, params.a.residue(l - 2 * r, l), params.b.residue(l - r, l)};
}

inline std::complex<double> integral_numeric(const IntegralParams& params, std::uint64_t cap = kDefaultTermCap) {
  const IntegralReduction red = integral_reduction(params);
  const RingSumParams ring{params.p, red.k, red.l, static_cast<std::int64_t>(red.A), static_cast<std::int64_t>(red.B)};
  return std::pow(static_cast<double>(params.p), static_cast<double>(params.r - red.k)) * ring_sum_numeric(ring, cap);
}

/// Truncation exponent beyond which the integral's norm settles. `value` is
/// empty for -infinity. For a != 0 the half-integer v(a)/2 is replaced by
/// floor(v(a)/2), which admits exactly the same integers r > t.
struct Threshold {
  std::optional<std::int64_t> value;

  bool is_minus_infinity() const { return !value.has_value(); }
  bool admits(std::int64_t r) const { return !value || r > *value; }
  /// Smallest admitted integer r, given a floor for r.
  std::int64_t first_admitted(std::int64_t at_least) const {
    return value ? std::max(at_least, *value + 1) : at_least;
  }
  std::string to_string() const { return value ? std::to_string(*value) : "-inf"; }
};

inline Threshold threshold_t(const Valuation& va, const Valuation& vb) {
  if (va.is_infinite()) {
    if (vb.is_infinite()) return {};
    return {vb.value()};
  }
  std::int64_t t = floor_div(va.value(), 2);
  if (vb.is_finite()) t = std::max(t, va.value() - vb.value());
  return {t};
}

inline Threshold threshold_t(const PadicNumber& a, const PadicNumber& b) {
  if (a.prime() == 2) throw LemmaHypothesisError("Gauss integral threshold");
  return threshold_t(a.valuation(), b.valuation());
}

/// The settled norm (p^{v(a)/2}, 0 or p^r) when r exceeds the threshold;
/// empty when r <= t, where that table is not guaranteed.
inline std::optional<ClosedNorm> settled_integral_norm(const PadicNumber& a, const PadicNumber& b, std::int64_t r) {
  if (!threshold_t(a, b).admits(r)) return std::nullopt;
  if (!a.is_zero()) return ClosedNorm{PPower::half(a.prime(), a.valuation().value()), GaussCase::kQuadratic};
  if (!b.is_zero()) return ClosedNorm{PPower::zero(), GaussCase::kLinear};
  return ClosedNorm{PPower::power(a.prime(), r), GaussCase::kConstant};
}

}  // namespace padicmub
