#pragma once

// The (a x^2 + b x) construction of p^r + 1 mutually unbiased bases of
// C^{p^r}: V_a = { v(a,b) : b in F_{p^r} } with
//   v(a,b)_x = p^{-r/2} exp(2πi tr(a x^2 + b x) / p),
// plus the computational basis V_inf.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "padicmub/character.hpp"
#include "padicmub/errors.hpp"
#include "padicmub/finite_field.hpp"

namespace padicmub {

inline constexpr std::uint64_t kDefaultMubCap = 343;

struct BasisMatrix {
  /// Enumeration index of a in F_{p^r}; empty for the computational basis.
  std::optional<std::uint64_t> label;
  /// Column b is |v(a,b)>, row x its amplitude at x.
  Eigen::MatrixXcd columns;

  std::string label_string() const { return label ? std::to_string(*label) : "inf"; }
};

/// Multiplication/trace tables so that the O(q^3) construction stays cheap.
class FieldTables {
 public:
  explicit FieldTables(const FieldPtr& field) : q_(field->size()), add_(q_ * q_), mul_(q_ * q_), trace_(q_) {
    std::vector<FieldElem> elems;
    elems.reserve(q_);
    for (std::uint64_t i = 0; i < q_; ++i) elems.push_back(FieldElem::from_index(field, i));
    for (std::uint64_t i = 0; i < q_; ++i) {
      trace_[i] = trace(elems[i]);
      for (std::uint64_t j = 0; j < q_; ++j) {
        add_[i * q_ + j] = static_cast<std::uint32_t>((elems[i] + elems[j]).index());
        mul_[i * q_ + j] = static_cast<std::uint32_t>((elems[i] * elems[j]).index());
      }
    }
  }
  std::uint32_t add(std::uint64_t i, std::uint64_t j) const { return add_[i * q_ + j]; }
  std::uint32_t mul(std::uint64_t i, std::uint64_t j) const { return mul_[i * q_ + j]; }
  std::uint32_t trace_of(std::uint64_t i) const { return trace_[i]; }

 private:
  std::uint64_t q_;
  std::vector<std::uint32_t> add_, mul_, trace_;
};

/// V_a for every a in enumeration order, followed by V_inf. Accepts p = 2 for
/// exploration; only odd p is certified unbiased.
inline std::vector<BasisMatrix> build_mub_set(const FieldPtr& field, std::uint64_t cap = kDefaultMubCap) {
  const std::uint64_t q = field->size();
  if (q > cap) throw CapExceeded("MUB dimension " + std::to_string(q) + " exceeds cap " + std::to_string(cap));
  const FieldTables tables(field);
  const auto p = field->prime();
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(p));
  for (std::int64_t t = 0; t < p; ++t) roots[static_cast<std::size_t>(t)] = phase_to_complex(UnitPhase::of(p, static_cast<std::uint64_t>(t), 1));
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  const auto n = static_cast<Eigen::Index>(q);

  std::vector<BasisMatrix> bases;
  bases.reserve(q + 1);
  for (std::uint64_t a = 0; a < q; ++a) {
    BasisMatrix basis{a, Eigen::MatrixXcd(n, n)};
    for (std::uint64_t x = 0; x < q; ++x) {
      const std::uint32_t ax2 = tables.mul(a, tables.mul(x, x));
      for (std::uint64_t b = 0; b < q; ++b) {
        const std::uint32_t arg = tables.add(ax2, tables.mul(b, x));
        basis.columns(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(b)) = scale * roots[tables.trace_of(arg)];
      }
    }
    bases.push_back(std::move(basis));
  }
  bases.push_back(BasisMatrix{std::nullopt, Eigen::MatrixXcd::Identity(n, n)});
  return bases;
}

struct MubTolerances {
  double unbiased = 1e-10;
  double orthonormal = 1e-12;
};

struct PairStats {
  std::size_t first;
  std::size_t second;
  double min_modulus;
  double max_modulus;
  double max_deviation;  // from 1/sqrt(d)
};

struct MubReport {
  std::size_t dimension = 0;
  double target_modulus = 0.0;
  MubTolerances tolerances;
  std::vector<PairStats> pairs;
  std::vector<double> orthonormality_error;  // max |U^† U - I| per basis
  double max_deviation = 0.0;
  double max_orthonormality_error = 0.0;
  bool pass = false;
};

inline MubReport verify_mub(const std::vector<BasisMatrix>& bases, MubTolerances tol = {}) {
  if (bases.empty()) throw InvalidArgument("verify_mub: no bases");
  const Eigen::Index d = bases.front().columns.rows();
  for (const auto& b : bases) {
    if (b.columns.rows() != d || b.columns.cols() != d) throw InvalidArgument("verify_mub: dimension mismatch");
  }
  MubReport report;
  report.dimension = static_cast<std::size_t>(d);
  report.target_modulus = 1.0 / std::sqrt(static_cast<double>(d));
  report.tolerances = tol;

  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);
  for (const auto& b : bases) {
    const double err = (b.columns.adjoint() * b.columns - identity).cwiseAbs().maxCoeff();
    report.orthonormality_error.push_back(err);
    report.max_orthonormality_error = std::max(report.max_orthonormality_error, err);
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      const Eigen::MatrixXd moduli = (bases[i].columns.adjoint() * bases[j].columns).cwiseAbs();
      const PairStats stats{i, j, moduli.minCoeff(), moduli.maxCoeff(),
                            (moduli.array() - report.target_modulus).abs().maxCoeff()};
      report.max_deviation = std::max(report.max_deviation, stats.max_deviation);
      report.pairs.push_back(stats);
    }
  }
  report.pass = report.max_deviation <= tol.unbiased && report.max_orthonormality_error <= tol.orthonormal;
  return report;
}

/// Build-and-verify pipeline. Certification rests on the odd-characteristic
/// Gauss sum norm, so p = 2 is rejected here.
inline MubReport certify_mub_set(const FieldPtr& field, MubTolerances tol = {}, std::uint64_t cap = kDefaultMubCap) {
  if (field->prime() == 2) throw LemmaHypothesisError("MUB certification in characteristic 2");
  return verify_mub(build_mub_set(field, cap), tol);
}

}  // namespace padicmub
