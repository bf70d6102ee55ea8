#pragma once

// Verification records and their JSON / CSV / table renderings. Every float
// goes out at 12 significant digits; exact values go out symbolically.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padicmub/gauss.hpp"
#include "padicmub/mub_finite.hpp"
#include "padicmub/mub_padic.hpp"

namespace padicmub {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, so that JSON dumps stay short and stable.
inline double round12(double x) { return std::strtod(format12(x).c_str(), nullptr); }

/// A p-adic coefficient given on the command line: "num/den" (expanded to the
/// requested absolute precision) or a digit string "d0 d1 ... * p^v".
inline PadicNumber parse_coefficient(const std::string& text, std::int64_t p, std::int64_t absolute) {
  if (text.find('*') != std::string::npos) return PadicNumber::parse(text, p, 1);
  return PadicNumber::with_absolute_precision(Rational::parse(text), p, absolute);
}

// ---------------------------------------------------------------------------
// Closed form against oracle.

struct NormReport {
  GaussCase which = GaussCase::kConstant;
  PPower closed = PPower::zero();
  std::optional<double> numeric;
  std::optional<std::uint64_t> normsq_exact;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  Json params;
  Json extra = Json::object();
};

/// Ring sum report. With `oracle`, the closed form must match the
/// counting identity exactly and the direct sum within `rel_tol` relative.
inline NormReport gauss_ring_report(const RingSumParams& params, bool oracle, std::uint64_t cap = kDefaultTermCap,
                                    double rel_tol = 1e-6) {
  const ClosedNorm closed = ring_sum_norm_closed(params);
  NormReport rep;
  rep.which = closed.which;
  rep.closed = closed.norm;
  rep.tolerance = rel_tol;
  rep.params = {{"p", params.p}, {"k", params.k}, {"l", params.l}, {"a", params.a}, {"b", params.b}};
  if (oracle) {
    const double numeric = std::abs(ring_sum_numeric(params, cap));
    rep.numeric = numeric;
    rep.normsq_exact = ring_sum_normsq_exact(params, cap);
    rep.deviation = std::abs(numeric - closed.norm.to_double());
    const bool exact_ok = closed.norm.squared_integer() == rep.normsq_exact;
    rep.pass = exact_ok && rep.deviation <= rel_tol * std::max(1.0, closed.norm.to_double());
    rep.extra["exact_match"] = exact_ok;
  }
  return rep;
}

inline NormReport gauss_integral_report(const IntegralParams& params, bool oracle, std::uint64_t cap = kDefaultTermCap,
                                        double abs_tol = 1e-9) {
  const ClosedNorm closed = integral_norm_closed(params);
  NormReport rep;
  rep.which = closed.which;
  rep.closed = closed.norm;
  rep.tolerance = abs_tol;
  rep.params = {{"p", params.p}, {"r", params.r}, {"a", params.a.to_string()}, {"b", params.b.to_string()}};
  const Threshold t = threshold_t(params.a, params.b);
  rep.extra["threshold"] = t.to_string();
  rep.extra["settled"] = t.admits(params.r);
  if (oracle) {
    const IntegralReduction red = integral_reduction(params);
    rep.extra["reduction"] = {{"k", red.k}, {"l", red.l}, {"A", red.A}, {"B", red.B}};
    const double numeric = std::abs(integral_numeric(params, cap));
    rep.numeric = numeric;
    rep.deviation = std::abs(numeric - closed.norm.to_double());
    rep.pass = rep.deviation <= abs_tol;
  }
  return rep;
}

inline Json to_json(const NormReport& rep) {
  Json j = {{"case", static_cast<int>(rep.which)},
            {"case_label", case_label(rep.which)},
            {"closed_exact", rep.closed.to_string()},
            {"closed", round12(rep.closed.to_double())},
            {"params", rep.params},
            {"pass", rep.pass}};
  if (rep.numeric) {
    j["numeric"] = round12(*rep.numeric);
    j["deviation"] = round12(rep.deviation);
    j["tolerance"] = rep.tolerance;
  } else {
    j["numeric"] = nullptr;
  }
  if (rep.normsq_exact) j["normsq_exact"] = *rep.normsq_exact;
  for (const auto& [key, value] : rep.extra.items()) j[key] = value;
  return j;
}

// ---------------------------------------------------------------------------
// Finite-field MUBs.

inline Json to_json(const MubReport& rep, const FieldPtr& field, const std::vector<BasisMatrix>& bases) {
  Json pairs = Json::array();
  for (const auto& s : rep.pairs) {
    pairs.push_back({{"first", bases[s.first].label_string()},
                     {"second", bases[s.second].label_string()},
                     {"min_modulus", round12(s.min_modulus)},
                     {"max_modulus", round12(s.max_modulus)},
                     {"max_deviation", round12(s.max_deviation)}});
  }
  Json orth = Json::array();
  for (double e : rep.orthonormality_error) orth.push_back(round12(e));
  return {{"field", {{"p", field->prime()}, {"r", field->degree()}, {"modulus", field->modulus()}}},
          {"dimension", rep.dimension},
          {"bases", bases.size()},
          {"target_modulus", round12(rep.target_modulus)},
          {"tolerances", {{"unbiased", rep.tolerances.unbiased}, {"orthonormal", rep.tolerances.orthonormal}}},
          {"pairs", pairs},
          {"orthonormality_error", orth},
          {"max_deviation", round12(rep.max_deviation)},
          {"max_orthonormality_error", round12(rep.max_orthonormality_error)},
          {"pass", rep.pass}};
}

/// One line per matrix row: basis label, row x, then re,im for each column.
inline std::string bases_csv(const std::vector<BasisMatrix>& bases) {
  std::ostringstream out;
  out << "basis,row";
  const Eigen::Index d = bases.empty() ? 0 : bases.front().columns.cols();
  for (Eigen::Index c = 0; c < d; ++c) out << ",re" << c << ",im" << c;
  out << "\n";
  for (const auto& b : bases) {
    for (Eigen::Index x = 0; x < b.columns.rows(); ++x) {
      out << b.label_string() << "," << x;
      for (Eigen::Index c = 0; c < d; ++c) {
        out << "," << format12(b.columns(x, c).real()) << "," << format12(b.columns(x, c).imag());
      }
      out << "\n";
    }
  }
  return out.str();
}

inline Json bases_json(const std::vector<BasisMatrix>& bases) {
  Json all = Json::array();
  for (const auto& b : bases) {
    Json rows = Json::array();
    for (Eigen::Index x = 0; x < b.columns.rows(); ++x) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < b.columns.cols(); ++c) {
        row.push_back({round12(b.columns(x, c).real()), round12(b.columns(x, c).imag())});
      }
      rows.push_back(std::move(row));
    }
    all.push_back({{"label", b.label_string()}, {"rows", std::move(rows)}});
  }
  return {{"schema", kSchemaVersion}, {"bases", std::move(all)}};
}

// ---------------------------------------------------------------------------
// p-adic states and Gram tables.

inline Json to_json(const Grid& g) { return {{"p", g.prime()}, {"r", g.r()}, {"k", g.k()}}; }

inline Json to_json(const StateVector& v) {
  Json amps = Json::array();
  for (const auto& z : v.amplitudes) amps.push_back({round12(z.real()), round12(z.imag())});
  return {{"grid", to_json(v.grid)}, {"amplitudes", std::move(amps)}};
}

inline Json to_json(const GramReport& rep) {
  Json params = Json::array();
  for (const auto& u : rep.params) params.push_back({{"a", u.family()}, {"b", u.b.to_string()}});
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"i", e.i},
                       {"j", e.j},
                       {"modulus", round12(e.modulus)},
                       {"closed_exact", e.closed ? Json(e.closed->to_string()) : Json(nullptr)},
                       {"deviation", round12(e.deviation)},
                       {"certified", e.closed.has_value()}});
  }
  return {{"p", rep.p},
          {"requested_r", rep.requested_r},
          {"r", rep.r},
          {"raised", rep.r != rep.requested_r},
          {"k", rep.k},
          {"certified_from_r", rep.certified_from_r},
          {"params", std::move(params)},
          {"entries", std::move(entries)},
          {"max_deviation", round12(rep.max_deviation)},
          {"all_certified", rep.all_certified},
          {"families_orthogonal", rep.families_orthogonal},
          {"pass", rep.pass}};
}

inline std::string gram_csv(const GramReport& rep) {
  std::ostringstream out;
  out << "i,j,a_i,b_i,a_j,b_j,modulus,closed_exact,closed,deviation,certified\n";
  for (const auto& e : rep.entries) {
    const auto& u = rep.params[e.i];
    const auto& w = rep.params[e.j];
    out << e.i << "," << e.j << "," << u.family() << "," << u.b.to_string() << "," << w.family() << ","
        << w.b.to_string() << "," << format12(e.modulus) << ",";
    if (e.closed) {
      out << e.closed->to_string() << "," << format12(e.closed->to_double()) << "," << format12(e.deviation) << ",1\n";
    } else {
      out << ",,,0\n";
    }
  }
  return out.str();
}

inline Json to_json(const EigenReport& rep) {
  return {{"expected_phase", rep.expected_phase.to_string()},
          {"expected_turns", round12(rep.expected_phase.fraction().to_double())},
          {"measured_turns", round12(rep.measured_phase)},
          {"residual", round12(rep.residual)},
          {"exact_match", rep.exact_match}};
}

// ---------------------------------------------------------------------------
// Generic renderings used by the command-line tool.

/// Scalars as "path.key: value" lines; arrays of objects as aligned columns.
inline std::string render_table(const Json& j) {
  std::ostringstream out;
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  std::vector<std::pair<std::string, const Json*>> tables;
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& node, const std::string& prefix) {
    for (const auto& [key, value] : node.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (value.is_array() && !value.empty() && value.front().is_object()) {
        tables.emplace_back(name, &value);
      } else if (value.is_object()) {
        walk(value, name);
      } else {
        out << name << ": " << scalar(value) << "\n";
      }
    }
  };
  walk(j, "");
  for (const auto& [name, rows] : tables) {
    std::vector<std::string> columns;
    for (const auto& row : *rows) {
      for (const auto& [key, value] : row.items()) {
        if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
      }
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& c : columns) width.push_back(c.size());
    for (const auto& row : *rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        line.push_back(row.contains(columns[c]) ? scalar(row[columns[c]]) : "");
        width[c] = std::max(width[c], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    out << "\n" << name << ":\n";
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        out << (c ? "  " : "") << line[c];
        if (c + 1 < line.size()) out << std::string(width[c] - line[c].size(), ' ');
      }
      out << "\n";
    };
    emit(columns);
    for (const auto& line : cells) emit(line);
  }
  return out.str();
}

/// Flattened "key,value" lines, nested keys joined with '/'.
inline std::string render_flat_csv(const Json& j) {
  std::ostringstream out;
  out << "key,value\n";
  auto escape = [](std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  const Json flat = j.flatten();
  for (const auto& [key, value] : flat.items()) {
    out << escape(key.substr(1)) << "," << escape(value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return out.str();
}

}  // namespace padicmub
