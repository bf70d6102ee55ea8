// padicmub: command-line front end for the verification pipelines.
//
// Exit codes: 0 pass, 1 verification failure, 2 invalid input.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "padicmub/padicmub.hpp"

namespace {

using namespace padicmub;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Common {
  std::string format = "json";
  std::string out;
  std::optional<std::uint64_t> cap;
};

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path out(path);
  if (out.is_relative()) {
    if (const char* dir = std::getenv("PADICMUB_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      out = std::filesystem::path(dir) / out;
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  const auto target = resolve_output(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream file(target, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file " + target.string());
  file << text;
}

/// A finished command: the JSON document plus an optional native CSV.
struct Outcome {
  Json result;
  bool pass = true;
  std::optional<std::string> csv;
};

int emit(const Common& common, const std::string& command, const Json& config, const Outcome& outcome) {
  Json doc = {{"schema", kSchemaVersion}, {"command", command}, {"config", config}, {"result", outcome.result}};
  doc["pass"] = outcome.pass;
  std::string text;
  if (common.format == "json") {
    text = doc.dump(2) + "\n";
  } else if (common.format == "csv") {
    text = outcome.csv ? *outcome.csv : render_flat_csv(doc);
  } else {
    text = render_table(doc);
  }
  if (common.out.empty()) {
    std::cout << text;
  } else {
    write_text(common.out, text);
  }
  return outcome.pass ? kExitPass : kExitFail;
}

Json common_config(const Common& c) {
  Json j = {{"format", c.format}};
  if (c.cap) j["cap"] = *c.cap;
  return j;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(Rational::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InvalidArgument("empty b-sample list");
  return out;
}

// ---------------------------------------------------------------------------

struct GaussRingArgs {
  std::int64_t p = 3, k = 1, l = 1, a = 0, b = 0;
  bool oracle = false;
  double tol = 1e-6;
};

int run_gauss_ring(const Common& common, const GaussRingArgs& args) {
  const RingSumParams params{args.p, args.k, args.l, args.a, args.b};
  const NormReport rep = gauss_ring_report(params, args.oracle, common.cap.value_or(kDefaultTermCap), args.tol);
  Json config = common_config(common);
  config.update({{"p", args.p}, {"k", args.k}, {"l", args.l}, {"a", args.a}, {"b", args.b}, {"oracle", args.oracle}, {"tol", args.tol}});
  return emit(common, "gauss-ring", config, {to_json(rep), rep.pass, std::nullopt});
}

struct GaussIntegralArgs {
  std::int64_t p = 3, r = 0;
  std::string a = "0", b = "0";
  bool oracle = false;
  double tol = 1e-9;
};

int run_gauss_integral(const Common& common, const GaussIntegralArgs& args) {
  require_prime(args.p);
  const std::int64_t absolute = 2 * std::max<std::int64_t>(args.r, 0) + 4;
  const IntegralParams params{args.p, args.r, parse_coefficient(args.a, args.p, absolute),
                              parse_coefficient(args.b, args.p, absolute)};
  const NormReport rep = gauss_integral_report(params, args.oracle, common.cap.value_or(kDefaultTermCap), args.tol);
  Json config = common_config(common);
  config.update({{"p", args.p}, {"r", args.r}, {"a", args.a}, {"b", args.b}, {"oracle", args.oracle}, {"tol", args.tol}});
  return emit(common, "gauss-integral", config, {to_json(rep), rep.pass, std::nullopt});
}

struct MubFiniteArgs {
  std::int64_t p = 3;
  int r = 1;
  MubTolerances tol;
  std::string matrices_out;
};

int run_mub_finite(const Common& common, const MubFiniteArgs& args) {
  require_prime(args.p);
  if (args.p == 2) throw LemmaHypothesisError("MUB certification in characteristic 2");
  const std::uint64_t cap = common.cap.value_or(kDefaultMubCap);
  const FieldPtr field = build_field(args.p, args.r, std::max(cap, kDefaultFieldCap));
  const auto bases = build_mub_set(field, cap);
  const MubReport rep = verify_mub(bases, args.tol);
  if (!args.matrices_out.empty()) {
    const bool json = std::filesystem::path(args.matrices_out).extension() == ".json";
    write_text(args.matrices_out, json ? bases_json(bases).dump() + "\n" : bases_csv(bases));
  }
  std::string csv = "first,second,min_modulus,max_modulus,max_deviation\n";
  for (const auto& s : rep.pairs) {
    csv += bases[s.first].label_string() + "," + bases[s.second].label_string() + "," + format12(s.min_modulus) + "," +
           format12(s.max_modulus) + "," + format12(s.max_deviation) + "\n";
  }
  Json config = common_config(common);
  config.update({{"p", args.p}, {"r", args.r}, {"tol", args.tol.unbiased}, {"orth_tol", args.tol.orthonormal}});
  if (!args.matrices_out.empty()) config["matrices_out"] = args.matrices_out;
  return emit(common, "mub-finite", config, {to_json(rep, field, bases), rep.pass, csv});
}

struct MubPadicArgs {
  std::int64_t p = 3, r = 1;
  std::string bs;
  bool auto_raise = false;
  double tol = 1e-9;
};

int run_mub_padic(const Common& common, const MubPadicArgs& args) {
  require_prime(args.p);
  const std::vector<Rational> samples = args.bs.empty() ? default_b_samples(args.p) : parse_rational_list(args.bs);
  GramOptions opts;
  opts.tolerance = args.tol;
  opts.auto_raise = args.auto_raise;
  opts.cell_cap = common.cap.value_or(kDefaultCellCap);
  const GramReport rep = gram_report(args.p, canonical_params(args.p, samples), args.r, opts);
  Json config = common_config(common);
  Json bs = Json::array();
  for (const auto& b : samples) bs.push_back(b.to_string());
  config.update({{"p", args.p}, {"r", args.r}, {"bs", bs}, {"auto_raise", args.auto_raise}, {"tol", args.tol}});
  return emit(common, "mub-padic", config, {to_json(rep), rep.pass, gram_csv(rep)});
}

struct FourierBallArgs {
  std::int64_t p = 3, r = 0;
  std::string z = "0";
  std::optional<std::int64_t> grid_r, grid_k;
  double tol = 1e-10;
  std::string states_out;
};

int run_fourier_ball(const Common& common, const FourierBallArgs& args) {
  require_prime(args.p);
  const std::int64_t r = args.r;
  const Rational zq = args.z.find('*') == std::string::npos ? Rational::parse(args.z) : Rational(0);
  std::int64_t vz = 0;
  if (args.z.find('*') != std::string::npos) {
    const PadicNumber zz = PadicNumber::parse(args.z, args.p, 1);
    vz = zz.is_zero() ? 0 : zz.valuation().value();
  } else if (!zq.is_zero()) {
    vz = zq.valuation(args.p).value();
  }
  // Domain must contain the ball and z; resolution must see the ball.
  const std::int64_t R = args.grid_r.value_or(std::max<std::int64_t>({std::abs(r), -vz, 0}) + 1);
  const std::int64_t K = args.grid_k.value_or(std::max<std::int64_t>(r, 0) + 1);
  const Grid grid(args.p, R, K, common.cap.value_or(kDefaultCellCap));
  const PadicNumber z = parse_coefficient(args.z, args.p, working_precision(grid));
  const StateVector psi = ball_state(z, r, std::pow(static_cast<double>(args.p), static_cast<double>(r) / 2.0), grid);
  const StateVector hat = fourier(psi);
  const StateVector want = fourier_ball_expected(z, r, grid.dual());
  double worst = 0.0;
  std::size_t support = 0;
  for (std::size_t i = 0; i < hat.amplitudes.size(); ++i) {
    worst = std::max(worst, std::abs(hat.amplitudes[i] - want.amplitudes[i]));
    if (want.amplitudes[i] != std::complex<double>(0.0, 0.0)) ++support;
  }
  const double plancherel = std::abs(hat.norm() - psi.norm());
  const bool pass = worst <= args.tol && plancherel <= 1e-9;
  if (!args.states_out.empty()) {
    write_text(args.states_out, Json{{"schema", kSchemaVersion}, {"psi", to_json(psi)}, {"psi_hat", to_json(hat)}}.dump() + "\n");
  }
  Json result = {{"grid", to_json(grid)},
                 {"dual_grid", to_json(grid.dual())},
                 {"closed_form", "e(yz) " + std::to_string(args.p) + "^{" + std::to_string(-r) + "/2} on " +
                                     std::to_string(args.p) + "^{" + std::to_string(-r) + "}Z_p"},
                 {"support_cells", support},
                 {"max_pointwise_deviation", round12(worst)},
                 {"norm", round12(psi.norm())},
                 {"plancherel_deviation", round12(plancherel)},
                 {"pass", pass}};
  Json config = common_config(common);
  config.update({{"p", args.p}, {"r", r}, {"z", args.z}, {"grid_r", R}, {"grid_k", K}, {"tol", args.tol}});
  return emit(common, "fourier-ball", config, {result, pass, std::nullopt});
}

struct EigenArgs {
  std::int64_t p = 3;
  std::string a = "0", b = "0", c = "0";
  std::optional<std::int64_t> r, k;
  double tol = 1e-9;
};

int run_eigen_check(const Common& common, const EigenArgs& args) {
  require_prime(args.p);
  auto valuation_hint = [&](const std::string& text) -> Valuation {
    if (text.find('*') != std::string::npos) return PadicNumber::parse(text, args.p, 1).valuation();
    return Rational::parse(text).valuation(args.p);
  };
  const Valuation va = valuation_hint(args.a), vb = valuation_hint(args.b), vc = valuation_hint(args.c);
  const std::int64_t r = args.r.value_or(vc.is_finite() ? std::max<std::int64_t>(0, -vc.value()) : 0);
  std::int64_t k = std::max<std::int64_t>(required_resolution(va, vb, r), 1 - r);
  const Valuation v2ac = va + vc;  // v(2) = 0 for odd p
  if (v2ac.is_finite()) k = std::max(k, -v2ac.value());
  k = args.k.value_or(k);
  const Grid grid(args.p, r, k, common.cap.value_or(kDefaultCellCap));
  const std::int64_t absolute = working_precision(grid);
  const EigenReport rep = eigen_check(parse_coefficient(args.a, args.p, absolute), parse_coefficient(args.b, args.p, absolute),
                                      parse_coefficient(args.c, args.p, absolute), grid);
  const bool pass = rep.residual < args.tol && rep.exact_match;
  Json result = to_json(rep);
  result["grid"] = to_json(grid);
  result["pass"] = pass;
  Json config = common_config(common);
  config.update({{"p", args.p}, {"a", args.a}, {"b", args.b}, {"c", args.c}, {"r", r}, {"k", k}, {"tol", args.tol}});
  return emit(common, "eigen-check", config, {result, pass, std::nullopt});
}

struct SweepArgs {
  std::string suite;
  std::uint64_t seed = 1;
};

int run_sweep(const Common& common, const SweepArgs& args) {
  const std::vector<SuiteResult> results = run_suite(args.suite, args.seed);
  Json suites = Json::array();
  bool pass = true;
  std::string csv = "suite,checks,failures,skipped,pass\n";
  for (const auto& s : results) {
    suites.push_back(to_json(s));
    pass = pass && s.pass();
    csv += s.name + "," + std::to_string(s.checks) + "," + std::to_string(s.failures) + "," + std::to_string(s.skipped) +
           "," + (s.pass() ? "1" : "0") + "\n";
  }
  Json config = common_config(common);
  config.update({{"suite", args.suite}, {"seed", args.seed}});
  return emit(common, "sweep", config, {{{"suites", suites}, {"pass", pass}}, pass, csv});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic mutually unbiased bases: closed forms checked against brute-force oracles"};
  app.require_subcommand(1);
  Common common;
  std::uint64_t cap = 0;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", common.out, "Write the report here (relative paths resolve against $PADICMUB_OUTPUT_DIR)");
  auto* cap_opt = app.add_option("--cap", cap, "Cap on summation terms, grid cells or matrix dimension");

  GaussRingArgs ring;
  auto* cmd_ring = app.add_subcommand("gauss-ring", "Gauss sum over Z/p^k Z with character of order p^l");
  cmd_ring->add_option("-p", ring.p, "Prime")->required();
  cmd_ring->add_option("-k", ring.k, "Summation range exponent")->required();
  cmd_ring->add_option("-l", ring.l, "Character exponent")->required();
  cmd_ring->add_option("-a", ring.a, "Quadratic coefficient")->required();
  cmd_ring->add_option("-b", ring.b, "Linear coefficient")->required();
  cmd_ring->add_flag("--oracle", ring.oracle, "Also run the direct sum and the counting identity");
  cmd_ring->add_option("--tol", ring.tol, "Relative tolerance for the direct sum");

  GaussIntegralArgs integral;
  auto* cmd_integral = app.add_subcommand("gauss-integral", "Gauss integral over p^{-r} Z_p");
  cmd_integral->add_option("-p", integral.p, "Prime")->required();
  cmd_integral->add_option("-r", integral.r, "Ball exponent (domain p^{-r} Z_p)")->required();
  cmd_integral->add_option("-a", integral.a, "Quadratic coefficient: num/den or \"d0 d1 ... * p^v\"")->required();
  cmd_integral->add_option("-b", integral.b, "Linear coefficient: num/den or \"d0 d1 ... * p^v\"")->required();
  cmd_integral->add_flag("--oracle", integral.oracle, "Also evaluate the reduced finite sum");
  cmd_integral->add_option("--tol", integral.tol, "Absolute tolerance");

  MubFiniteArgs finite;
  auto* cmd_finite = app.add_subcommand("mub-finite", "Build and verify the p^r + 1 bases of C^{p^r}");
  cmd_finite->add_option("-p", finite.p, "Prime")->required();
  cmd_finite->add_option("-r", finite.r, "Extension degree")->required();
  cmd_finite->add_option("--tol", finite.tol.unbiased, "Tolerance on cross moduli");
  cmd_finite->add_option("--orth-tol", finite.tol.orthonormal, "Tolerance on orthonormality");
  cmd_finite->add_option("--matrices-out", finite.matrices_out, "Export the bases (.json or .csv)");

  MubPadicArgs padic;
  auto* cmd_padic = app.add_subcommand("mub-padic", "Gram table of the p + 1 families on a finite grid");
  cmd_padic->add_option("-p", padic.p, "Prime")->required();
  cmd_padic->add_option("-r", padic.r, "Truncation exponent")->required();
  cmd_padic->add_option("--bs", padic.bs, "Comma-separated b samples (default 0,...,p-1)");
  cmd_padic->add_flag("--auto-raise", padic.auto_raise, "Raise r until every pair is certified");
  cmd_padic->add_option("--tol", padic.tol, "Absolute tolerance");

  FourierBallArgs ball;
  auto* cmd_ball = app.add_subcommand("fourier-ball", "Fourier transform of a normalized ball indicator");
  cmd_ball->add_option("-p", ball.p, "Prime")->required();
  cmd_ball->add_option("-r", ball.r, "Ball z + p^r Z_p")->required();
  cmd_ball->add_option("-z", ball.z, "Ball center");
  cmd_ball->add_option("--grid-r", ball.grid_r, "Override grid domain exponent");
  cmd_ball->add_option("--grid-k", ball.grid_k, "Override grid resolution exponent");
  cmd_ball->add_option("--tol", ball.tol, "Pointwise tolerance");
  cmd_ball->add_option("--states-out", ball.states_out, "Export psi and its transform as JSON");

  EigenArgs eigen;
  auto* cmd_eigen = app.add_subcommand("eigen-check", "Check X_c Z_{2ac} v(a,b) = e(-bc - ac^2) v(a,b)");
  cmd_eigen->add_option("-p", eigen.p, "Prime")->required();
  cmd_eigen->add_option("-a", eigen.a, "Quadratic coefficient")->required();
  cmd_eigen->add_option("-b", eigen.b, "Linear coefficient")->required();
  cmd_eigen->add_option("-c", eigen.c, "Translation")->required();
  cmd_eigen->add_option("-r", eigen.r, "Grid domain exponent");
  cmd_eigen->add_option("-k", eigen.k, "Grid resolution exponent");
  cmd_eigen->add_option("--tol", eigen.tol, "Residual tolerance");

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Run a named verification suite");
  cmd_sweep->add_option("suite", sweep.suite, "gauss-grid, integral-grid, thresholds, mub-finite, mub-padic, fourier, "
                                              "operators, arithmetic or all")
      ->required();
  cmd_sweep->add_option("--seed", sweep.seed, "Seed for randomized samples");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInvalid;
  }
  if (cap_opt->count() > 0) common.cap = cap;

  try {
    if (*cmd_ring) return run_gauss_ring(common, ring);
    if (*cmd_integral) return run_gauss_integral(common, integral);
    if (*cmd_finite) return run_mub_finite(common, finite);
    if (*cmd_padic) return run_mub_padic(common, padic);
    if (*cmd_ball) return run_fourier_ball(common, ball);
    if (*cmd_eigen) return run_eigen_check(common, eigen);
    if (*cmd_sweep) return run_sweep(common, sweep);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInvalid;
}
