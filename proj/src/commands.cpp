#include "cff/io/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <set>
#include <utility>

#include <CLI11.hpp>

#include "cff/approx.hpp"
#include "cff/erasure.hpp"
#include "cff/generate.hpp"
#include "cff/io/config.hpp"
#include "cff/io/report.hpp"

namespace cff::io {

namespace {

struct GlobalOptions {
  std::optional<double> tol;  // --tol or CFF_DEFAULT_TOL, else per-command default
  long long seed = 0;
  std::string out_path;
  bool pretty = false;
  int samples = 1000;

  double tol_or(double fallback) const { return tol ? *tol : fallback; }
};

std::optional<double> env_tolerance() {
  const char* env = std::getenv("CFF_DEFAULT_TOL");
  if (!env || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) return std::nullopt;
  return v;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Analysis reports go to stdout, and to --out as well when given. generate
// claims --out for the config file instead.
void emit(const Json& report, const GlobalOptions& g, std::ostream& out,
          bool out_is_report) {
  const std::string text = render(report, g.pretty);
  out << text;
  if (out_is_report && !g.out_path.empty()) write_text(g.out_path, text);
}

ControlledFusionSystem<Complex> to_complex(const ControlledFusionSystem<Real>& sys) {
  std::vector<WeightedSubspace<Complex>> members;
  members.reserve(sys.size());
  for (const WeightedSubspace<Real>& m : sys.members)
    members.push_back({Subspace<Complex>::from_columns(
                           m.subspace.basis.cast<Complex>()),
                       m.weight});
  return build_system<Complex>(
      make_controlled_pair<Complex>(sys.pair.c.cast<Complex>(),
                                    sys.pair.cprime.cast<Complex>()),
      std::move(members));
}

// Runs f on both systems over one scalar field, promoting to complex when
// the configs disagree.
template <typename F>
auto with_common_field(const LoadedSystem& a, const LoadedSystem& b, F&& f) {
  if (a.field == "real" && b.field == "real")
    return f(std::get<ControlledFusionSystem<Real>>(a.system),
             std::get<ControlledFusionSystem<Real>>(b.system));
  const ControlledFusionSystem<Complex> wa =
      a.field == "real"
          ? to_complex(std::get<ControlledFusionSystem<Real>>(a.system))
          : std::get<ControlledFusionSystem<Complex>>(a.system);
  const ControlledFusionSystem<Complex> wb =
      b.field == "real"
          ? to_complex(std::get<ControlledFusionSystem<Real>>(b.system))
          : std::get<ControlledFusionSystem<Complex>>(b.system);
  return f(wa, wb);
}

std::set<std::size_t> parse_indices(const std::string& text) {
  std::set<std::size_t> indices;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string piece = text.substr(pos, comma - pos);
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size() || piece.empty() || value < 1)
      throw ValidationError(
          "--indices: expected a comma-separated list of 1-based indices");
    indices.insert(static_cast<std::size_t>(value - 1));
    pos = comma + 1;
  }
  return indices;
}

int cmd_analyze(const std::string& cfg, const GlobalOptions& g, std::ostream& out) {
  const LoadedSystem in = load_system(cfg);
  const double tol = g.tol_or(kSymmetryTol);
  Stopwatch watch;
  Json report = envelope("analyze", {&in}, tol, g.seed, g.samples);
  Json result, verdicts;
  int exit_code = 0;

  std::visit(
      [&](const auto& sys) {
        const FusionBounds fb = fusion_frame_bounds(
            sys, tol, g.samples, static_cast<std::uint64_t>(g.seed));
        result["bounds"] = to_json(fb);

        Json offending = Json::array();
        for (std::size_t i : sys.offending_indices()) offending.push_back(i + 1);
        Json positivity;
        positivity["all_positive"] = sys.all_positive();
        positivity["offending"] = std::move(offending);
        result["positivity"] = std::move(positivity);

        const EigensumIdentity id = fusion_eigensum_identity(sys, tol);
        result["trace_identity"] = to_json(id);

        const bool positive = sys.all_positive();
        if (positive) {
          const SynthesisCharacterization sc =
              synthesis_characterization(sys, g.tol_or(1e-8));
          result["characterization"] = to_json(sc);
          verdicts["characterization_consistent"] = sc.consistent;
        } else {
          result["characterization"] = nullptr;
          verdicts["characterization_consistent"] = false;
          exit_code = 2;
        }
        verdicts["positivity_ok"] = positive;
        verdicts["classification"] = to_string(fb.bounds.classification);
        verdicts["is_frame"] =
            positive && fb.bounds.classification != FrameClass::NotAFrame &&
            fb.bounds.classification != FrameClass::Indefinite;
        verdicts["trace_identity_holds"] = id.holds;
        verdicts["rayleigh_ok"] = fb.rayleigh_violations == 0;
      },
      in.system);

  report["result"] = std::move(result);
  report["verdicts"] = std::move(verdicts);
  report["wall_time_ms"] = watch.elapsed_ms();
  emit(report, g, out, true);
  return exit_code;
}

int cmd_erase(const std::string& cfg, const std::string& indices_text,
              const GlobalOptions& g, std::ostream& out) {
  const LoadedSystem in = load_system(cfg);
  const std::set<std::size_t> parsed = parse_indices(indices_text);
  const std::vector<std::size_t> indices(parsed.begin(), parsed.end());
  const double tol = g.tol_or(kFixedPointTol);
  Stopwatch watch;
  Json report = envelope("erase", {&in}, tol, g.seed, g.samples);

  const ErasureReport er = std::visit(
      [&](const auto& sys) { return erasure_analysis(sys, indices, tol); },
      in.system);

  report["result"] = to_json(er);
  Json verdicts;
  verdicts["case"] = to_string(er.kase);
  verdicts["kernel_check"] = er.kernel_check;
  verdicts["theorem_holds"] = er.theorem_holds;
  report["verdicts"] = std::move(verdicts);
  report["wall_time_ms"] = watch.elapsed_ms();
  emit(report, g, out, true);
  return 0;
}

int cmd_error(const std::string& cfg, const GlobalOptions& g, std::ostream& out) {
  const LoadedSystem in = load_system(cfg);
  const double tol = g.tol_or(kSymmetryTol);
  Stopwatch watch;
  Json report = envelope("error", {&in}, tol, g.seed, g.samples);

  const E1Report er = std::visit(
      [&](const auto& sys) { return reconstruction_error(sys, tol); }, in.system);

  report["result"] = to_json(er);
  Json verdicts;
  verdicts["optimal"] = er.optimal;
  report["verdicts"] = std::move(verdicts);
  report["wall_time_ms"] = watch.elapsed_ms();
  emit(report, g, out, true);
  return 0;
}

int cmd_compose(const std::string& cfg_w, const std::string& cfg_z,
                const GlobalOptions& g, std::ostream& out) {
  const LoadedSystem w = load_system(cfg_w);
  const LoadedSystem z = load_system(cfg_z);
  Stopwatch watch;
  Json report = envelope("compose", {&w, &z}, g.tol_or(kSymmetryTol), g.seed,
                         g.samples);

  struct Outcome {
    double cross_norm;
    TraceClassReport trace_class;
  };
  const Outcome outcome = with_common_field(w, z, [](const auto& sw, const auto& sz) {
    return Outcome{operator_norm(cross_operator(sw, sz)),
                   trace_class_check(sw, sz)};
  });

  Json result;
  result["cross_operator_norm"] = outcome.cross_norm;
  result["trace_class"] = to_json(outcome.trace_class);
  report["result"] = std::move(result);
  Json verdicts;
  verdicts["trace_class_holds"] = outcome.trace_class.holds;
  verdicts["trace_class_holds_adjusted"] = outcome.trace_class.holds_adjusted;
  report["verdicts"] = std::move(verdicts);
  report["wall_time_ms"] = watch.elapsed_ms();
  emit(report, g, out, true);
  return 0;
}

int cmd_approx(const std::string& cfg_w, const std::string& cfg_z,
               const GlobalOptions& g, std::ostream& out) {
  const LoadedSystem w = load_system(cfg_w);
  const LoadedSystem z = load_system(cfg_z);
  const double tol = g.tol_or(kSymmetryTol);
  Stopwatch watch;
  Json report = envelope("approx", {&w, &z}, tol, g.seed, g.samples);

  const ApproxReport ar = with_common_field(
      w, z,
      [&](const auto& sw, const auto& sz) { return approximation_analysis(sw, sz, tol); });

  report["result"] = to_json(ar);
  Json verdicts;
  verdicts["applicable"] = ar.applicable;
  verdicts["holds"] = ar.holds;
  verdicts["holds_conservative"] = ar.holds_conservative;
  verdicts["dual_ok"] = ar.dual_ok;
  report["verdicts"] = std::move(verdicts);
  report["wall_time_ms"] = watch.elapsed_ms();
  emit(report, g, out, true);
  return ar.applicable ? 0 : 2;
}

struct GenerateOptions {
  Eigen::Index dim = 0;
  std::string dims_text;
  std::string mode = "c2";
  std::string field = "real";
  std::string weight_law = "uniform";
  double weight_value = 1.0;
};

int cmd_generate(const GenerateOptions& opt, const GlobalOptions& g,
                 std::ostream& out) {
  if (g.out_path.empty())
    throw ValidationError("generate: --out <path> is required");

  std::vector<Eigen::Index> dims;
  {
    const std::string& text = opt.dims_text;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      const std::string piece = text.substr(pos, comma - pos);
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(piece, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != piece.size() || piece.empty() || value < 1)
        throw ValidationError(
            "--dims: expected a comma-separated list of positive dimensions");
      dims.push_back(static_cast<Eigen::Index>(value));
      pos = comma + 1;
    }
  }

  ControlMode mode = ControlMode::C2;
  if (opt.mode == "identity")
    mode = ControlMode::Identity;
  else if (opt.mode == "c2")
    mode = ControlMode::C2;
  else if (opt.mode == "pair")
    mode = ControlMode::Pair;
  else
    throw ValidationError("--mode: expected identity, c2, or pair");

  WeightLaw law = WeightLaw::uniform_weights(opt.weight_value);
  if (opt.weight_law == "random")
    law = WeightLaw::random_weights();
  else if (opt.weight_law != "uniform")
    throw ValidationError("--weight-law: expected uniform or random");

  Stopwatch watch;
  Json config;
  bool all_positive = false;
  const std::uint64_t seed = static_cast<std::uint64_t>(g.seed);
  if (opt.field == "real") {
    const auto sys = generate_system<Real>(opt.dim, dims, mode, law, seed);
    config = system_to_config(sys);
    all_positive = sys.all_positive();
  } else if (opt.field == "complex") {
    const auto sys = generate_system<Complex>(opt.dim, dims, mode, law, seed);
    config = system_to_config(sys);
    all_positive = sys.all_positive();
  } else {
    throw ValidationError("--field: expected real or complex");
  }

  const std::string text = config.dump(2) + "\n";
  write_text(g.out_path, text);

  Json report = envelope("generate", {}, g.tol_or(kSymmetryTol), g.seed, g.samples);
  Json output;
  output["path"] = g.out_path;
  output["digest"] = fnv1a64(text);
  output["dimension"] = opt.dim;
  output["field"] = opt.field;
  output["members"] = dims.size();
  Json result;
  result["output"] = std::move(output);
  result["mode"] = opt.mode;
  result["weight_law"] = opt.weight_law;
  result["dims"] = dims;
  report["result"] = std::move(result);
  Json verdicts;
  verdicts["all_positive"] = all_positive;
  report["verdicts"] = std::move(verdicts);
  report["wall_time_ms"] = watch.elapsed_ms();
  emit(report, g, out, false);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"controlled frame and fusion frame analysis"};
  app.name("cff");
  app.require_subcommand(1);

  GlobalOptions global;
  double tol_value = 0.0;
  CLI::Option* tol_opt =
      app.add_option("--tol", tol_value, "tolerance override for all checks")
          ->check(CLI::PositiveNumber);
  app.add_option("--seed", global.seed, "seed for sampling and generation");
  app.add_option("--out", global.out_path,
                 "write the report here too; for generate, the config path");
  app.add_flag("--pretty", global.pretty, "indent the JSON report");
  app.add_option("--samples", global.samples, "Rayleigh sample count")
      ->check(CLI::PositiveNumber);

  std::string cfg_a, cfg_b, indices_text;
  GenerateOptions gen;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "bounds, trace identity, synthesis characterization");
  analyze->add_option("config", cfg_a, "system config file")->required();
  analyze->fallthrough();

  CLI::App* erase = app.add_subcommand("erase", "erasure case analysis");
  erase->add_option("config", cfg_a, "system config file")->required();
  erase->add_option("--indices", indices_text, "1-based member indices, comma-separated")
      ->required();
  erase->fallthrough();

  CLI::App* error_cmd =
      app.add_subcommand("error", "1-erasure reconstruction error");
  error_cmd->add_option("config", cfg_a, "system config file")->required();
  error_cmd->fallthrough();

  CLI::App* compose =
      app.add_subcommand("compose", "cross operator and trace-class check");
  compose->add_option("configW", cfg_a, "first system config")->required();
  compose->add_option("configZ", cfg_b, "second system config")->required();
  compose->fallthrough();

  CLI::App* approx =
      app.add_subcommand("approx", "approximation operator analysis");
  approx->add_option("configW", cfg_a, "first system config")->required();
  approx->add_option("configZ", cfg_b, "second system config")->required();
  approx->fallthrough();

  CLI::App* generate = app.add_subcommand("generate", "write a random system config");
  generate->add_option("--dim", gen.dim, "ambient dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--dims", gen.dims_text, "subspace dimensions, comma-separated")
      ->required();
  generate->add_option("--mode", gen.mode, "identity, c2, or pair");
  generate->add_option("--field", gen.field, "real or complex");
  generate->add_option("--weight-law", gen.weight_law, "uniform or random");
  generate->add_option("--weight-value", gen.weight_value,
                       "weight used by the uniform law");
  generate->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (tol_opt->count() > 0)
    global.tol = tol_value;
  else
    global.tol = env_tolerance();

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(cfg_a, global, out);
    if (app.got_subcommand(erase)) return cmd_erase(cfg_a, indices_text, global, out);
    if (app.got_subcommand(error_cmd)) return cmd_error(cfg_a, global, out);
    if (app.got_subcommand(compose)) return cmd_compose(cfg_a, cfg_b, global, out);
    if (app.got_subcommand(approx)) return cmd_approx(cfg_a, cfg_b, global, out);
    if (app.got_subcommand(generate)) return cmd_generate(gen, global, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const PositivityViolated& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const WeightMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyRemainder& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no subcommand selected\n";
  return 1;
}

}  // namespace cff::io
