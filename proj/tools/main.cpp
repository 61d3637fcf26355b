// hardylab command-line tool: construct Hardy states, evaluate and scan the
// contradiction probability, decompose states, enumerate local strategies and
// run seeded sampling experiments, with JSON/CSV output for plotting.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hardylab/hardylab.hpp"

namespace {

using nlohmann::json;
using namespace hardylab;

constexpr int kSchemaVersion = 1;

struct Opts {
  double theta_a = 0.0;
  double theta_a_prime = 0.0;
  double theta_b = 0.0;
  double theta_b_prime = 0.0;
  double theta_1 = 0.0;
  double theta_2 = 0.0;
  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_a_prime = nullptr;
  CLI::Option* opt_b = nullptr;
  CLI::Option* opt_b_prime = nullptr;
  CLI::Option* opt_1 = nullptr;
  CLI::Option* opt_2 = nullptr;

  HardyVariant variant = HardyVariant::Original;
  std::string format = "json";
  std::string output_path;
  int resolution = 0;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double zero_tol = -1.0;

  bool absolute_given() const {
    return opt_a->count() > 0 || opt_a_prime->count() > 0 ||
           opt_b->count() > 0 || opt_b_prime->count() > 0;
  }
  bool relative_given() const {
    return opt_1->count() > 0 || opt_2->count() > 0;
  }
};

void add_setup_flags(CLI::App* cmd, Opts& o) {
  const auto range = CLI::Range(-720.0, 720.0);
  o.opt_a = cmd->add_option("--theta-a", o.theta_a,
                            "First measurement direction on side a (degrees)")
                ->check(range);
  o.opt_a_prime =
      cmd->add_option("--theta-a-prime", o.theta_a_prime,
                      "Second measurement direction on side a (degrees)")
          ->check(range);
  o.opt_b = cmd->add_option("--theta-b", o.theta_b,
                            "First measurement direction on side b (degrees)")
                ->check(range);
  o.opt_b_prime =
      cmd->add_option("--theta-b-prime", o.theta_b_prime,
                      "Second measurement direction on side b (degrees)")
          ->check(range);
  o.opt_1 = cmd->add_option(
                   "--theta1", o.theta_1,
                   "Relative angle theta_1 in degrees (sets theta_a = 0)")
               ->check(range);
  o.opt_2 = cmd->add_option(
                   "--theta2", o.theta_2,
                   "Relative angle theta_2 in degrees (sets theta_b = 0)")
               ->check(range);
}

void add_variant_flag(CLI::App* cmd, Opts& o) {
  static const std::map<std::string, HardyVariant> names{
      {"original", HardyVariant::Original},
      {"flip-both", HardyVariant::FlipBoth},
      {"flip-a", HardyVariant::FlipA},
      {"flip-b", HardyVariant::FlipB}};
  cmd->add_option("--variant", o.variant,
                  "Hardy condition variant: original, flip-both, flip-a, "
                  "flip-b")
      ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
}

void add_output_flags(CLI::App* cmd, Opts& o, bool csv_allowed) {
  const std::vector<std::string> formats =
      csv_allowed ? std::vector<std::string>{"json", "csv"}
                  : std::vector<std::string>{"json"};
  cmd->add_option("--format", o.format, "Output format")
      ->transform(CLI::IsMember(formats));
  cmd->add_option("--output", o.output_path,
                  "Write the result to this file instead of standard output");
}

void reject_mixed_angles(const Opts& o) {
  if (o.absolute_given() && o.relative_given()) {
    throw CLI::ValidationError(
        "angles", "give either --theta1/--theta2 or the four absolute "
                  "directions, not both");
  }
}

MeasurementSetup resolve_setup(const Opts& o) {
  reject_mixed_angles(o);
  if (o.relative_given()) {
    if (o.opt_1->count() == 0 || o.opt_2->count() == 0) {
      throw CLI::ValidationError(
          "angles", "the relative form needs both --theta1 and --theta2");
    }
    return MeasurementSetup::from_relative(
        Angle::degrees(o.theta_1).normalized(),
        Angle::degrees(o.theta_2).normalized());
  }
  if (o.absolute_given()) {
    if (o.opt_a->count() == 0 || o.opt_a_prime->count() == 0 ||
        o.opt_b->count() == 0 || o.opt_b_prime->count() == 0) {
      throw CLI::ValidationError(
          "angles", "the absolute form needs --theta-a, --theta-a-prime, "
                    "--theta-b and --theta-b-prime");
    }
    MeasurementSetup s;
    s.theta_a = Angle::degrees(o.theta_a).normalized();
    s.theta_a_prime = Angle::degrees(o.theta_a_prime).normalized();
    s.theta_b = Angle::degrees(o.theta_b).normalized();
    s.theta_b_prime = Angle::degrees(o.theta_b_prime).normalized();
    return s;
  }
  throw CLI::ValidationError(
      "angles", "a measurement setup is required: --theta1/--theta2 or the "
                "four absolute directions");
}

int scan_threads_from_env() {
  const char* env = std::getenv("HARDY_LAB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1 || value > 4096) {
    throw CLI::ValidationError(
        "HARDY_LAB_THREADS",
        std::string("invalid thread count '") + env + "'");
  }
  return static_cast<int>(value);
}

std::string format_17g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Opts& o, const std::string& text) {
  if (o.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output_path, std::ios::binary);
  if (!out) {
    throw CLI::ValidationError("--output",
                               "cannot open '" + o.output_path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing to '" + o.output_path + "'");
  }
}

void emit_json(const Opts& o, const json& doc) { emit(o, doc.dump(2) + "\n"); }

json setup_json(const MeasurementSetup& s) {
  return json{{"theta_a_deg", s.theta_a.deg()},
              {"theta_a_prime_deg", s.theta_a_prime.deg()},
              {"theta_b_deg", s.theta_b.deg()},
              {"theta_b_prime_deg", s.theta_b_prime.deg()},
              {"theta_1_deg", s.theta_1().normalized().deg()},
              {"theta_2_deg", s.theta_2().normalized().deg()}};
}

json report_json(const HardyReport& r) {
  return json{{"p1a", r.p1a},     {"p1b", r.p1b},
              {"p1c", r.p1c},     {"p1d", r.p1d},
              {"zero_tol", r.zero_tol}, {"variant", variant_name(r.variant)},
              {"holds", r.holds}};
}

json state_json(const TwoQubitState& s) {
  return json{{"c_pp", s.c_pp}, {"c_pm", s.c_pm},
              {"c_mp", s.c_mp}, {"c_mm", s.c_mm}};
}

json squared_json(const TwoQubitState& s) {
  return json{{"c_pp", s.c_pp * s.c_pp}, {"c_pm", s.c_pm * s.c_pm},
              {"c_mp", s.c_mp * s.c_mp}, {"c_mm", s.c_mm * s.c_mm}};
}

void run_construct(const Opts& o) {
  const MeasurementSetup setup = resolve_setup(o);
  const TwoQubitState state =
      apply_variant(construct_state(setup), o.variant);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "construct"},
           {"setup", setup_json(setup)},
           {"variant", variant_name(o.variant)},
           {"coefficients", state_json(state)},
           {"squared_coefficients", squared_json(state)},
           {"norm_squared", state.norm_squared()}};
  emit_json(o, doc);
}

void run_check(const Opts& o) {
  const MeasurementSetup setup = resolve_setup(o);
  const double tol = o.zero_tol < 0.0 ? kDefaultZeroTol : o.zero_tol;
  const TwoQubitState state =
      apply_variant(construct_state(setup), o.variant);
  const HardyReport report = check_conditions(state, setup, o.variant, tol);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "check"},
           {"setup", setup_json(setup)},
           {"report", report_json(report)}};
  emit_json(o, doc);
}

void run_prob(const Opts& o) {
  json doc{{"schema_version", kSchemaVersion}, {"command", "prob"}};
  if (o.relative_given() && o.opt_2->count() == 0) {
    reject_mixed_angles(o);
    const Angle theta = Angle::degrees(o.theta_1).normalized();
    doc["mode"] = "diagonal";
    doc["theta_deg"] = theta.deg();
    doc["probability"] = probability_diagonal(theta);
  } else {
    const MeasurementSetup setup = resolve_setup(o);
    const Angle t1 = setup.theta_1().normalized();
    const Angle t2 = setup.theta_2().normalized();
    doc["mode"] = "point";
    doc["theta_1_deg"] = t1.deg();
    doc["theta_2_deg"] = t2.deg();
    doc["probability"] = probability_closed_form(t1, t2);
  }
  emit_json(o, doc);
}

void run_scan(const Opts& o) {
  const GridScan grid = scan(o.resolution, scan_threads_from_env());
  const std::size_t n = grid.resolution;
  if (o.format == "csv") {
    std::string text = "theta1_deg,theta2_deg,probability\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        text += format_17g(grid.theta_1_axis[i].deg());
        text += ',';
        text += format_17g(grid.theta_2_axis[j].deg());
        text += ',';
        text += format_17g(grid.value(i, j));
        text += '\n';
      }
    }
    emit(o, text);
    return;
  }
  json values = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(grid.value(i, j));
    values.push_back(std::move(row));
  }
  json axis1 = json::array();
  json axis2 = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    axis1.push_back(grid.theta_1_axis[i].deg());
    axis2.push_back(grid.theta_2_axis[i].deg());
  }
  json doc{{"schema_version", kSchemaVersion},
           {"command", "scan"},
           {"resolution", n},
           {"theta_1_deg", std::move(axis1)},
           {"theta_2_deg", std::move(axis2)},
           {"values", std::move(values)}};
  emit_json(o, doc);
}

void run_slice(const Opts& o) {
  if (o.resolution < 2) {
    throw CLI::ValidationError("--resolution", "must be at least 2");
  }
  const std::size_t n = static_cast<std::size_t>(o.resolution);
  const double step = 360.0 / static_cast<double>(n - 1);
  std::vector<double> angles(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    angles[i] = static_cast<double>(i) * step;
    values[i] = probability_diagonal(Angle::degrees(angles[i]));
  }
  if (o.format == "csv") {
    std::string text = "theta_deg,probability\n";
    for (std::size_t i = 0; i < n; ++i) {
      text += format_17g(angles[i]);
      text += ',';
      text += format_17g(values[i]);
      text += '\n';
    }
    emit(o, text);
    return;
  }
  json doc{{"schema_version", kSchemaVersion},
           {"command", "slice"},
           {"resolution", n},
           {"theta_deg", angles},
           {"probability", values}};
  emit_json(o, doc);
}

const char* tag_name(EntanglementTag tag) {
  switch (tag) {
    case EntanglementTag::Product: return "product";
    case EntanglementTag::Partial: return "partial";
    case EntanglementTag::Maximal: return "maximal";
  }
  return "unknown";
}

void run_schmidt(const Opts& o) {
  const MeasurementSetup setup = resolve_setup(o);
  const TwoQubitState state =
      apply_variant(construct_state(setup), o.variant);
  const SchmidtForm form = decompose(state);
  const EntanglementClass cls = classify(form);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "schmidt"},
           {"setup", setup_json(setup)},
           {"variant", variant_name(o.variant)},
           {"schmidt",
            json{{"lambda_plus", form.lambda_plus},
                 {"lambda_minus", form.lambda_minus},
                 {"phi_a_deg", form.phi_a.deg()},
                 {"phi_b_deg", form.phi_b.deg()},
                 {"sign_plus", form.sign_plus},
                 {"sign_minus", form.sign_minus},
                 {"degenerate", form.degenerate}}},
           {"classification",
            json{{"tag", tag_name(cls.tag)},
                 {"concurrence_like", cls.concurrence_like}}}};
  emit_json(o, doc);
}

void run_optimize(const Opts& o) {
  if (o.resolution < 16) {
    throw CLI::ValidationError("--resolution", "must be at least 16");
  }
  const std::vector<Optimum> optima = find_maxima(o.resolution);
  json list = json::array();
  for (const Optimum& opt : optima) {
    list.push_back(json{{"theta_1_deg", opt.theta_1.normalized().deg()},
                        {"theta_2_deg", opt.theta_2.normalized().deg()},
                        {"p_max", opt.p_max}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"command", "optimize"},
           {"coarse_resolution", o.resolution},
           {"optima", std::move(list)}};
  if (!optima.empty()) {
    const GoldenCheck check = verify_golden(optima.front());
    doc["golden_check"] =
        json{{"max_deviation", check.max_deviation},
             {"tau_identity_residual", check.tau_identity_residual}};
  }
  emit_json(o, doc);
}

void run_lhv(const Opts& o) {
  const std::vector<LhvStrategy> consistent = enumerate_consistent(o.variant);
  json strategies = json::array();
  for (const LhvStrategy& s : consistent) {
    strategies.push_back(json{{"a", s.a},
                              {"a_prime", s.a_prime},
                              {"b", s.b},
                              {"b_prime", s.b_prime}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"command", "lhv"},
           {"variant", variant_name(o.variant)},
           {"strategy_count", consistent.size()},
           {"strategies", std::move(strategies)},
           {"bound", lhv_bound(o.variant)}};
  if (o.absolute_given() || o.relative_given()) {
    const MeasurementSetup setup = resolve_setup(o);
    const TwoQubitState state =
        apply_variant(construct_state(setup), o.variant);
    const HardyReport report = check_conditions(state, setup, o.variant);
    const ChainTrace chain = logic_chain(report);
    json steps = json::array();
    for (const ChainStep& step : chain.steps) {
      steps.push_back(json{{"statement", step.statement},
                           {"probability", step.probability}});
    }
    doc["setup"] = setup_json(setup);
    doc["chain"] = json{
        {"steps", std::move(steps)},
        {"contradiction_magnitude", chain.contradiction_magnitude}};
  }
  emit_json(o, doc);
}

void run_sample(const Opts& o) {
  if (o.samples < 1) {
    throw CLI::ValidationError("--samples", "must be at least 1");
  }
  const MeasurementSetup setup = resolve_setup(o);
  const TwoQubitState state =
      apply_variant(construct_state(setup), o.variant);
  const SampleStats stats = sample(state, setup, o.samples, o.seed);
  const EstimatedReport est = estimate_report(stats, o.zero_tol, o.variant);
  json counts = json::array();
  for (const auto& row : stats.counts) counts.push_back(row);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "sample"},
           {"setup", setup_json(setup)},
           {"samples", stats.n_total},
           {"seed", stats.seed},
           {"counts", std::move(counts)},
           {"setting_trials", est.setting_trials},
           {"low_confidence", est.low_confidence},
           {"report", report_json(est.report)}};
  emit_json(o, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hardylab: two-spin Hardy nonlocality states, probabilities and "
      "sampling experiments"};
  app.require_subcommand(1);

  auto make = [&app](const char* name, const char* help) {
    auto opts = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand(name, help);
    return std::pair<CLI::App*, std::shared_ptr<Opts>>(cmd, opts);
  };

  {
    auto [cmd, o] = make("construct",
                         "Construct the unique Hardy state for a setup");
    add_setup_flags(cmd, *o);
    add_variant_flag(cmd, *o);
    add_output_flags(cmd, *o, false);
    cmd->callback([o] { run_construct(*o); });
  }
  {
    auto [cmd, o] = make("check",
                         "Evaluate the four Hardy condition probabilities");
    add_setup_flags(cmd, *o);
    add_variant_flag(cmd, *o);
    add_output_flags(cmd, *o, false);
    cmd->add_option("--zero-tol", o->zero_tol,
                    "Tolerance below which a probability counts as zero");
    cmd->callback([o] { run_check(*o); });
  }
  {
    auto [cmd, o] = make("prob",
                         "Closed-form contradiction probability at a point "
                         "(--theta1 alone: diagonal slice value)");
    add_setup_flags(cmd, *o);
    add_output_flags(cmd, *o, false);
    cmd->callback([o] { run_prob(*o); });
  }
  {
    auto [cmd, o] = make("scan",
                         "Probability surface over the relative-angle grid");
    o->resolution = 181;
    cmd->add_option("--resolution", o->resolution,
                    "Grid points per axis over [0, 360] degrees")
        ->check(CLI::Range(2, 100000));
    add_output_flags(cmd, *o, true);
    cmd->callback([o] { run_scan(*o); });
  }
  {
    auto [cmd, o] = make("slice",
                         "Probability along the equal-angle diagonal");
    o->resolution = 361;
    cmd->add_option("--resolution", o->resolution,
                    "Sample points over [0, 360] degrees")
        ->check(CLI::Range(2, 10000000));
    add_output_flags(cmd, *o, true);
    cmd->callback([o] { run_slice(*o); });
  }
  {
    auto [cmd, o] = make("schmidt",
                         "Schmidt decomposition of the constructed state");
    add_setup_flags(cmd, *o);
    add_variant_flag(cmd, *o);
    add_output_flags(cmd, *o, false);
    cmd->callback([o] { run_schmidt(*o); });
  }
  {
    auto [cmd, o] = make("optimize",
                         "Locate all maxima of the probability surface");
    o->resolution = 181;
    cmd->add_option("--resolution", o->resolution,
                    "Coarse grid resolution used to seed refinement")
        ->check(CLI::Range(16, 100000));
    add_output_flags(cmd, *o, false);
    cmd->callback([o] { run_optimize(*o); });
  }
  {
    auto [cmd, o] = make("lhv",
                         "Enumerate consistent local strategies; with a "
                         "setup, trace the logic chain");
    add_setup_flags(cmd, *o);
    add_variant_flag(cmd, *o);
    add_output_flags(cmd, *o, false);
    cmd->callback([o] { run_lhv(*o); });
  }
  {
    auto [cmd, o] = make("sample",
                         "Sample measurement outcomes and estimate the "
                         "Hardy report");
    add_setup_flags(cmd, *o);
    add_variant_flag(cmd, *o);
    add_output_flags(cmd, *o, false);
    cmd->add_option("--samples", o->samples, "Total number of trials");
    cmd->add_option("--seed", o->seed, "Root seed for the trial sequence");
    cmd->add_option("--zero-tol", o->zero_tol,
                    "Zero tolerance for the estimated report (negative: "
                    "statistical default)");
    cmd->callback([o] { run_sample(*o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const DegenerateSetup& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NotAHardyState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InsufficientSamples& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NotGolden& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
