#include <CLI11.hpp>

#include "fcuc/run.hpp"

using fcuc::run::RunConfig;

namespace {

void scenario_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("scenario", c.scenario_path, "scenario JSON file")->required();
  sub->add_option("--rocof-limit", c.rocof_limit, "RoCoF limit override, Hz/s");
  sub->add_option("--out", c.output_dir, std::string("output directory (else $") + fcuc::run::kOutputDirEnv + ")");
  sub->add_option_function<std::string>(
         "--format",
         [&c](const std::string& f) {
           c.formats.csv = f != "json";
           c.formats.json = f != "csv";
         },
         "csv|json|all")
      ->check(CLI::IsMember({"csv", "json", "all"}));
}

void pricing_options(CLI::App* sub, RunConfig& c, bool method_required) {
  static const std::map<std::string, fcuc::pricing::Method> methods{{"expost", fcuc::pricing::Method::ExPost},
                                                                    {"utility", fcuc::pricing::Method::Utility},
                                                                    {"uplift", fcuc::pricing::Method::Uplift}};
  static const std::map<std::string, fcuc::pricing::NegativeDualPolicy> policies{
      {"passthrough", fcuc::pricing::NegativeDualPolicy::Passthrough},
      {"clamp", fcuc::pricing::NegativeDualPolicy::Clamp},
      {"fix-utility", fcuc::pricing::NegativeDualPolicy::FixUtility}};
  static const std::map<std::string, fcuc::pricing::HdemRule> hdem{{"sum", fcuc::pricing::HdemRule::Sum},
                                                                     {"max", fcuc::pricing::HdemRule::Max}};
  static const std::map<std::string, fcuc::pricing::UpliftScope> scopes{
      {"extra-cells", fcuc::pricing::UpliftScope::ExtraCells}, {"all-units", fcuc::pricing::UpliftScope::AllUnits}};
  if (method_required) {
    sub->add_option_function<fcuc::pricing::Method>(
           "--method", [&c](fcuc::pricing::Method m) { c.method = m; }, "expost|utility|uplift")
        ->required()
        ->transform(CLI::CheckedTransformer(methods));
  }
  sub->add_option("--negative-dual", c.pricing.negative_dual, "passthrough|clamp|fix-utility")
      ->transform(CLI::CheckedTransformer(policies));
  sub->add_option("--hdem", c.pricing.hdem, "demand aggregation for the utility estimate: sum|max")
      ->transform(CLI::CheckedTransformer(hdem));
  sub->add_option("--utility", c.pricing.utility, "fixed utility of inertia, EUR/(MW s^2)");
  sub->add_option("--uplift-scope", c.pricing.uplift_scope, "extra-cells|all-units")
      ->transform(CLI::CheckedTransformer(scopes));
  sub->add_flag("--uplift-upper-term", c.pricing.uplift_upper_term, "add the upper-bound dual term to the uplift");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-constrained unit commitment and inertia pricing"};
  app.require_subcommand(1);
  RunConfig c;

  auto* solve = app.add_subcommand("solve", "two-step UC, writes dispatch and prices");
  scenario_options(solve, c);
  solve->add_flag("--vi", c.virtual_inertia, "schedule virtual inertia units");

  auto* price = app.add_subcommand("price", "inertia payments for one method");
  scenario_options(price, c);
  pricing_options(price, c, true);
  price->add_flag("--vi", c.virtual_inertia, "schedule virtual inertia units");

  auto* slack = app.add_subcommand("sweep-slack", "slack-inertia substitution curve");
  scenario_options(slack, c);
  slack->add_option("--grid", c.grid, "a,b,c in EUR/(MW s^2), or auto")->capture_default_str();

  auto* vi = app.add_subcommand("sweep-vi", "total payments against the VI bid");
  scenario_options(vi, c);
  pricing_options(vi, c, true);
  vi->add_option("--grid", c.grid, "a,b,c in EUR/(MW s^2), or auto")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "all three methods on one commitment");
  scenario_options(compare, c);
  pricing_options(compare, c, false);
  compare->add_flag("--vi", c.virtual_inertia, "schedule virtual inertia units");

  auto* freq = app.add_subcommand("freq-metrics", "RoCoF, nadir and steady-state deviation");
  auto& f = c.freq;
  freq->add_option("--dp", f.delta_p, "disturbance, p.u.")->required();
  freq->add_option("--m", f.params.M, "aggregate inertia, s")->required();
  freq->add_option("--d", f.params.D, "damping, p.u.")->required();
  freq->add_option("--rg", f.params.R_g, "droop gain, p.u.")->required();
  freq->add_option("--fg", f.params.F_g, "high-pressure fraction, p.u.")->required();
  freq->add_option("--t", f.params.T, "turbine time constant, s")->required();
  freq->add_option("--zeta", f.params.zeta, "damping ratio")->required();
  freq->add_option("--omega-n", f.params.omega_n, "natural frequency, rad/s")->required();
  freq->add_option("--tm", f.params.t_m, "time of nadir, s")->required();
  freq->add_option("--f0", f.f0, "nominal frequency, Hz")->capture_default_str();
  freq->add_option("--rocof-limit", c.rocof_limit, "RoCoF limit, Hz/s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? fcuc::run::kOk : fcuc::run::kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return fcuc::run::run(c);
}
