#include <iostream>

#include "CLI11.hpp"
#include "period_lab/errors.hpp"
#include "period_lab/experiments.hpp"

int main(int argc, char** argv) {
  using namespace period_lab;
  using namespace period_lab::experiments;

  CLI::App app{"Verification campaigns for elliptic-surface period maps"};
  ExperimentConfig config;
  std::optional<double> step;
  std::optional<double> gap_tol;
  std::string format = "json";
  app.add_option("experiment", config.experiment, "Experiment name or 'all'")->required();
  app.add_option("--seed", config.seed, "Base seed");
  app.add_option("--trials", config.trials, "Number of trials");
  app.add_option("--step", step, "Finite-difference step");
  app.add_option("--gap-tol", gap_tol, "Singular-value gap tolerance");
  app.add_option("--n", config.torsion_order, "Torsion order for iif-torsion");
  app.add_option("--json", config.output, "Write the report to this path instead of stdout");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.footer("Experiments: lattice-audit, iib-special, iib-dominance, iif-dominance, iif-torsion, discriminant, "
             "limits-rank, all.\nPERIOD_LAB_TOLERANCES may name a JSON file of tolerance overrides.");
  CLI11_PARSE(app, argc, argv);

  try {
    config.tolerances = tolerances_from_environment();
    if (step) config.tolerances.step = *step;
    if (gap_tol) config.tolerances.gap_tol = *gap_tol;
    const auto report = run(config);
    const Format f = format == "text" ? Format::text : Format::json;
    if (config.output.empty()) {
      std::cout << emit(report, f);
    } else {
      write_report(report, config.output, f);
    }
    std::cerr << report.experiment << ": " << (report.passed() ? "pass" : "fail") << " in " << report.wall_seconds
              << " s\n";
    return report.passed() ? 0 : 1;
  } catch (const LabError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
