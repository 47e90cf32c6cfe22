#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyq/experiments.hpp"
#include "polyq/verify.hpp"

namespace {

struct CliState {
  polyq::RunConfig cfg;
  std::string measure_name = "concurrence";
  double tsallis_q = 2.0;
  double renyi_alpha = 2.0;
  std::string mode_name = "parallel";
};

// Options shared by every experiment subcommand.
void add_common_options(CLI::App* sub, CliState& st) {
  sub->add_option("--measure", st.measure_name,
                  "Measure: concurrence, tangle, tsallis, renyi, eof, negativity")
      ->capture_default_str();
  sub->add_option("--q", st.tsallis_q, "Tsallis parameter (measure=tsallis)")
      ->capture_default_str();
  sub->add_option("--alpha", st.renyi_alpha, "Renyi parameter (measure=renyi)")
      ->capture_default_str();
  sub->add_option("--samples", st.cfg.samples,
                  "Sample count (0 = command default)");
  sub->add_option("--seed", st.cfg.seed, "Base RNG seed")->capture_default_str();
  sub->add_option("--restarts", st.cfg.optimizer.restarts,
                  "Optimizer restarts per assistance value")
      ->capture_default_str();
  sub->add_option("--ensemble-size", st.cfg.optimizer.ensemble_size,
                  "Decomposition size for the optimizer (0 = rank squared)");
  sub->add_option("--tol", st.cfg.tolerance,
                  "Degeneracy tolerance for classifications")
      ->capture_default_str();
  sub->add_option("--out", st.cfg.output_path,
                  "Output base path; writes <base>.json and <base>.csv "
                  "(default $POLYQ_OUT_DIR/<command> or ./<command>)");
  sub->add_option("--mode", st.mode_name, "Execution mode: serial or parallel")
      ->capture_default_str();
}

void add_family_options(CLI::App* sub, CliState& st) {
  sub->add_option("--family", st.cfg.family, "State family: gsd, w, haar")
      ->capture_default_str();
  sub->add_flag("--l2-lt-l3", st.cfg.lambda2_lt_lambda3,
                "Restrict gsd sampling to lambda2 < lambda3");
  sub->add_option("--qubits", st.cfg.num_qubits,
                  "Qubit count for the w/haar families (0 = default 3)");
}

int finish(const polyq::ReportFile& report, const polyq::RunConfig& cfg) {
  const std::string base = polyq::resolve_output_base(cfg);
  polyq::write_report(report, base);
  std::cout << report.summary.dump(2) << "\n";
  std::cout << "report: " << base << ".json, " << base << ".csv\n";
  if (report.failed) {
    std::cerr << "check failed; see report\n";
    return 1;
  }
  if (report.discrepancy) {
    std::cerr << "recorded-formula discrepancy flagged; see report\n";
    return 2;
  }
  return 0;
}

int run_verify(CliState& st) {
  std::vector<polyq::CriterionResult> results;
  if (st.cfg.suite.empty())
    results = polyq::run_all_criteria();
  else
    results.push_back(polyq::run_criterion_by_name(st.cfg.suite));
  for (const polyq::CriterionResult& r : results)
    std::cout << polyq::criterion_line(r) << "\n";
  return finish(polyq::verify_report(results, st.cfg), st.cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Entanglement toolkit: k-solution sets, polygamy powers, assistance "
      "optimization, and verification suites"};
  app.require_subcommand(1);
  CliState st;

  CLI::App* kset = app.add_subcommand(
      "kset", "Sample a family and classify the k-solution per state");
  add_common_options(kset, st);
  add_family_options(kset, st);
  kset->add_option("--mu", st.cfg.mu, "Exponent in the k equation")
      ->capture_default_str();

  CLI::App* power = app.add_subcommand(
      "power", "Sample a family and find the per-state polygamy power");
  add_common_options(power, st);
  add_family_options(power, st);

  CLI::App* wsat = app.add_subcommand(
      "w-saturation",
      "Squared-sum saturation and power pinning of the single-excitation family");
  add_common_options(wsat, st);
  wsat->add_option("--qubits", st.cfg.num_qubits,
                   "Single qubit count (0 = sweep 3..8)");

  CLI::App* gsdb = app.add_subcommand(
      "gsd-bound",
      "Certify the sqrt(2)+1 lower bound on k for the constrained five-term family");
  add_common_options(gsdb, st);
  gsdb->add_option("--mu", st.cfg.mu, "Exponent in the k equation")
      ->capture_default_str();

  CLI::App* polygon = app.add_subcommand(
      "polygon", "Triangle residuals of one-to-group values on three-qubit states");
  add_common_options(polygon, st);
  add_family_options(polygon, st);

  CLI::App* assist = app.add_subcommand(
      "assist", "Assistance value of a state loaded from a file");
  add_common_options(assist, st);
  assist->add_option("--state", st.cfg.state_path, "Input state file (JSON)")
      ->required();
  assist->add_option("--keep", st.cfg.keep,
                     "Parties kept before optimizing (default: all)");
  assist->add_option("--left", st.cfg.left,
                     "Left side of the cut, in kept-party indices (default: 0)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the acceptance criteria with pinned seeds");
  verify->add_option("--suite", st.cfg.suite,
                     "Single criterion name (default: all ten)");
  verify->add_option("--out", st.cfg.output_path, "Output base path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit 0, usage errors exit 1
  }

  try {
    st.cfg.command = app.get_subcommands().front()->get_name();
    const polyq::MeasureKind kind = polyq::parse_measure_kind(st.measure_name);
    double parameter = 0.0;
    if (kind == polyq::MeasureKind::Tsallis) parameter = st.tsallis_q;
    if (kind == polyq::MeasureKind::Renyi) parameter = st.renyi_alpha;
    st.cfg.measure = {kind, parameter};
    st.cfg.measure.validate();
    st.cfg.mode = polyq::parse_exec_mode(st.mode_name);
    // Sampling draws from stream 0 of the seed; the optimizer from stream 1.
    st.cfg.optimizer.rng = polyq::RngSeed{st.cfg.seed, 1};

    if (st.cfg.command == "verify") return run_verify(st);
    return finish(polyq::run_experiment(st.cfg), st.cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
