#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polyq/experiments.hpp"

namespace {

// Runs the experiment in the given mode and returns wall seconds; the summary
// dump is the cross-mode equality witness.
double timed_run(polyq::RunConfig cfg, polyq::ExecMode mode, std::string* summary) {
  cfg.mode = mode;
  const auto t0 = std::chrono::steady_clock::now();
  const polyq::ReportFile report = polyq::run_experiment(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  *summary = report.summary.dump();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool bench(const std::string& label, const polyq::RunConfig& cfg) {
  std::string serial_summary, parallel_summary;
  const double ts = timed_run(cfg, polyq::ExecMode::Serial, &serial_summary);
  const double tp = timed_run(cfg, polyq::ExecMode::Parallel, &parallel_summary);
  const bool match = serial_summary == parallel_summary;
  std::printf("%-32s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n",
              label.c_str(), ts, tp, ts / tp,
              match ? "summaries identical" : "SUMMARY MISMATCH");
  return match;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional scale factor stretches every workload for longer measurements.
  const double scale = argc > 1 ? std::strtod(argv[1], nullptr) : 1.0;
  if (!(scale > 0)) {
    std::cerr << "usage: bench_sweep [scale>0]\n";
    return 1;
  }
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  bool ok = true;
  {
    polyq::RunConfig cfg;
    cfg.command = "kset";
    cfg.family = "gsd";
    cfg.samples = static_cast<std::uint64_t>(200000 * scale);
    cfg.seed = 99;
    ok &= bench("kset gsd (closed form)", cfg);
  }
  {
    polyq::RunConfig cfg;
    cfg.command = "power";
    cfg.family = "haar";
    cfg.num_qubits = 3;
    cfg.samples = static_cast<std::uint64_t>(20000 * scale);
    cfg.seed = 99;
    ok &= bench("power haar 3q (closed form)", cfg);
  }
  {
    polyq::RunConfig cfg;
    cfg.command = "kset";
    cfg.family = "gsd";
    cfg.measure = polyq::MeasureSpec::eof();
    cfg.samples = static_cast<std::uint64_t>(24 * scale);
    cfg.seed = 99;
    cfg.optimizer.rng = polyq::RngSeed{99, 1};
    ok &= bench("kset gsd eof (optimizer)", cfg);
  }
  return ok ? 0 : 1;
}
