#pragma once

#include "polyq/families.hpp"
#include "polyq/report.hpp"

namespace polyq {

// GSD parameters with Dirichlet(1,...,1)-distributed squared coefficients
// (normalized exponentials) and a uniform phase. With `require_l2_lt_l3` the
// draw repeats until lambda2 < lambda3.
GSDParams sample_gsd(Rng& rng, bool require_l2_lt_l3);

// Normalized i.i.d. complex Gaussian single-excitation amplitudes.
WClassParams sample_w(int n, Rng& rng);

// Runs the configured experiment (kset, power, w-saturation, gsd-bound,
// polygon, assist) and returns the filled report. Throws on operational
// errors: unknown command or family, missing inputs, bad combinations.
ReportFile run_experiment(const RunConfig& cfg);

}  // namespace polyq
