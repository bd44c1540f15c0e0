#pragma once
#include <cstdint>
#include <vector>

#include "syslab/report.hpp"

namespace syslab {

struct SweepOptions {
    std::vector<double> j_values;
    ResolutionPolicy policy;
    uint64_t seed = 0;
    double smoothing_delta = 0.1;
    int max_winding = 2;
    int max_multiple = 16;
};

/// One record per j: volume, sys_1 estimate, stable-norm bracket of the
/// z-circle class, both relative min cuts, and the calibrated pairing.
/// Deterministic for a fixed seed; a failing sub-computation aborts with
/// the offending j identified.
std::vector<SweepRecord> run_sweep(const SweepOptions& opts);

} // namespace syslab
