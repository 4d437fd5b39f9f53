// Joint refinement study: halve dx and quarter epsilon per level, rerun the
// same experiment, and tabulate the measured spike at the final time.
#pragma once

#include "deltashock/analysis.hpp"
#include "deltashock/config.hpp"

#include <string>
#include <vector>

namespace deltashock {

struct ConvergenceRow {
    int level = 0;
    double dx = 0.0;
    double epsilon = 0.0;
    bool spike_found = false;
    double width = 0.0;
    double peak_pos = 0.0;
    double peak_neg = 0.0;
    double net_mass = 0.0;
    double location = 0.0;
};

// Level j runs with cells*2^j and epsilon/4^j, keeping dx/sqrt(epsilon)
// fixed. Requires levels >= 3 and a positive base epsilon.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int levels,
                                              double spike_threshold = 3.0);

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

}  // namespace deltashock
