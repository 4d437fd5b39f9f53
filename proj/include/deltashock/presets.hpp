// Canned experiment configurations, reproducible from the CLI by name.
#pragma once

#include "deltashock/config.hpp"

#include <string>
#include <vector>

namespace deltashock {

// fig1: one sine breakup under each closure (viscous, dispersive, quenched).
// fig2: quenched flux on/off at matched resolution; the spike experiment.
// fig3: fine-grid shifted sine used for slope and profile prediction checks.
// fig4: grid/epsilon refinement ladder over the fig2 quenched setup.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace deltashock
