#pragma once

#include <string>
#include <vector>

#include "sclab/montecarlo.hpp"

namespace sclab {

// Experiment ids accepted by run_trials, in the order the front end lists
// them: homology, growth, chernoff, antialign, translation, turtle, rotation.
std::vector<std::string> experiment_ids();

// Runs the named experiment under the config and assembles the report:
// config echo, per-n summary rows, cross-n totals, raw samples, and the
// experiment's pass/fail gates. Reports never carry timestamps, so a rerun
// with the same config and master seed reproduces the bytes exactly.
Report run_trials(const std::string& experiment, const ExperimentConfig& config);

inline Report run_trials(const ExperimentConfig& config) {
    return run_trials(config.experiment, config);
}

// Rotation experiment with a caller-supplied generator set (the JSON shape
// parse_generator_set accepts). An empty string selects the built-in
// symmetric set of hyperbolic turtle steps and their inverses. The commuting
// control case (two opposite irrational circle translations) always runs
// alongside as the second summary row.
Report run_rotation_with_generators(const ExperimentConfig& config,
                                    const std::string& generator_set_json);

}  // namespace sclab
