#pragma once

#include <string>
#include <vector>

#include "mzi/sweep.hpp"

namespace mzi {

// A named bundle of sweeps producing one data set (one CSV per curve plus
// a JSON manifest with every parameter).
struct FigureSpec {
    std::string id;
    std::string title;
    std::vector<SweepConfig> curves;
};

std::vector<std::string> figure_ids();

// Throws std::invalid_argument for unknown ids.
FigureSpec figure_spec(const std::string& id);

// Runs all curves of the figure and writes <id>_<label>.csv files plus
// <id>_manifest.json into out_dir. Optionally emits a gnuplot script.
// Returns the paths written.
std::vector<std::string> reproduce_figure(const std::string& id, const std::string& out_dir,
                                          bool emit_gnuplot);

} // namespace mzi
