#pragma once

#include <string>
#include <vector>

#include "emph/learner.hpp"

namespace emphcli {

// Everything a command run needs: the training configuration plus I/O paths
// and command-specific knobs. Serialized as a flat key=value document whose
// keys mirror the field names.
struct RunConfig {
    emph::TrainConfig train;

    std::string input;            // dataset file; empty = synthesize
    std::string kind = "two-class"; // synthetic kind: two-class | three-class
    int per_class = 100;          // synthetic series per signal
    double noise = 1.0;           // synthetic noise standard deviation
    std::string output = ".";     // artifact directory
    std::string checkpoint;       // model file for eval
    std::string split = "test";   // eval subset: all | train | test
    std::string fixture;          // two-parameter fixture path; empty = builtin
    int index = 0;                // sample index for barcode/image
    std::string direction;       // explicit directions "a1,a2;b1,b2" (barcode/image)
    int k = 1;                    // landscape level
    int bench_samples = 400;
    int bench_length = 80;
    std::string lrs = "0.01,0.005";      // crossval grid
    std::string sigmas = "1,0.5,0.1";    // crossval grid
    std::string segment_grid = "1,2,3";  // crossval grid
};

// key=value text round trip ('#' starts a comment; keys mirror the field
// names; unknown keys are input errors). Loading starts from `base` so
// subcommand-specific defaults survive keys the file omits.
RunConfig load_config(const std::string& path, RunConfig base = RunConfig());
void save_config(const RunConfig& config, const std::string& path);
std::string config_to_text(const RunConfig& config);
RunConfig config_from_text(const std::string& text, RunConfig base = RunConfig());

// "1,5" -> {1, 5}; used for modes/hidden/grid flags.
std::vector<int> parse_int_list(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what);
// "1,1;3,1" -> {{1,1},{3,1}}: per-segment direction vectors.
std::vector<std::vector<double>> parse_directions(const std::string& text);

std::string join_int_list(const std::vector<int>& values);

} // namespace emphcli
