#pragma once

#include "emphcli/config.hpp"

namespace emphcli {

// One function per subcommand. All throw emph::input_error for bad input
// (mapped to exit code 1 by main) and let anything else escape as an
// internal error (exit code 2); they return 0 on success.
int run_synth(const RunConfig& config);
int run_barcode(const RunConfig& config);
int run_image(const RunConfig& config);
int run_train(const RunConfig& config);
int run_eval(const RunConfig& config);
int run_crossval(const RunConfig& config);
int run_bench_command(const RunConfig& config);
int run_multipers_demo(const RunConfig& config);

} // namespace emphcli
