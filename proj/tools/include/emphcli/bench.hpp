#pragma once

#include <cstdint>
#include <vector>

#include "emph/dataset.hpp"
#include "emph/learner.hpp"

namespace emphcli {

struct BenchSpec {
    int samples = 400;
    int length = 80;
    int epochs = 100;
    std::vector<int> modes = {1, 2, 3, 4, 5};
    int segments = 1;
    int resolution = 10;
    double sigma = 0.05;
    std::vector<int> hidden = {50};
    double lr = 0.001;
    std::uint64_t seed = 0;
};

struct BenchResult {
    double exact_seconds = 0.0;
    double fd_seconds = 0.0;
    double ratio = 0.0; // fd / exact
    // Largest relative difference between the two epoch-1 direction steps.
    double first_epoch_agreement = 0.0;
    int epochs = 0;
    int samples = 0;
    int modes = 0;
};

// Mixed-frequency noisy cosines, alternating labels; the workload both
// gradient loops share.
emph::Dataset bench_dataset(const BenchSpec& spec);

// Times `epochs` of filtration learning twice over the same data and
// initialization: once with the closed-form direction gradient, once
// replacing only that gradient by forward finite differences of the batch
// loss (N extra pipeline evaluations per epoch on top of the shared one).
// The finite-difference loss freezes each sample's min-max constants at
// their center values, which is the function the closed form
// differentiates; this also makes the epoch-1 steps comparable.
BenchResult run_bench(const BenchSpec& spec);

} // namespace emphcli
