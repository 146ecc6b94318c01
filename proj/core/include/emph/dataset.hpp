#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "emph/spectral.hpp"

namespace emph {

// Labeled time series of one shared length with dense labels 0..classes-1.
struct Dataset {
    std::vector<TimeSeries> samples;
    int classes = 0;
    std::string provenance;

    std::size_t size() const { return samples.size(); }
    std::size_t length() const {
        return samples.empty() ? 0 : samples.front().samples.size();
    }
};

// Tab- or comma-separated file, label in the first column, one series per
// row (the UCR archive layout). Arbitrary label values are remapped densely
// to 0..C-1; the mapping is recorded in `provenance`. Ragged rows and parse
// failures raise input_error naming the line.
Dataset load_ucr(const std::string& path);

enum class SynthKind { TwoClass, ThreeClass };

// Synthetic benchmark generators, deterministic under seed:
//  - TwoClass: cos t vs cos 5t, length 36, `per_class` series per class.
//  - ThreeClass: class 0 = {cos t, cos 2t}, class 1 = {2 cos t},
//    class 2 = {2 cos 2t}, `per_class` series per signal, length 36.
// Gaussian noise of standard deviation `noise` is added pointwise.
Dataset synth_example(SynthKind kind, int per_class, double noise,
                      std::uint64_t seed);

// Deterministic stratified split: ~test_fraction of every class goes to the
// second dataset. Used for the 80/20 experiment splits.
std::pair<Dataset, Dataset> split_stratified(const Dataset& data,
                                             double test_fraction,
                                             std::uint64_t seed);

// Deterministic stratified K-fold assignment: returns fold index per sample.
std::vector<int> stratified_folds(const Dataset& data, int folds,
                                  std::uint64_t seed);

} // namespace emph
