#include "emph/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "emph/errors.hpp"
#include "emph/rng.hpp"

namespace emph {

// ============================================================================
// File loading
// ============================================================================

Dataset load_ucr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("dataset: cannot open '" + path + "'");

    std::vector<std::pair<std::string, std::vector<double>>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        // Accept tab- or comma-separated fields.
        std::replace(line.begin(), line.end(), '\t', ',');
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 2) {
            throw input_error("dataset: line " + std::to_string(lineno) +
                              " has fewer than two fields");
        }
        std::vector<double> values;
        values.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            try {
                std::size_t used = 0;
                const double v = std::stod(fields[i], &used);
                if (fields[i].find_first_not_of(" \t", used) != std::string::npos) {
                    throw std::invalid_argument("trailing junk");
                }
                values.push_back(v);
            } catch (const std::exception&) {
                throw input_error("dataset: line " + std::to_string(lineno) +
                                  " field " + std::to_string(i + 1) +
                                  " is not a number: '" + fields[i] + "'");
            }
        }
        rows.emplace_back(fields[0], std::move(values));
    }
    if (rows.empty()) throw input_error("dataset: '" + path + "' holds no data rows");

    const std::size_t width = rows.front().second.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].second.size() != width) {
            throw input_error("dataset: row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].second.size()) +
                              " values; expected " + std::to_string(width));
        }
    }

    // Dense label remap, original labels in ascending order.
    std::map<std::string, int> remap;
    for (auto& [label, _] : rows) remap.emplace(label, 0);
    int next = 0;
    std::string mapping;
    for (auto& [label, id] : remap) {
        id = next++;
        if (!mapping.empty()) mapping += ", ";
        mapping += label + "->" + std::to_string(id);
    }

    Dataset data;
    data.classes = next;
    data.provenance = "file:" + path + " labels{" + mapping + "}";
    data.samples.reserve(rows.size());
    for (auto& [label, values] : rows) {
        data.samples.push_back({std::move(values), remap.at(label)});
    }
    return data;
}

// ============================================================================
// Synthetic generators
// ============================================================================

namespace {

TimeSeries noisy_cosine(double amplitude, int frequency, int length, double noise,
                        int label, Rng& rng) {
    TimeSeries series;
    series.label = label;
    series.samples.resize(length);
    for (int i = 0; i < length; ++i) {
        const double t = 2.0 * std::numbers::pi * i / length;
        series.samples[i] = amplitude * std::cos(frequency * t) + noise * rng.normal();
    }
    return series;
}

} // namespace

Dataset synth_example(SynthKind kind, int per_class, double noise,
                      std::uint64_t seed) {
    if (per_class < 1) throw input_error("synth: per_class must be positive");
    constexpr int kLength = 36;

    Rng rng(seed);
    Dataset data;
    if (kind == SynthKind::TwoClass) {
        data.classes = 2;
        data.provenance = "synth:two-class cos(t) vs cos(5t)";
        for (int i = 0; i < per_class; ++i) {
            data.samples.push_back(noisy_cosine(1.0, 1, kLength, noise, 0, rng));
        }
        for (int i = 0; i < per_class; ++i) {
            data.samples.push_back(noisy_cosine(1.0, 5, kLength, noise, 1, rng));
        }
    } else {
        data.classes = 3;
        data.provenance = "synth:three-class {cos t, cos 2t} / 2cos t / 2cos 2t";
        for (int i = 0; i < per_class; ++i) {
            data.samples.push_back(noisy_cosine(1.0, 1, kLength, noise, 0, rng));
        }
        for (int i = 0; i < per_class; ++i) {
            data.samples.push_back(noisy_cosine(1.0, 2, kLength, noise, 0, rng));
        }
        for (int i = 0; i < per_class; ++i) {
            data.samples.push_back(noisy_cosine(2.0, 1, kLength, noise, 1, rng));
        }
        for (int i = 0; i < per_class; ++i) {
            data.samples.push_back(noisy_cosine(2.0, 2, kLength, noise, 2, rng));
        }
    }
    return data;
}

// ============================================================================
// Splitting
// ============================================================================

namespace {

std::vector<std::vector<std::size_t>> indices_by_class(const Dataset& data) {
    std::vector<std::vector<std::size_t>> by_class(data.classes);
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const int label = data.samples[i].label;
        if (label < 0 || label >= data.classes) {
            throw input_error("dataset: sample " + std::to_string(i) +
                              " has label outside 0.." +
                              std::to_string(data.classes - 1));
        }
        by_class[label].push_back(i);
    }
    return by_class;
}

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        std::swap(idx[i - 1], idx[rng.below(i)]);
    }
}

} // namespace

std::pair<Dataset, Dataset> split_stratified(const Dataset& data,
                                             double test_fraction,
                                             std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw input_error("split: test fraction must lie strictly in (0, 1)");
    }
    Rng rng(seed);
    Dataset train, test;
    train.classes = test.classes = data.classes;
    train.provenance = data.provenance + " [train]";
    test.provenance = data.provenance + " [test]";

    std::vector<std::size_t> train_idx, test_idx;
    for (auto& idx : indices_by_class(data)) {
        auto shuffled = idx;
        shuffle_indices(shuffled, rng);
        std::size_t n_test = static_cast<std::size_t>(
            std::lround(test_fraction * static_cast<double>(shuffled.size())));
        n_test = std::min(n_test, shuffled.size() > 0 ? shuffled.size() - 1 : 0);
        if (n_test == 0 && shuffled.size() > 1) n_test = 1;
        for (std::size_t i = 0; i < shuffled.size(); ++i) {
            (i < n_test ? test_idx : train_idx).push_back(shuffled[i]);
        }
    }
    // Keep the original sample order within each part.
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    for (std::size_t i : train_idx) train.samples.push_back(data.samples[i]);
    for (std::size_t i : test_idx) test.samples.push_back(data.samples[i]);
    return {std::move(train), std::move(test)};
}

std::vector<int> stratified_folds(const Dataset& data, int folds,
                                  std::uint64_t seed) {
    if (folds < 2) throw input_error("folds: need at least two folds");
    Rng rng(seed);
    std::vector<int> assignment(data.samples.size(), -1);
    for (auto& idx : indices_by_class(data)) {
        auto shuffled = idx;
        shuffle_indices(shuffled, rng);
        for (std::size_t i = 0; i < shuffled.size(); ++i) {
            assignment[shuffled[i]] = static_cast<int>(i % folds);
        }
    }
    return assignment;
}

} // namespace emph
