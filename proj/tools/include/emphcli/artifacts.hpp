#pragma once

#include <ostream>
#include <string>

#include "emph/barcode.hpp"
#include "emph/dataset.hpp"
#include "emph/learner.hpp"
#include "emph/vectorize.hpp"
#include "emphcli/config.hpp"

namespace emphcli {

// Model checkpoint: layer shapes, row-major weights, biases, filtration
// directions, grid and box — everything evaluate() needs. JSON.
void save_checkpoint(const emph::TrainedModel& model, const std::string& path);
emph::TrainedModel load_checkpoint(const std::string& path);

// Metrics JSON: accuracy, loss history, final directions, configuration
// echo. Deterministic for a fixed seed (no timestamps or timings inside;
// wall-clock phase times go to a separate timings file).
void save_metrics(const emph::TrainResult& result, const RunConfig& config,
                  const std::string& path);
void save_timings(const emph::TrainReport& report, const std::string& path);

// Direction trajectory as CSV: epoch, segment, one column per mode.
void save_trajectory(const emph::TrainReport& report,
                     const std::vector<int>& modes, const std::string& path);

// Bars as CSV rows "dimension,birth,death,composition"; composition entries
// are space-separated, death +inf spelled "inf".
void write_barcode_csv(const emph::BarcodeResult& result, std::ostream& out);

// Image as resolution x resolution CSV (rows walk the birth axis).
void write_image_csv(const emph::PersistenceImage& image, int resolution,
                     std::ostream& out);

// Dataset as label-first comma-separated rows (the loader's format).
void save_dataset_csv(const emph::Dataset& data, const std::string& path);

// The dataset a RunConfig describes: loaded from `input` when set, else
// synthesized from kind/per_class/noise/seed.
emph::Dataset resolve_dataset(const RunConfig& config);

} // namespace emphcli
