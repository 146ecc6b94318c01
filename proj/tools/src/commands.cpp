#include "emphcli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <json.hpp>

#include "emph/errors.hpp"
#include "emph/multipers.hpp"
#include "emphcli/artifacts.hpp"
#include "emphcli/bench.hpp"

namespace emphcli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path artifact_dir(const RunConfig& config) {
    fs::path dir(config.output.empty() ? "." : config.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw emph::input_error("cannot create output directory '" + dir.string() +
                                "': " + ec.message());
    }
    return dir;
}

// Barcode of one sample under the configured (or explicitly given)
// filtration; shared by the barcode and image commands.
emph::BarcodeResult sample_barcode(const RunConfig& config,
                                   emph::LiouvilleRadii* radii_out) {
    const emph::Dataset data = resolve_dataset(config);
    if (config.index < 0 || static_cast<std::size_t>(config.index) >= data.size()) {
        throw emph::input_error("sample index " + std::to_string(config.index) +
                                " outside dataset of size " +
                                std::to_string(data.size()));
    }
    const emph::LiouvilleRadii radii =
        emph::fourier_amplitudes(data.samples[config.index], config.train.modes);
    if (radii_out) *radii_out = radii;

    emph::FiltrationCurve curve;
    curve.Q = config.train.Q;
    if (!config.direction.empty()) {
        curve.directions = parse_directions(config.direction);
    } else {
        curve.directions.assign(config.train.segments,
                                std::vector<double>(radii.size(), 1.0));
    }
    return emph::curve_barcode(radii, curve, config.train.dimension);
}

void print_vector(const std::vector<double>& values) {
    std::cout << std::setprecision(6) << std::fixed;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << values[i];
    }
    std::cout << "\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
}

} // namespace

// ============================================================================
// synth
// ============================================================================

int run_synth(const RunConfig& config) {
    RunConfig synth_config = config;
    synth_config.input.clear(); // always synthesize
    const emph::Dataset data = resolve_dataset(synth_config);
    const fs::path dir = artifact_dir(config);
    const fs::path path = dir / "synth.csv";
    save_dataset_csv(data, path.string());
    std::cout << data.provenance << ": " << data.size() << " samples, length "
              << data.length() << ", " << data.classes << " classes -> "
              << path.string() << "\n";
    return 0;
}

// ============================================================================
// barcode / image
// ============================================================================

int run_barcode(const RunConfig& config) {
    const emph::BarcodeResult result = sample_barcode(config, nullptr);
    write_barcode_csv(result, std::cout);
    return 0;
}

int run_image(const RunConfig& config) {
    const emph::BarcodeResult result = sample_barcode(config, nullptr);

    // Auto-ranged grid: birth axis to c2 x the largest birth (falling back
    // to the persistence range when births are all zero), persistence axis
    // to c2 x the largest persistence.
    double max_birth = 0.0, max_pers = 0.0;
    for (const emph::Bar& bar : result.barcode.bars) {
        if (std::isinf(bar.death)) continue;
        max_birth = std::max(max_birth, bar.birth);
        max_pers = std::max(max_pers, bar.persistence());
    }
    emph::ImageGrid grid;
    grid.resolution = config.train.resolution;
    grid.y_hi = (max_pers > 0.0) ? config.train.c2 * max_pers : 1.0;
    grid.x_hi = (max_birth > 0.0) ? config.train.c2 * max_birth : grid.y_hi;
    grid.sigma = config.train.sigma * grid.y_hi;  // bandwidth is range-relative

    const emph::PersistenceImage image = persistence_image(result.barcode, grid);
    write_image_csv(image, grid.resolution, std::cout);
    return 0;
}

// ============================================================================
// train / eval
// ============================================================================

int run_train(const RunConfig& config) {
    const emph::Dataset data = resolve_dataset(config);
    emph::TrainConfig train_config = config.train;
    if (!config.direction.empty()) {
        train_config.initial_directions = parse_directions(config.direction);
    }
    const emph::TrainResult result = emph::train(data, train_config);

    const fs::path dir = artifact_dir(config);
    save_checkpoint(result.model, (dir / "checkpoint.json").string());
    save_metrics(result, config, (dir / "metrics.json").string());
    save_trajectory(result.report, result.model.modes,
                    (dir / "trajectory.csv").string());
    save_timings(result.report, (dir / "timings.json").string());

    std::cout << "train: " << data.size() << " samples, "
              << config.train.epochs << " epochs\n";
    std::cout << "final mean loss " << result.report.epoch_loss.back()
              << ", test accuracy " << result.report.test_accuracy
              << ", projection violations " << result.report.projection_violations
              << "\n";
    std::cout << "artifacts in " << dir.string() << "\n";
    return 0;
}

int run_eval(const RunConfig& config) {
    if (config.checkpoint.empty()) {
        throw emph::input_error("eval needs --checkpoint");
    }
    const emph::TrainedModel model = load_checkpoint(config.checkpoint);
    const emph::Dataset data = resolve_dataset(config);

    emph::Dataset subset;
    if (config.split == "all") {
        subset = data;
    } else if (config.split == "train" || config.split == "test") {
        auto [train_part, test_part] = emph::split_stratified(
            data, config.train.test_fraction, config.train.seed);
        subset = (config.split == "train") ? std::move(train_part)
                                           : std::move(test_part);
    } else {
        throw emph::input_error("unknown split '" + config.split +
                                "' (expected all, train or test)");
    }

    const double accuracy = emph::evaluate(model, subset);
    const fs::path dir = artifact_dir(config);
    json doc;
    doc["accuracy"] = accuracy;
    doc["samples"] = subset.size();
    doc["split"] = config.split;
    doc["checkpoint"] = config.checkpoint;
    std::ofstream out(dir / "eval.json");
    if (!out) throw emph::input_error("cannot write eval.json");
    out << doc.dump(2) << "\n";

    std::cout << "eval: accuracy " << accuracy << " on " << subset.size()
              << " samples (" << config.split << " split)\n";
    return 0;
}

// ============================================================================
// crossval
// ============================================================================

int run_crossval(const RunConfig& config) {
    const emph::Dataset data = resolve_dataset(config);
    emph::HyperGrid grid;
    grid.lrs = parse_double_list(config.lrs, "lrs");
    grid.sigmas = parse_double_list(config.sigmas, "sigmas");
    grid.segments = parse_int_list(config.segment_grid, "segment_grid");

    emph::TrainConfig base = config.train;
    if (!config.direction.empty()) {
        base.initial_directions = parse_directions(config.direction);
    }
    const emph::CrossvalReport report =
        emph::crossval(data, base, grid, config.train.folds);

    const fs::path dir = artifact_dir(config);
    json doc;
    doc["cells"] = json::array();
    for (const emph::CrossvalCell& cell : report.cells) {
        doc["cells"].push_back({{"lr", cell.lr},
                                {"sigma", cell.sigma},
                                {"segments", cell.segments},
                                {"mean_accuracy", cell.mean_accuracy}});
    }
    doc["best_index"] = report.best_index;
    std::ofstream out(dir / "crossval.json");
    if (!out) throw emph::input_error("cannot write crossval.json");
    out << doc.dump(2) << "\n";

    const emph::CrossvalCell& best = report.cells[report.best_index];
    std::cout << "crossval: " << report.cells.size() << " cells x "
              << config.train.folds << " folds\n";
    for (const emph::CrossvalCell& cell : report.cells) {
        std::cout << "  lr " << cell.lr << ", sigma " << cell.sigma
                  << ", segments " << cell.segments << " -> "
                  << cell.mean_accuracy << "\n";
    }
    std::cout << "best: lr " << best.lr << ", sigma " << best.sigma
              << ", segments " << best.segments << " (mean accuracy "
              << best.mean_accuracy << ")\n";
    return 0;
}

// ============================================================================
// bench
// ============================================================================

int run_bench_command(const RunConfig& config) {
    BenchSpec spec;
    spec.samples = config.bench_samples;
    spec.length = config.bench_length;
    spec.epochs = config.train.epochs;
    spec.modes = config.train.modes;
    spec.segments = config.train.segments;
    spec.resolution = config.train.resolution;
    spec.sigma = config.train.sigma;
    spec.hidden = config.train.hidden;
    spec.lr = config.train.lr;
    spec.seed = config.train.seed;

    const BenchResult result = run_bench(spec);

    const fs::path dir = artifact_dir(config);
    json doc;
    doc["exact_seconds"] = result.exact_seconds;
    doc["fd_seconds"] = result.fd_seconds;
    doc["ratio"] = result.ratio;
    doc["first_epoch_agreement"] = result.first_epoch_agreement;
    doc["epochs"] = result.epochs;
    doc["samples"] = result.samples;
    doc["modes"] = result.modes;
    std::ofstream out(dir / "bench.json");
    if (!out) throw emph::input_error("cannot write bench.json");
    out << doc.dump(2) << "\n";

    std::cout << "bench: " << result.samples << " samples, " << result.modes
              << " modes, " << result.epochs << " epochs\n";
    std::cout << "exact gradient: " << result.exact_seconds << " s\n";
    std::cout << "finite differences: " << result.fd_seconds << " s\n";
    std::cout << "speedup: " << result.ratio << "x\n";
    std::cout << "epoch-1 direction agreement (max relative gap): "
              << result.first_epoch_agreement << "\n";
    return 0;
}

// ============================================================================
// multipers-demo
// ============================================================================

int run_multipers_demo(const RunConfig& config) {
    const emph::multipers::Fixture fixture =
        config.fixture.empty()
            ? emph::multipers::parse_fixture(
                  emph::multipers::builtin_example_fixture_json())
            : emph::multipers::load_fixture(config.fixture);

    const std::vector<double> image =
        emph::multipers::two_param_persistence_image(fixture.vineyard,
                                                     fixture.grid);
    const std::vector<double> landscape =
        emph::multipers::two_param_persistence_landscape(fixture.landscape,
                                                         config.k, fixture.grid);

    std::cout << "two-parameter persistence image (" << fixture.grid.n << "x"
              << fixture.grid.n << ", row-major):\n  ";
    print_vector(image);
    std::cout << "two-parameter persistence landscape (k=" << config.k
              << "):\n  ";
    print_vector(landscape);
    return 0;
}

} // namespace emphcli
