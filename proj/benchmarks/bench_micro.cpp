// Microbenchmarks for the hot paths of the training loop: spectral radii,
// closed-form barcodes, persistence images (with and without endpoint
// gradients), the dense network round trip and the assembled direction
// gradient. Run with --benchmark_min_time=... to tighten timings.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "emph/barcode.hpp"
#include "emph/learner.hpp"
#include "emph/network.hpp"
#include "emph/spectral.hpp"
#include "emph/vectorize.hpp"

namespace {

// One deterministic mid-sized workload shared by every benchmark: five modes,
// a three-segment curve and a 10x10 image grid, the shape of a typical run.
struct Workload {
    emph::TimeSeries series;
    std::vector<int> modes{1, 2, 3, 4, 5};
    emph::LiouvilleRadii radii;
    emph::FiltrationCurve curve;
    emph::ImageGrid grid;
    emph::DenseNet net;

    Workload() {
        std::mt19937_64 gen(7);
        std::normal_distribution<double> noise(0.0, 1.0);
        const int length = 80;
        series.samples.resize(length);
        for (int i = 0; i < length; ++i) {
            const double t = 2.0 * std::numbers::pi * i / length;
            series.samples[i] = std::cos(t) + 0.5 * std::cos(3.0 * t) +
                                0.25 * std::cos(5.0 * t) + 0.1 * noise(gen);
        }
        radii = emph::fourier_amplitudes(series, modes);

        curve.directions = {{1.0, 0.9, 0.8, 0.7, 0.6},
                            {0.6, 0.7, 0.8, 0.9, 1.0},
                            {1.0, 1.0, 1.0, 1.0, 1.0}};
        curve.Q = 3.0;

        double max_pers = 0.0;
        for (const emph::Bar& bar : emph::curve_barcode(radii, curve, 1).barcode.bars) {
            max_pers = std::max(max_pers, bar.persistence());
        }
        grid.resolution = 10;
        grid.x_lo = grid.y_lo = 0.0;
        grid.x_hi = grid.y_hi = 2.0 * max_pers;
        grid.sigma = 0.05 * grid.y_hi;

        net = emph::DenseNet::init(grid.size(), {50}, 2, 7);
    }
};

const Workload& workload() {
    static const Workload w;
    return w;
}

void BM_fourier_amplitudes(benchmark::State& state) {
    const Workload& w = workload();
    for (auto _ : state) {
        benchmark::DoNotOptimize(emph::fourier_amplitudes(w.series, w.modes));
    }
}
BENCHMARK(BM_fourier_amplitudes);

void BM_ray_barcode(benchmark::State& state) {
    const Workload& w = workload();
    const std::vector<double> diag(w.modes.size(), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(emph::ray_barcode(w.radii, diag, 1));
    }
}
BENCHMARK(BM_ray_barcode);

void BM_curve_barcode_three_segments(benchmark::State& state) {
    const Workload& w = workload();
    for (auto _ : state) {
        benchmark::DoNotOptimize(emph::curve_barcode(w.radii, w.curve, 1));
    }
}
BENCHMARK(BM_curve_barcode_three_segments);

void BM_persistence_image(benchmark::State& state) {
    const Workload& w = workload();
    const auto result = emph::curve_barcode(w.radii, w.curve, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(emph::persistence_image(result.barcode, w.grid));
    }
}
BENCHMARK(BM_persistence_image);

void BM_persistence_image_with_gradients(benchmark::State& state) {
    const Workload& w = workload();
    const auto result = emph::curve_barcode(w.radii, w.curve, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            emph::persistence_image_with_gradients(result.barcode, w.grid));
    }
}
BENCHMARK(BM_persistence_image_with_gradients);

void BM_network_forward_backward(benchmark::State& state) {
    const Workload& w = workload();
    const auto result = emph::curve_barcode(w.radii, w.curve, 1);
    const auto image = emph::persistence_image(result.barcode, w.grid);
    const Eigen::VectorXd input = emph::minmax_scale(image.values).first;
    for (auto _ : state) {
        const auto [probs, cache] = emph::forward(w.net, input);
        benchmark::DoNotOptimize(emph::backward(w.net, cache, 1));
    }
}
BENCHMARK(BM_network_forward_backward);

void BM_direction_gradient_chain(benchmark::State& state) {
    const Workload& w = workload();
    const auto result = emph::curve_barcode(w.radii, w.curve, 1);
    const auto fused = emph::persistence_image_with_gradients(result.barcode, w.grid);
    const auto [input, record] = emph::minmax_scale(fused.image.values);
    const auto [probs, cache] = emph::forward(w.net, input);
    const auto net_grads = emph::backward(w.net, cache, 1);
    for (auto _ : state) {
        const auto sens =
            emph::curve_sensitivities(w.radii, w.curve, 1, result.origins);
        std::vector<Eigen::MatrixXd> jacobians;
        jacobians.reserve(w.curve.directions.size());
        for (const auto& a : w.curve.directions) {
            jacobians.push_back(emph::rho_jacobian(a));
        }
        benchmark::DoNotOptimize(emph::direction_gradient(
            net_grads.input_gradient, record, fused.gradients, sens, jacobians));
    }
}
BENCHMARK(BM_direction_gradient_chain);

} // namespace

BENCHMARK_MAIN();
