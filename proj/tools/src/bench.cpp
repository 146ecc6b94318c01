#include "emphcli/bench.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "emph/errors.hpp"
#include "emph/network.hpp"
#include "emph/rng.hpp"
#include "emph/vectorize.hpp"

namespace emphcli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double relative_gap(const std::vector<std::vector<double>>& a,
                    const std::vector<std::vector<double>>& b) {
    double worst = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) {
        for (std::size_t L = 0; L < a[s].size(); ++L) {
            const double denom = std::max(std::abs(a[s][L]), 1e-9);
            worst = std::max(worst, std::abs(a[s][L] - b[s][L]) / denom);
        }
    }
    return worst;
}

} // namespace

emph::Dataset bench_dataset(const BenchSpec& spec) {
    if (spec.samples < 2 || spec.length < 4) {
        throw emph::input_error("bench: need at least 2 samples of length >= 4");
    }
    emph::Rng rng(spec.seed);
    emph::Dataset data;
    data.classes = 2;
    data.provenance = "bench:mixed cosines";
    data.samples.reserve(spec.samples);
    for (int i = 0; i < spec.samples; ++i) {
        const int label = i % 2;
        const int freq = 1 + (i * 3) % 5;
        const double amplitude = 1.0 + 0.3 * label;
        emph::TimeSeries series;
        series.label = label;
        series.samples.resize(spec.length);
        for (int t = 0; t < spec.length; ++t) {
            const double x = 2.0 * std::numbers::pi * t / spec.length;
            series.samples[t] = amplitude * std::cos(freq * x) + 0.3 * rng.normal();
        }
        data.samples.push_back(std::move(series));
    }
    return data;
}

BenchResult run_bench(const BenchSpec& spec) {
    const emph::Dataset data = bench_dataset(spec);
    const emph::Dataset empty_test;

    emph::TrainConfig config;
    config.epochs = spec.epochs;
    config.lr = spec.lr;
    config.modes = spec.modes;
    config.dimension = 1;
    config.segments = spec.segments;
    config.resolution = spec.resolution;
    config.sigma = spec.sigma;
    config.hidden = spec.hidden;
    config.seed = spec.seed;
    config.learn_filtration = true;

    BenchResult result;
    result.epochs = spec.epochs;
    result.samples = spec.samples;
    result.modes = static_cast<int>(spec.modes.size());

    // --- exact closed-form loop (the library's trainer) ---------------------
    std::vector<std::vector<double>> exact_first;
    {
        const auto t0 = Clock::now();
        const emph::TrainResult trained = emph::train_eval(data, empty_test, config);
        result.exact_seconds = seconds_since(t0);
        exact_first = trained.report.trajectory.front();
    }

    // --- finite-difference loop ---------------------------------------------
    // Identical initialization; only the direction gradient is replaced by
    // forward differences of the (frozen min-max) batch loss, costing one
    // extra pipeline evaluation per perturbed component per epoch.
    std::vector<std::vector<double>> fd_first;
    {
        const int N = static_cast<int>(spec.modes.size());
        const int R = spec.segments;
        const int n = config.dimension;

        std::vector<emph::LiouvilleRadii> radii;
        std::vector<int> labels;
        radii.reserve(data.size());
        for (const emph::TimeSeries& series : data.samples) {
            radii.push_back(emph::fourier_amplitudes(series, spec.modes));
            labels.push_back(series.label);
        }

        const auto t0 = Clock::now();

        std::vector<emph::Barcode> initial;
        initial.reserve(radii.size());
        const std::vector<double> ones(N, 1.0);
        for (const auto& r : radii) {
            initial.push_back(emph::ray_barcode(r, ones, n).barcode);
        }
        const double eps_floor = 0.01 / std::sqrt(static_cast<double>(N));
        const emph::ConstraintBox box =
            emph::constraint_bounds(initial, config.c1, config.c2, eps_floor);

        double max_birth = 0.0, max_pers = 0.0, max_death = 0.0;
        for (const emph::Barcode& barcode : initial) {
            for (const emph::Bar& bar : barcode.bars) {
                if (!std::isfinite(bar.death)) continue;
                max_birth = std::max(max_birth, bar.birth);
                max_pers = std::max(max_pers, bar.persistence());
                max_death = std::max(max_death, bar.death);
            }
        }
        emph::ImageGrid grid;
        grid.resolution = spec.resolution;
        grid.y_hi = (max_pers > 0.0) ? config.c2 * max_pers : 1.0;
        grid.x_hi = (max_birth > 0.0) ? config.c2 * max_birth : grid.y_hi;
        grid.sigma = spec.sigma * grid.y_hi;  // matches the trainer's range-relative bandwidth

        emph::FiltrationCurve curve;
        curve.Q = (max_death > 0.0) ? config.c2 * max_death : 1.0;
        curve.directions.assign(R, std::vector<double>(N, 1.0));
        for (std::vector<double>& a : curve.directions) {
            a = emph::project(emph::rho(a), box);
        }

        emph::DenseNet net = emph::DenseNet::init(grid.size(), spec.hidden,
                                                  data.classes, spec.seed);

        const double h = 1e-6;
        std::vector<emph::ScaleRecord> records(data.size());

        // Batch loss of the whole pipeline at `directions`, optionally
        // reusing frozen per-sample min-max records and accumulating
        // network gradients (center evaluation only).
        const auto batch_loss = [&](const emph::FiltrationCurve& c, bool center,
                                    std::vector<Eigen::MatrixXd>* dW,
                                    std::vector<Eigen::VectorXd>* db) {
            double total = 0.0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                const emph::BarcodeResult bc = emph::curve_barcode(radii[i], c, n);
                const emph::PersistenceImage image =
                    emph::persistence_image(bc.barcode, grid);
                Eigen::VectorXd input;
                if (center) {
                    auto scaled = emph::minmax_scale(image.values);
                    input = std::move(scaled.first);
                    records[i] = scaled.second;
                } else {
                    input = (image.values.array() - records[i].min) /
                            records[i].divisor;
                }
                const auto [probs, cache] = emph::forward(net, input);
                total += emph::loss(probs, labels[i]);
                if (center && dW) {
                    const emph::NetGradients grads =
                        emph::backward(net, cache, labels[i]);
                    for (std::size_t l = 0; l < net.W.size(); ++l) {
                        (*dW)[l] += grads.dW[l];
                        (*db)[l] += grads.db[l];
                    }
                }
            }
            return total;
        };

        for (int epoch = 0; epoch < spec.epochs; ++epoch) {
            std::vector<Eigen::MatrixXd> dW(net.W.size());
            std::vector<Eigen::VectorXd> db(net.b.size());
            for (std::size_t l = 0; l < net.W.size(); ++l) {
                dW[l] = Eigen::MatrixXd::Zero(net.W[l].rows(), net.W[l].cols());
                db[l] = Eigen::VectorXd::Zero(net.b[l].size());
            }
            const double center = batch_loss(curve, true, &dW, &db);

            // Mean-loss gradients, matching the trainer's normalization.
            const double inv_count = 1.0 / static_cast<double>(data.size());
            std::vector<std::vector<double>> gradient(R, std::vector<double>(N, 0.0));
            for (int s = 0; s < R; ++s) {
                for (int L = 0; L < N; ++L) {
                    emph::FiltrationCurve perturbed = curve;
                    perturbed.directions[s][L] += h;
                    gradient[s][L] =
                        inv_count *
                        (batch_loss(perturbed, false, nullptr, nullptr) - center) / h;
                }
            }

            for (std::size_t l = 0; l < net.W.size(); ++l) {
                net.W[l] -= spec.lr * inv_count * dW[l];
                net.b[l] -= spec.lr * inv_count * db[l];
            }
            for (int s = 0; s < R; ++s) {
                double step_sq = 0.0;
                for (int L = 0; L < N; ++L) {
                    const double g = spec.lr * gradient[s][L];
                    step_sq += g * g;
                }
                const double clip = box.M - box.m;
                const double scale =
                    (step_sq > clip * clip) ? clip / std::sqrt(step_sq) : 1.0;
                std::vector<double> stepped = curve.directions[s];
                for (int L = 0; L < N; ++L) {
                    stepped[L] -= scale * spec.lr * gradient[s][L];
                }
                curve.directions[s] = emph::project(emph::rho(stepped), box);
            }
            if (epoch == 0) fd_first = curve.directions;
        }
        result.fd_seconds = seconds_since(t0);
    }

    result.ratio = result.fd_seconds / result.exact_seconds;
    result.first_epoch_agreement = relative_gap(exact_first, fd_first);
    return result;
}

} // namespace emphcli
