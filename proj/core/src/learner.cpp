#include "emph/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "emph/errors.hpp"

namespace emph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double norm_of(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

} // namespace

// ============================================================================
// Direction-vector calculus
// ============================================================================

std::vector<double> rho(const std::vector<double>& a) {
    const double norm = norm_of(a);
    if (!(norm > 0.0)) {
        throw domain_error("direction: cannot normalize a zero vector");
    }
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / norm;
    return out;
}

Eigen::MatrixXd rho_jacobian(const std::vector<double>& a) {
    const int N = static_cast<int>(a.size());
    const double norm = norm_of(a);
    if (!(norm > 0.0)) {
        throw domain_error("direction: cannot normalize a zero vector");
    }
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(a.data(), N);
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(N, N) / norm;
    J.noalias() -= (v * v.transpose()) / (norm * norm * norm);
    return J;
}

EndpointSensitivities ray_sensitivities(const LiouvilleRadii& radii,
                                        const std::vector<double>& rho_vec, int n,
                                        const std::vector<BarOrigin>& origins) {
    const int N = static_cast<int>(radii.size());
    if (static_cast<int>(rho_vec.size()) != N) {
        throw input_error("sensitivities: direction width does not match mode count");
    }
    const int p = static_cast<int>(origins.size());
    const double sqrtN = std::sqrt(static_cast<double>(N));

    EndpointSensitivities out;
    out.db_drho = Eigen::MatrixXd::Zero(p, N);
    out.dd_drho = Eigen::MatrixXd::Zero(p, N);
    for (int j = 0; j < p; ++j) {
        const BarOrigin& origin = origins[j];
        if (origin.birth_argmax >= 0) {
            const int L = origin.birth_argmax;
            const double tau = circle_interval(radii.radii[L],
                                               origin.composition[L]).birth;
            out.db_drho(j, L) = -tau / (sqrtN * rho_vec[L] * rho_vec[L]);
        }
        if (origin.death_argmin >= 0) {
            const int L = origin.death_argmin;
            const double tau = circle_interval(radii.radii[L],
                                               origin.composition[L]).death;
            out.dd_drho(j, L) = -tau / (sqrtN * rho_vec[L] * rho_vec[L]);
        }
    }
    return out;
}

CurveEndpointSensitivities curve_sensitivities(const LiouvilleRadii& radii,
                                               const FiltrationCurve& curve, int n,
                                               const std::vector<BarOrigin>& origins) {
    const int N = static_cast<int>(radii.size());
    const int R = curve.segment_count();
    if (R < 1 || curve.parameter_count() != N) {
        throw input_error("sensitivities: curve does not match mode count");
    }
    const int p = static_cast<int>(origins.size());
    const double sqrtN = std::sqrt(static_cast<double>(N));
    const double seg_len = curve.Q / R;

    std::vector<std::vector<double>> rho_by_seg(R);
    std::vector<std::vector<double>> cum(R + 1, std::vector<double>(N, 0.0));
    for (int s = 0; s < R; ++s) {
        rho_by_seg[s] = rho(curve.directions[s]);
        for (int L = 0; L < N; ++L) cum[s + 1][L] = cum[s][L] + rho_by_seg[s][L];
    }

    CurveEndpointSensitivities out;
    out.db_drho.assign(R, Eigen::MatrixXd::Zero(p, N));
    out.dd_drho.assign(R, Eigen::MatrixXd::Zero(p, N));

    // One endpoint contributes to segment s* (its own affine piece) and to
    // every earlier segment through the accumulated knot offsets.
    const auto fill = [&](std::vector<Eigen::MatrixXd>& target, int j, int L,
                          int star, double tau) {
        const double denom = rho_by_seg[star - 1][L];
        for (int s = 1; s < star; ++s) target[s - 1](j, L) = -seg_len / denom;
        target[star - 1](j, L) =
            (-tau / sqrtN + seg_len * cum[star - 1][L]) / (denom * denom);
    };

    for (int j = 0; j < p; ++j) {
        const BarOrigin& origin = origins[j];
        if (origin.birth_argmax >= 0) {
            const int L = origin.birth_argmax;
            fill(out.db_drho, j, L, origin.birth_segment[L],
                 circle_interval(radii.radii[L], origin.composition[L]).birth);
        }
        if (origin.death_argmin >= 0) {
            const int L = origin.death_argmin;
            fill(out.dd_drho, j, L, origin.death_segment[L],
                 circle_interval(radii.radii[L], origin.composition[L]).death);
        }
    }
    return out;
}

std::vector<Eigen::VectorXd> direction_gradient(
    const Eigen::VectorXd& input_gradient, const ScaleRecord& scale,
    const EndpointGradients& image_gradients,
    const CurveEndpointSensitivities& sensitivities,
    const std::vector<Eigen::MatrixXd>& rho_jacobians) {
    if (sensitivities.db_drho.size() != rho_jacobians.size()) {
        throw input_error("direction_gradient: segment counts disagree");
    }
    const Eigen::VectorXd u = input_gradient / scale.divisor;
    const Eigen::VectorXd vb = image_gradients.dI_db.transpose() * u;
    const Eigen::VectorXd vd = image_gradients.dI_dd.transpose() * u;

    std::vector<Eigen::VectorXd> out;
    out.reserve(rho_jacobians.size());
    for (std::size_t s = 0; s < rho_jacobians.size(); ++s) {
        Eigen::VectorXd g_rho = sensitivities.db_drho[s].transpose() * vb;
        g_rho.noalias() += sensitivities.dd_drho[s].transpose() * vd;
        out.push_back(rho_jacobians[s] * g_rho);
    }
    return out;
}

// ============================================================================
// Constraint box and projection
// ============================================================================

ConstraintBox constraint_bounds(const std::vector<Barcode>& initial_barcodes,
                                double c1, double c2, double eps_floor) {
    if (initial_barcodes.empty()) {
        throw input_error("constraint box: no initial barcodes supplied");
    }
    double min_birth = std::numeric_limits<double>::infinity();
    double max_death = 0.0;
    for (const Barcode& barcode : initial_barcodes) {
        for (const Bar& bar : barcode.bars) {
            min_birth = std::min(min_birth, bar.birth);
            if (std::isfinite(bar.death)) max_death = std::max(max_death, bar.death);
        }
    }
    ConstraintBox box;
    box.c1 = c1;
    box.c2 = c2;
    box.m = eps_floor;
    if (std::isfinite(min_birth)) box.m = std::max(eps_floor, c1 * min_birth);
    box.M = (max_death > 0.0) ? std::min(1.0, c2 * max_death) : 1.0;
    if (!(box.m < box.M)) {
        throw input_error("constraint box collapsed: the initial barcodes are "
                          "too small to bound the directions away from zero");
    }
    return box;
}

std::vector<double> project(const std::vector<double>& a_half,
                            const ConstraintBox& box) {
    std::vector<double> out(a_half.size());
    for (std::size_t i = 0; i < a_half.size(); ++i) {
        out[i] = std::clamp(a_half[i], box.m, box.M);
    }
    return out;
}

// ============================================================================
// Training driver
// ============================================================================

namespace {

struct Prepared {
    std::vector<LiouvilleRadii> radii;
    std::vector<int> labels;
};

Prepared prepare(const Dataset& data, const std::vector<int>& modes) {
    Prepared out;
    out.radii.reserve(data.size());
    out.labels.reserve(data.size());
    for (const TimeSeries& series : data.samples) {
        out.radii.push_back(fourier_amplitudes(series, modes));
        out.labels.push_back(series.label);
    }
    return out;
}

void validate_config(const Dataset& train_set, const TrainConfig& config) {
    if (train_set.size() == 0) throw input_error("train: empty training set");
    if (train_set.classes < 2) throw input_error("train: need at least two classes");
    if (config.epochs < 1) throw input_error("train: epochs must be positive");
    if (config.modes.empty()) throw input_error("train: mode list is empty");
    if (config.dimension < 1) {
        throw input_error("train: homology dimension must be >= 1 for vectorization");
    }
    if (config.segments < 1) throw input_error("train: need at least one segment");
    if (!(config.lr > 0.0)) throw input_error("train: learning rate must be positive");
    if (config.batch < 0) throw input_error("train: batch size must be nonnegative");
}

// Frozen evaluation grid: birth range from the initial births, persistence
// range from the initial persistences, both stretched by c2. Dimension-1
// births are identically zero, so a degenerate birth range falls back to the
// persistence range, and an empty barcode set to the unit square.
ImageGrid frozen_grid(const std::vector<Barcode>& initial, const TrainConfig& config) {
    double max_birth = 0.0, max_pers = 0.0;
    for (const Barcode& barcode : initial) {
        for (const Bar& bar : barcode.bars) {
            if (!std::isfinite(bar.death)) continue;
            max_birth = std::max(max_birth, bar.birth);
            max_pers = std::max(max_pers, bar.persistence());
        }
    }
    ImageGrid grid;
    grid.resolution = config.resolution;
    const double y_hi = (max_pers > 0.0) ? config.c2 * max_pers : 1.0;
    const double x_hi = (max_birth > 0.0) ? config.c2 * max_birth : y_hi;
    // The configured bandwidth is relative to the grid's persistence range:
    // bar positions scale with the data while the kernel width must scale
    // with the pixel lattice to keep the image (and its gradients) smooth.
    grid.sigma = config.sigma * y_hi;
    grid.x_lo = 0.0;
    grid.x_hi = x_hi;
    grid.y_lo = 0.0;
    grid.y_hi = y_hi;
    validate_grid(grid);
    return grid;
}

} // namespace

TrainResult train_eval(const Dataset& train_set, const Dataset& test_set,
                       const TrainConfig& config) {
    validate_config(train_set, config);
    const int N = static_cast<int>(config.modes.size());
    const int n = config.dimension;
    const int R = config.segments;
    // Negative means "inherit lr"; an explicit 0 freezes that update path.
    const double lr_net_base = (config.lr_net >= 0.0) ? config.lr_net : config.lr;
    const double lr_dir_base =
        (config.lr_directions >= 0.0) ? config.lr_directions : config.lr;

    const Prepared train_data = prepare(train_set, config.modes);
    const std::size_t S = train_data.radii.size();

    // Initial diagonal filtration: every segment along (1, ..., 1). The
    // initial barcodes fix the constraint box, the evaluation grid and (when
    // not specified) the curve horizon for the whole run.
    std::vector<Barcode> initial;
    initial.reserve(S);
    {
        const std::vector<double> ones(N, 1.0);
        for (const LiouvilleRadii& radii : train_data.radii) {
            initial.push_back(ray_barcode(radii, ones, n).barcode);
        }
    }
    const double eps_floor = 0.01 / std::sqrt(static_cast<double>(N));
    const ConstraintBox box = constraint_bounds(initial, config.c1, config.c2, eps_floor);
    const ImageGrid grid = frozen_grid(initial, config);

    double horizon = config.Q;
    if (!(horizon > 0.0)) {
        double max_death = 0.0;
        for (const Barcode& barcode : initial) {
            for (const Bar& bar : barcode.bars) {
                if (std::isfinite(bar.death)) max_death = std::max(max_death, bar.death);
            }
        }
        horizon = (max_death > 0.0) ? config.c2 * max_death : 1.0;
    }

    FiltrationCurve curve;
    curve.Q = horizon;
    if (config.initial_directions.empty()) {
        curve.directions.assign(R, std::vector<double>(N, 1.0));
    } else {
        if (static_cast<int>(config.initial_directions.size()) != R) {
            throw input_error("initial_directions must supply one vector per segment");
        }
        for (const std::vector<double>& a : config.initial_directions) {
            if (static_cast<int>(a.size()) != N) {
                throw input_error("initial_directions entries must match the mode count");
            }
        }
        curve.directions = config.initial_directions;
    }
    for (std::vector<double>& a : curve.directions) {
        a = project(rho(a), box);
    }

    DenseNet net = DenseNet::init(grid.size(), config.hidden, train_set.classes,
                                  config.seed);

    TrainReport report;
    report.epoch_loss.reserve(config.epochs);
    report.trajectory.reserve(config.epochs);

    // With a frozen filtration the barcodes and images never change, so the
    // scaled inputs can be computed once.
    std::vector<Eigen::VectorXd> frozen_inputs;
    if (!config.learn_filtration) {
        auto t0 = Clock::now();
        frozen_inputs.reserve(S);
        for (std::size_t i = 0; i < S; ++i) {
            const BarcodeResult bc = curve_barcode(train_data.radii[i], curve, n);
            const PersistenceImage image = persistence_image(bc.barcode, grid);
            frozen_inputs.push_back(minmax_scale(image.values).first);
        }
        report.time_image += seconds_since(t0);
    }

    const std::size_t batch_size = (config.batch > 0)
                                       ? static_cast<std::size_t>(config.batch)
                                       : S;

    std::vector<Eigen::MatrixXd> dW(net.W.size());
    std::vector<Eigen::VectorXd> db(net.b.size());
    std::vector<Eigen::VectorXd> dir_grad(R);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const double decay = config.lr_decay ? 1.0 / (1.0 + epoch) : 1.0;
        const double lr_net = lr_net_base * decay;
        const double lr_dir = lr_dir_base * decay;
        double loss_sum = 0.0;

        // Jacobians of the normalization at the current directions are
        // shared by every sample in the batch.
        std::vector<Eigen::MatrixXd> rho_jacobians;
        if (config.learn_filtration) {
            rho_jacobians.reserve(R);
            for (int s = 0; s < R; ++s) {
                rho_jacobians.push_back(rho_jacobian(curve.directions[s]));
            }
        }

        for (std::size_t start = 0; start < S; start += batch_size) {
            const std::size_t stop = std::min(S, start + batch_size);
            for (std::size_t l = 0; l < net.W.size(); ++l) {
                dW[l] = Eigen::MatrixXd::Zero(net.W[l].rows(), net.W[l].cols());
                db[l] = Eigen::VectorXd::Zero(net.b[l].size());
            }
            for (int s = 0; s < R; ++s) dir_grad[s] = Eigen::VectorXd::Zero(N);

            for (std::size_t i = start; i < stop; ++i) {
                Eigen::VectorXd input;
                ScaleRecord scale;
                BarcodeResult bc;
                ImageWithGradients iwg;
                if (config.learn_filtration) {
                    auto t0 = Clock::now();
                    bc = curve_barcode(train_data.radii[i], curve, n);
                    report.time_barcode += seconds_since(t0);

                    t0 = Clock::now();
                    iwg = persistence_image_with_gradients(bc.barcode, grid);
                    auto scaled = minmax_scale(iwg.image.values);
                    input = std::move(scaled.first);
                    scale = scaled.second;
                    report.time_image += seconds_since(t0);
                } else {
                    input = frozen_inputs[i];
                }

                auto t0 = Clock::now();
                auto [probs, cache] = forward(net, input);
                loss_sum += loss(probs, train_data.labels[i]);
                NetGradients grads = backward(net, cache, train_data.labels[i]);
                for (std::size_t l = 0; l < net.W.size(); ++l) {
                    dW[l] += grads.dW[l];
                    db[l] += grads.db[l];
                }
                report.time_network += seconds_since(t0);

                if (config.learn_filtration) {
                    t0 = Clock::now();
                    const CurveEndpointSensitivities sens =
                        curve_sensitivities(train_data.radii[i], curve, n, bc.origins);
                    const std::vector<Eigen::VectorXd> g = direction_gradient(
                        grads.input_gradient, scale, iwg.gradients, sens,
                        rho_jacobians);
                    for (int s = 0; s < R; ++s) dir_grad[s] += g[s];
                    report.time_update += seconds_since(t0);
                }
            }

            // The optimized loss is the mean cross-entropy over the batch, so
            // the accumulated per-sample gradients are scaled by the batch
            // count before the step.
            const double inv_count = 1.0 / static_cast<double>(stop - start);
            auto t0 = Clock::now();
            for (std::size_t l = 0; l < net.W.size(); ++l) {
                net.W[l] -= lr_net * inv_count * dW[l];
                net.b[l] -= lr_net * inv_count * db[l];
            }
            if (config.learn_filtration) {
                for (int s = 0; s < R; ++s) {
                    // Clamp the raw step to the box edge length: the current
                    // direction is a unit vector, so a bounded step keeps
                    // rho(a - step) on the same hemisphere, whereas an
                    // unbounded overshoot can reverse the direction outright
                    // and teleport the curve across the constraint box.
                    double step_sq = 0.0;
                    for (int L = 0; L < N; ++L) {
                        const double g = lr_dir * inv_count * dir_grad[s][L];
                        step_sq += g * g;
                    }
                    const double clip = box.M - box.m;
                    const double scale =
                        (step_sq > clip * clip) ? clip / std::sqrt(step_sq) : 1.0;
                    std::vector<double> stepped = curve.directions[s];
                    for (int L = 0; L < N; ++L) {
                        stepped[L] -= scale * lr_dir * inv_count * dir_grad[s][L];
                    }
                    curve.directions[s] = project(rho(stepped), box);
                    for (double v : curve.directions[s]) {
                        if (v < box.m - 1e-12 || v > box.M + 1e-12) {
                            ++report.projection_violations;
                        }
                    }
                }
            }
            report.time_update += seconds_since(t0);
        }

        report.epoch_loss.push_back(loss_sum / static_cast<double>(S));
        report.trajectory.push_back(curve.directions);
    }

    TrainResult result;
    result.model = {std::move(net), std::move(curve), config.modes, n, grid, box};
    result.report = std::move(report);
    result.report.test_accuracy =
        (test_set.size() > 0) ? evaluate(result.model, test_set) : 0.0;
    return result;
}

TrainResult train(const Dataset& data, const TrainConfig& config) {
    auto [train_set, test_set] =
        split_stratified(data, config.test_fraction, config.seed);
    return train_eval(train_set, test_set, config);
}

double evaluate(const TrainedModel& model, const Dataset& data) {
    if (data.size() == 0) throw input_error("evaluate: empty dataset");
    std::size_t correct = 0;
    for (const TimeSeries& series : data.samples) {
        const LiouvilleRadii radii = fourier_amplitudes(series, model.modes);
        const BarcodeResult bc = curve_barcode(radii, model.curve, model.dimension);
        const PersistenceImage image = persistence_image(bc.barcode, model.grid);
        const Eigen::VectorXd input = minmax_scale(image.values).first;
        const auto [probs, cache] = forward(model.net, input);
        int arg = 0;
        probs.maxCoeff(&arg);
        if (arg == series.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

// ============================================================================
// Cross-validation
// ============================================================================

CrossvalReport crossval(const Dataset& data, const TrainConfig& base,
                        const HyperGrid& grid, int folds) {
    if (grid.lrs.empty() || grid.sigmas.empty() || grid.segments.empty()) {
        throw input_error("crossval: empty hyperparameter grid");
    }
    const std::vector<int> assignment = stratified_folds(data, folds, base.seed);
    // Stratification needs every class in every fold's test part; a smaller
    // class would hand some folds an empty test set and a silent 0 accuracy.
    std::vector<int> class_counts(data.classes, 0);
    for (const TimeSeries& series : data.samples) ++class_counts[series.label];
    for (int c = 0; c < data.classes; ++c) {
        if (class_counts[c] < folds) {
            throw input_error("crossval: class " + std::to_string(c) + " has only " +
                              std::to_string(class_counts[c]) + " samples for " +
                              std::to_string(folds) + "-fold stratification");
        }
    }

    CrossvalReport report;
    for (double lr : grid.lrs) {
        for (double sigma : grid.sigmas) {
            for (int segments : grid.segments) {
                TrainConfig config = base;
                config.lr = lr;
                config.sigma = sigma;
                config.segments = segments;

                double total = 0.0;
                for (int f = 0; f < folds; ++f) {
                    Dataset fold_train, fold_test;
                    fold_train.classes = fold_test.classes = data.classes;
                    fold_train.provenance = data.provenance + " [cv-train]";
                    fold_test.provenance = data.provenance + " [cv-test]";
                    for (std::size_t i = 0; i < data.samples.size(); ++i) {
                        (assignment[i] == f ? fold_test : fold_train)
                            .samples.push_back(data.samples[i]);
                    }
                    total += train_eval(fold_train, fold_test, config)
                                 .report.test_accuracy;
                }
                report.cells.push_back({lr, sigma, segments,
                                        total / static_cast<double>(folds)});
            }
        }
    }
    for (std::size_t i = 1; i < report.cells.size(); ++i) {
        if (report.cells[i].mean_accuracy >
            report.cells[report.best_index].mean_accuracy) {
            report.best_index = static_cast<int>(i);
        }
    }
    return report;
}

} // namespace emph
