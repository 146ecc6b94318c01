#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "emph/barcode.hpp"
#include "emph/dataset.hpp"
#include "emph/network.hpp"
#include "emph/vectorize.hpp"

namespace emph {

// Componentwise bounds [m, M] applied to every normalized direction vector
// after the projected update. Derived from the initial barcodes of the
// training set (see constraint_bounds).
struct ConstraintBox {
    double m = 0.0;
    double M = 1.0;
    double c1 = 0.5;
    double c2 = 2.0;
};

struct TrainConfig {
    int epochs = 1000;
    double lr = 0.001;        // constant step size
    bool lr_decay = false;    // alpha_k = lr/(1+k) (summable-square schedule)
    double lr_net = -1.0;     // override for network params; negative = use lr, 0 freezes them
    double lr_directions = -1.0; // override for direction vectors; negative = use lr, 0 freezes them
    std::vector<int> modes = {1, 2};
    int dimension = 1;        // homology dimension n
    int segments = 1;         // R
    double Q = 0.0;           // curve horizon; 0 = auto (c2 x max initial death)
    int resolution = 10;
    double sigma = 0.05;      // image bandwidth, as a fraction of the frozen grid's persistence range
    std::vector<int> hidden = {50};
    std::uint64_t seed = 0;
    double c1 = 0.5;
    double c2 = 2.0;
    int folds = 5;
    double test_fraction = 0.2; // used by train() when it splits internally
    bool learn_filtration = true;
    int batch = 0;            // 0 = full batch per epoch
    // Starting curve directions, [segment][mode]; empty = all-ones. Each
    // vector is normalized and projected into the constraint box before use,
    // so any positive vector is a valid entry.
    std::vector<std::vector<double>> initial_directions;
};

struct TrainReport {
    std::vector<double> epoch_loss; // mean cross-entropy per epoch
    // directions after every epoch's projected update: [epoch][segment][mode]
    std::vector<std::vector<std::vector<double>>> trajectory;
    double test_accuracy = 0.0;
    int projection_violations = 0; // post-update components outside [m, M]
    double time_barcode = 0.0, time_image = 0.0, time_network = 0.0,
           time_update = 0.0; // seconds per phase
};

// Everything needed to classify new series with a trained pipeline.
struct TrainedModel {
    DenseNet net;
    FiltrationCurve curve;
    std::vector<int> modes;
    int dimension = 1;
    ImageGrid grid;
    ConstraintBox box;
};

struct TrainResult {
    TrainedModel model;
    TrainReport report;
};

// --- direction-vector calculus -------------------------------------------

// a/||a||. Domain error on the zero vector.
std::vector<double> rho(const std::vector<double>& a);

// d(a/||a||)/da = I/||a|| - a a^T/||a||^3: symmetric, rank N-1, with a in
// its null space (so the chain-rule gradient is tangent to the sphere).
Eigen::MatrixXd rho_jacobian(const std::vector<double>& a);

// Partials of every bar endpoint with respect to the normalized direction
// components, one Clarke branch chosen via the recorded arg-extremes:
// row j has at most one nonzero, -tau/(sqrt(N) rho_L^2) at the arg mode L
// (tau the mode's unscaled threshold). For n = 1 births this is identically
// zero and deaths reduce to -sqrt(3/N) r_L/rho_L^2 on the diagonal.
struct EndpointSensitivities {
    Eigen::MatrixXd db_drho; // p x N
    Eigen::MatrixXd dd_drho; // p x N
};
EndpointSensitivities ray_sensitivities(const LiouvilleRadii& radii,
                                        const std::vector<double>& rho_vec, int n,
                                        const std::vector<BarOrigin>& origins);

// Curve analog, one (p x N) pair per segment s:
//   s < s*  : -(Q/R)/rho_L^{s*}
//   s = s*  : [-tau/sqrt(N) + (Q/R) sum_{i<s*} rho_L^i] / (rho_L^{s*})^2
//   s > s*  : 0
// where s* is the endpoint's recorded segment. R = 1 reduces to
// ray_sensitivities exactly.
struct CurveEndpointSensitivities {
    std::vector<Eigen::MatrixXd> db_drho; // [segment] p x N
    std::vector<Eigen::MatrixXd> dd_drho;
};
CurveEndpointSensitivities curve_sensitivities(const LiouvilleRadii& radii,
                                               const FiltrationCurve& curve, int n,
                                               const std::vector<BarOrigin>& origins);

// Assembles dL/da^s = (delta^[1] W^[1]) (1/(I_max - I_min))
//   (dI/db db/drho^s + dI/dd dd/drho^s) drho^s/da^s for every segment.
// All factors must come from the same sample's forward pass.
std::vector<Eigen::VectorXd> direction_gradient(
    const Eigen::VectorXd& input_gradient, const ScaleRecord& scale,
    const EndpointGradients& image_gradients,
    const CurveEndpointSensitivities& sensitivities,
    const std::vector<Eigen::MatrixXd>& rho_jacobians);

// Box from the initial barcodes: m = c1 * smallest birth, floored at
// eps_floor (dimension-1 births are identically zero); M = c2 * largest
// death, capped at 1 since normalized components never exceed 1.
ConstraintBox constraint_bounds(const std::vector<Barcode>& initial_barcodes,
                                double c1, double c2, double eps_floor);

// Componentwise clamp of a/||a|| into [m, M].
std::vector<double> project(const std::vector<double>& a_half,
                            const ConstraintBox& box);

// --- drivers ---------------------------------------------------------------

// Algorithm: radii once per sample; per epoch barcodes, images, min-max,
// forward/backward, then W/b steps and the projected direction update.
// Directions start at config.initial_directions (all-ones when empty); the
// constraint box, image grid, and auto horizon are always derived from the
// all-ones diagonal barcodes so runs with different starting curves share
// the same featurization. The optimized objective is the mean cross-entropy
// over each batch: per-sample gradients are accumulated in sample order
// (deterministic) and scaled by the batch count before the step.
TrainResult train_eval(const Dataset& train_set, const Dataset& test_set,
                       const TrainConfig& config);

// Splits `data` (stratified, test_fraction, seed) and runs train_eval.
TrainResult train(const Dataset& data, const TrainConfig& config);

// Classification accuracy of a trained model on a dataset.
double evaluate(const TrainedModel& model, const Dataset& data);

// Hyperparameter grid: learning rate x bandwidth x segment count.
struct HyperGrid {
    std::vector<double> lrs;
    std::vector<double> sigmas;
    std::vector<int> segments;
};
struct CrossvalCell {
    double lr = 0.0;
    double sigma = 0.0;
    int segments = 1;
    double mean_accuracy = 0.0;
};
struct CrossvalReport {
    std::vector<CrossvalCell> cells;
    int best_index = 0;
};

// Stratified k-fold evaluation of every grid cell (deterministic under
// base.seed); best cell by mean accuracy, smallest index on ties.
CrossvalReport crossval(const Dataset& data, const TrainConfig& base,
                        const HyperGrid& grid, int folds);

} // namespace emph
