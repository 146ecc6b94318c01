#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace emph {

// Small dense feed-forward classifier: affine + ReLU hidden layers, softmax
// output. Weights are W[l] (fan_out x fan_in), trained by explicit gradient
// formulas only.
struct DenseNet {
    std::vector<Eigen::MatrixXd> W;
    std::vector<Eigen::VectorXd> b;

    int layer_count() const { return static_cast<int>(W.size()); }
    int input_width() const { return W.empty() ? 0 : static_cast<int>(W.front().cols()); }
    int classes() const { return W.empty() ? 0 : static_cast<int>(W.back().rows()); }

    // Glorot-uniform weights in +-sqrt(6/(fan_in+fan_out)), zero biases,
    // deterministic under seed.
    static DenseNet init(int input, const std::vector<int>& hidden, int classes,
                         std::uint64_t seed);
};

// Everything backward needs from one forward pass.
struct ForwardCache {
    Eigen::VectorXd input;
    std::vector<Eigen::VectorXd> z;   // pre-activations per layer
    std::vector<Eigen::VectorXd> act; // post-activations per layer (last = probs)
};

// Softmax probabilities plus the cache. Throws input_error on a width
// mismatch.
std::pair<Eigen::VectorXd, ForwardCache> forward(const DenseNet& net,
                                                 const Eigen::VectorXd& x);

// Cross-entropy -log p[label], with the probability floored at 1e-12.
double loss(const Eigen::VectorXd& probabilities, int label);

// Per-layer gradients of the cross-entropy at `label`, plus the gradient
// with respect to the input vector (row delta^[1] W^[1], returned as a
// column vector) that feeds the filtration chain rule. ReLU's subgradient at
// 0 is taken as 0.
struct NetGradients {
    std::vector<Eigen::MatrixXd> dW;
    std::vector<Eigen::VectorXd> db;
    Eigen::VectorXd input_gradient;
};
NetGradients backward(const DenseNet& net, const ForwardCache& cache, int label);

} // namespace emph
