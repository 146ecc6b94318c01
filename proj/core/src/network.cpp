#include "emph/network.hpp"

#include <cmath>
#include <string>

#include "emph/errors.hpp"
#include "emph/rng.hpp"

namespace emph {

// ============================================================================
// Initialization
// ============================================================================

DenseNet DenseNet::init(int input, const std::vector<int>& hidden, int classes,
                        std::uint64_t seed) {
    if (input < 1 || classes < 2) {
        throw input_error("network: need a positive input width and >= 2 classes");
    }
    for (int h : hidden) {
        if (h < 1) throw input_error("network: hidden widths must be positive");
    }

    std::vector<int> sizes;
    sizes.push_back(input);
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(classes);

    Rng rng(seed);
    DenseNet net;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int fan_in = sizes[l];
        const int fan_out = sizes[l + 1];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        Eigen::MatrixXd W(fan_out, fan_in);
        for (int i = 0; i < fan_out; ++i) {
            for (int j = 0; j < fan_in; ++j) W(i, j) = rng.uniform(-bound, bound);
        }
        net.W.push_back(std::move(W));
        net.b.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return net;
}

// ============================================================================
// Forward pass
// ============================================================================

std::pair<Eigen::VectorXd, ForwardCache> forward(const DenseNet& net,
                                                 const Eigen::VectorXd& x) {
    if (net.W.empty()) throw input_error("network: uninitialized");
    if (x.size() != net.W.front().cols()) {
        throw input_error("network: input width " + std::to_string(x.size()) +
                          " does not match first layer (" +
                          std::to_string(net.W.front().cols()) + ")");
    }

    ForwardCache cache;
    cache.input = x;
    const int K = net.layer_count();
    Eigen::VectorXd a = x;
    for (int l = 0; l < K; ++l) {
        Eigen::VectorXd z = net.W[l] * a + net.b[l];
        cache.z.push_back(z);
        if (l + 1 < K) {
            a = z.cwiseMax(0.0);
        } else {
            // Softmax, stabilized by the usual max shift.
            const double zmax = z.maxCoeff();
            Eigen::VectorXd e = (z.array() - zmax).exp();
            a = e / e.sum();
        }
        cache.act.push_back(a);
    }
    return {a, std::move(cache)};
}

double loss(const Eigen::VectorXd& probabilities, int label) {
    if (label < 0 || label >= probabilities.size()) {
        throw input_error("network: label " + std::to_string(label) +
                          " outside class range");
    }
    const double p = std::max(probabilities[label], 1e-12);
    return -std::log(p);
}

// ============================================================================
// Backward pass
// ============================================================================

NetGradients backward(const DenseNet& net, const ForwardCache& cache, int label) {
    const int K = net.layer_count();
    if (static_cast<int>(cache.z.size()) != K) {
        throw input_error("network: cache does not match network depth");
    }
    if (label < 0 || label >= net.classes()) {
        throw input_error("network: label outside class range");
    }

    NetGradients grads;
    grads.dW.resize(K);
    grads.db.resize(K);

    // Softmax + cross-entropy head: delta = probs - onehot.
    Eigen::VectorXd delta = cache.act.back();
    delta[label] -= 1.0;

    for (int l = K - 1; l >= 0; --l) {
        const Eigen::VectorXd& below = (l == 0) ? cache.input : cache.act[l - 1];
        grads.dW[l] = delta * below.transpose();
        grads.db[l] = delta;
        Eigen::VectorXd back = net.W[l].transpose() * delta;
        if (l == 0) {
            grads.input_gradient = std::move(back);
        } else {
            // ReLU subgradient, 0 at 0.
            delta = back.cwiseProduct(
                (cache.z[l - 1].array() > 0.0).cast<double>().matrix());
        }
    }
    return grads;
}

} // namespace emph
