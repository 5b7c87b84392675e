#pragma once

#include <cstdint>
#include <vector>

#include "qldm/linalg.hpp"

namespace qldm {

enum class Activation : std::uint8_t { Identity = 0, Tanh = 1 };

struct DenseLayer {
    Matrix weights;            // out x in
    std::vector<double> bias;  // out
    Activation activation = Activation::Identity;

    DenseLayer() = default;
    DenseLayer(std::size_t out, std::size_t in, Activation act);

    std::size_t in_dim() const { return weights.cols; }
    std::size_t out_dim() const { return weights.rows; }
    std::size_t n_params() const { return weights.v.size() + bias.size(); }
};

struct DenseGrads {
    Matrix weights;
    std::vector<double> bias;
    std::vector<double> input;
};

std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& input);

// Exact reverse-mode gradients through activation and affine map.
DenseGrads dense_backward(const DenseLayer& layer, const std::vector<double>& input,
                          const std::vector<double>& upstream_grad);

struct AdamState {
    std::uint64_t step = 0;
    std::vector<double> m;
    std::vector<double> v;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eps_hat = 1e-8;

    AdamState() = default;
    AdamState(std::size_t n, double lr_, double b1, double b2);
};

// Standard bias-corrected Adam step, in place.
void adam_update(AdamState& state, std::vector<double>& params, const std::vector<double>& grads);

struct EmaState {
    std::vector<double> shadow;
    std::uint64_t step = 0;
};

// Warm-up decay min(0.999, (1 + step) / (10 + step)); sampling and evaluation
// read the shadow, never the live parameters.
void ema_update(EmaState& state, const std::vector<double>& params);

}  // namespace qldm
