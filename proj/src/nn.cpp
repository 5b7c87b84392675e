#include "qldm/nn.hpp"

#include <algorithm>
#include <cmath>

#include "qldm/errors.hpp"

namespace qldm {

DenseLayer::DenseLayer(std::size_t out, std::size_t in, Activation act)
    : weights(out, in), bias(out, 0.0), activation(act) {}

std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& input) {
    if (input.size() != layer.in_dim()) throw ContractError("dense_forward: input size mismatch");
    std::vector<double> z = matvec(layer.weights, input);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += layer.bias[i];
    if (layer.activation == Activation::Tanh)
        for (auto& v : z) v = std::tanh(v);
    return z;
}

DenseGrads dense_backward(const DenseLayer& layer, const std::vector<double>& input,
                          const std::vector<double>& upstream_grad) {
    if (input.size() != layer.in_dim()) throw ContractError("dense_backward: input size mismatch");
    if (upstream_grad.size() != layer.out_dim())
        throw ContractError("dense_backward: upstream size mismatch");

    // dL/dz; for tanh, scale upstream by 1 - tanh(z)^2 = 1 - y^2
    std::vector<double> dz = upstream_grad;
    if (layer.activation == Activation::Tanh) {
        std::vector<double> z = matvec(layer.weights, input);
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double y = std::tanh(z[i] + layer.bias[i]);
            dz[i] *= 1.0 - y * y;
        }
    }

    DenseGrads g;
    g.weights = Matrix(layer.out_dim(), layer.in_dim());
    for (std::size_t i = 0; i < layer.out_dim(); ++i)
        for (std::size_t j = 0; j < layer.in_dim(); ++j) g.weights(i, j) = dz[i] * input[j];
    g.bias = dz;
    g.input = matvec_transposed(layer.weights, dz);
    return g;
}

AdamState::AdamState(std::size_t n, double lr_, double b1, double b2)
    : m(n, 0.0), v(n, 0.0), lr(lr_), beta1(b1), beta2(b2) {}

void adam_update(AdamState& state, std::vector<double>& params,
                 const std::vector<double>& grads) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw ContractError("adam_update: shape mismatch");

    state.step += 1;
    const double t = static_cast<double>(state.step);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps_hat);
    }
}

void ema_update(EmaState& state, const std::vector<double>& params) {
    if (state.shadow.size() != params.size()) throw ContractError("ema_update: shape mismatch");
    const double t = static_cast<double>(state.step);
    const double decay = std::min(0.999, (1.0 + t) / (10.0 + t));
    for (std::size_t i = 0; i < params.size(); ++i)
        state.shadow[i] = decay * state.shadow[i] + (1.0 - decay) * params[i];
    state.step += 1;
}

}  // namespace qldm
