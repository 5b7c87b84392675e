#include "qldm/denoiser.hpp"

#include <cctype>
#include <cmath>

#include "qldm/errors.hpp"

namespace qldm {

std::string variant_name(DenoiserVariant v) {
    switch (v) {
        case DenoiserVariant::Classical: return "classical";
        case DenoiserVariant::BasicQ: return "BasicQ";
        case DenoiserVariant::Expr3Z: return "3zQ";
        case DenoiserVariant::Expr3X: return "3xQ";
        case DenoiserVariant::Expr4Z: return "4zQ";
        case DenoiserVariant::Expr4X: return "4xQ";
    }
    throw ContractError("variant_name: unknown variant");
}

const std::vector<std::string>& variant_names() {
    static const std::vector<std::string> names = {"classical", "BasicQ", "3zQ",
                                                   "3xQ",       "4zQ",    "4xQ"};
    return names;
}

DenoiserVariant parse_variant(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
    if (lower == "classical") return DenoiserVariant::Classical;
    if (lower == "basicq") return DenoiserVariant::BasicQ;
    if (lower == "3zq") return DenoiserVariant::Expr3Z;
    if (lower == "3xq") return DenoiserVariant::Expr3X;
    if (lower == "4zq") return DenoiserVariant::Expr4Z;
    if (lower == "4xq") return DenoiserVariant::Expr4X;
    std::string valid;
    for (const auto& n : variant_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("unknown variant '" + name + "' (valid: " + valid + ")");
}

bool is_quantum(DenoiserVariant v) { return v != DenoiserVariant::Classical; }

CircuitSpec quantum_spec(const DenoiserConfig& config) {
    CircuitSpec spec;
    spec.n_qubits = config.dim;
    spec.entanglement = Entanglement::Circular;
    switch (config.variant) {
        case DenoiserVariant::BasicQ:
            spec.ansatz = AnsatzKind::Basic;
            spec.depth = 4;
            spec.observable_basis = Basis::Z;
            break;
        case DenoiserVariant::Expr3Z:
            spec.ansatz = AnsatzKind::Expressive;
            spec.depth = 3;
            spec.observable_basis = Basis::Z;
            break;
        case DenoiserVariant::Expr3X:
            spec.ansatz = AnsatzKind::Expressive;
            spec.depth = 3;
            spec.observable_basis = Basis::X;
            break;
        case DenoiserVariant::Expr4Z:
            spec.ansatz = AnsatzKind::Expressive;
            spec.depth = 4;
            spec.observable_basis = Basis::Z;
            break;
        case DenoiserVariant::Expr4X:
            spec.ansatz = AnsatzKind::Expressive;
            spec.depth = 4;
            spec.observable_basis = Basis::X;
            break;
        case DenoiserVariant::Classical:
            throw ContractError("quantum_spec: classical variant has no circuit");
    }
    return spec;
}

std::size_t block_param_count(const DenoiserConfig& config) {
    const std::size_t d = static_cast<std::size_t>(config.dim);
    if (config.variant == DenoiserVariant::Classical) return d * d + d;
    return param_count(quantum_spec(config));
}

std::size_t count_params(const DenoiserConfig& config) { return 3 * block_param_count(config); }

namespace {

void check_params(const DenoiserConfig& config, const DenoiserParams& params) {
    if (params.flat.size() != count_params(config))
        throw ContractError("denoiser: parameter vector length " +
                            std::to_string(params.flat.size()) + " != expected " +
                            std::to_string(count_params(config)));
}

std::vector<double> block_slice(const DenoiserConfig& config, const DenoiserParams& params,
                                int block) {
    const std::size_t bp = block_param_count(config);
    const auto begin = params.flat.begin() + static_cast<std::ptrdiff_t>(bp * block);
    return std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(bp));
}

DenseLayer dense_block(const DenoiserConfig& config, const DenoiserParams& params, int block) {
    const std::size_t d = static_cast<std::size_t>(config.dim);
    const std::size_t off = block_param_count(config) * static_cast<std::size_t>(block);
    DenseLayer layer(d, d, Activation::Identity);
    for (std::size_t i = 0; i < d * d; ++i) layer.weights.v[i] = params.flat[off + i];
    for (std::size_t i = 0; i < d; ++i) layer.bias[i] = params.flat[off + d * d + i];
    return layer;
}

// Odd dims (toy configs) leave the unpaired trailing slot at zero; the
// public time_embedding entry point requires an even dim.
std::vector<double> raw_time_embedding(int t, int dim) {
    const int half = dim / 2;
    std::vector<double> values(static_cast<std::size_t>(dim));
    for (int i = 0; i < half; ++i) {
        const double freq = std::pow(10000.0, 2.0 * i / dim);
        values[static_cast<std::size_t>(i)] = std::sin(t / freq);
        values[static_cast<std::size_t>(half + i)] = std::cos(t / freq);
    }
    return values;
}

}  // namespace

std::vector<double> time_embedding(int t, int dim, int T) {
    if (dim % 2 != 0) throw ContractError("time_embedding: dim must be even");
    if (t < 0 || t > T) throw ContractError("time_embedding: t outside 0..T");
    return raw_time_embedding(t, dim);
}

LatentVector predict_noise(const DenoiserConfig& config, const DenoiserParams& params,
                           const LatentVector& x_t, int t) {
    check_params(config, params);
    if (x_t.size() != static_cast<std::size_t>(config.dim))
        throw ContractError("predict_noise: latent dimension mismatch");

    const auto temb = raw_time_embedding(t, config.dim);
    LatentVector block3_out;

    if (is_quantum(config.variant)) {
        const auto spec = quantum_spec(config);
        const auto b1 = evaluate(spec, block_slice(config, params, 0), x_t);
        const auto b2 = evaluate(spec, block_slice(config, params, 1), temb);
        LatentVector u(b1.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = b1[i] + b2[i];
        block3_out = evaluate(spec, block_slice(config, params, 2), u);
    } else {
        const auto l1 = dense_block(config, params, 0);
        const auto l2 = dense_block(config, params, 1);
        const auto l3 = dense_block(config, params, 2);
        const auto b1 = dense_forward(l1, x_t);
        const auto b2 = dense_forward(l2, temb);
        LatentVector u(b1.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = b1[i] + b2[i];
        block3_out = dense_forward(l3, u);
    }

    LatentVector eps(x_t.size());
    for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = x_t[i] + block3_out[i];
    return eps;
}

std::vector<double> grad_params(const DenoiserConfig& config, const DenoiserParams& params,
                                const LatentVector& x_t, int t,
                                const LatentVector& upstream_grad) {
    check_params(config, params);
    if (x_t.size() != static_cast<std::size_t>(config.dim) ||
        upstream_grad.size() != static_cast<std::size_t>(config.dim))
        throw ContractError("grad_params: dimension mismatch");

    const auto temb = raw_time_embedding(t, config.dim);
    const std::size_t bp = block_param_count(config);
    std::vector<double> grad(count_params(config), 0.0);

    if (is_quantum(config.variant)) {
        const auto spec = quantum_spec(config);
        const auto p1 = block_slice(config, params, 0);
        const auto p2 = block_slice(config, params, 1);
        const auto p3 = block_slice(config, params, 2);

        const auto b1 = evaluate(spec, p1, x_t);
        const auto b2 = evaluate(spec, p2, temb);
        LatentVector u(b1.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = b1[i] + b2[i];

        const Matrix j3_params = param_shift_grad(spec, p3, u);
        const Matrix j3_input = input_shift_grad(spec, p3, u);
        const auto g3 = matvec_transposed(j3_params, upstream_grad);
        const auto g_u = matvec_transposed(j3_input, upstream_grad);

        const Matrix j1_params = param_shift_grad(spec, p1, x_t);
        const Matrix j2_params = param_shift_grad(spec, p2, temb);
        const auto g1 = matvec_transposed(j1_params, g_u);
        const auto g2 = matvec_transposed(j2_params, g_u);

        for (std::size_t i = 0; i < bp; ++i) {
            grad[i] = g1[i];
            grad[bp + i] = g2[i];
            grad[2 * bp + i] = g3[i];
        }
    } else {
        const auto l1 = dense_block(config, params, 0);
        const auto l2 = dense_block(config, params, 1);
        const auto l3 = dense_block(config, params, 2);
        const auto b1 = dense_forward(l1, x_t);
        const auto b2 = dense_forward(l2, temb);
        LatentVector u(b1.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = b1[i] + b2[i];

        const auto g3 = dense_backward(l3, u, upstream_grad);
        const auto g1 = dense_backward(l1, x_t, g3.input);
        const auto g2 = dense_backward(l2, temb, g3.input);

        const std::size_t d = static_cast<std::size_t>(config.dim);
        auto write_block = [&](std::size_t block, const DenseGrads& g) {
            const std::size_t off = bp * block;
            for (std::size_t i = 0; i < d * d; ++i) grad[off + i] = g.weights.v[i];
            for (std::size_t i = 0; i < d; ++i) grad[off + d * d + i] = g.bias[i];
        };
        write_block(0, g1);
        write_block(1, g2);
        write_block(2, g3);
    }
    return grad;
}

}  // namespace qldm
