#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qldm/circuits.hpp"
#include "qldm/diffusion.hpp"
#include "qldm/nn.hpp"

namespace qldm {

// Classical = three 10->10 affine blocks (330 params at dim 10). The quantum
// variants swap each block for a variational circuit: BasicQ = basic ansatz,
// depth 4, Z observable; the rest are the expressive ansatz at depth 3 or 4
// measuring Z or X.
enum class DenoiserVariant { Classical, BasicQ, Expr3Z, Expr3X, Expr4Z, Expr4X };

// Canonical CLI/report names: classical, BasicQ, 3zQ, 3xQ, 4zQ, 4xQ.
std::string variant_name(DenoiserVariant v);
DenoiserVariant parse_variant(const std::string& name);
const std::vector<std::string>& variant_names();

struct DenoiserConfig {
    DenoiserVariant variant = DenoiserVariant::Classical;
    int dim = 10;  // latent dimension == qubit count
};

bool is_quantum(DenoiserVariant v);

// Circuit shared by all three blocks of a quantum variant.
CircuitSpec quantum_spec(const DenoiserConfig& config);

// Total trainable parameters: 330 / 120 / 270 / 270 / 360 / 360 at dim 10.
std::size_t count_params(const DenoiserConfig& config);

std::size_t block_param_count(const DenoiserConfig& config);

// Jointly trained parameters of the three blocks, stored flat so the
// optimizer and checkpoints see one vector; block i owns
// [i * block_param_count, (i+1) * block_param_count).
struct DenoiserParams {
    std::vector<double> flat;
};

// Sinusoidal positional encoding of the step index (raw, not scaled by T):
// sin(t / 10000^(2i/dim)) over the first half, cos over the second.
std::vector<double> time_embedding(int t, int dim, int T);

// eps_hat = x_t + Block3(Block1(x_t) + Block2(time_embedding(t)))
LatentVector predict_noise(const DenoiserConfig& config, const DenoiserParams& params,
                           const LatentVector& x_t, int t);

// Gradient of upstream . eps_hat with respect to every block parameter.
// Block3 contributes through its parameter Jacobian; Blocks 1 and 2 chain
// through Block3's input Jacobian. The skip path carries no parameters.
std::vector<double> grad_params(const DenoiserConfig& config, const DenoiserParams& params,
                                const LatentVector& x_t, int t,
                                const LatentVector& upstream_grad);

}  // namespace qldm
