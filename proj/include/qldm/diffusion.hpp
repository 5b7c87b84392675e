#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace qldm {

// Beta/alpha tables for T steps. Time indices are 1-based throughout: t in
// 1..T, and beta(t) reads the table at t-1.
struct DiffusionSchedule {
    int T = 0;
    std::vector<double> beta;
    std::vector<double> alpha;      // 1 - beta
    std::vector<double> alpha_bar;  // running product of alpha

    double beta_at(int t) const;
    double alpha_at(int t) const;
    double alpha_bar_at(int t) const;
};

DiffusionSchedule linear_schedule(int T, double beta_start, double beta_end);

using LatentVector = std::vector<double>;

// x_t = sqrt(1 - beta_t) x_{t-1} + sqrt(beta_t) eps
LatentVector forward_step(const DiffusionSchedule& schedule, const LatentVector& x_prev, int t,
                          const LatentVector& eps);

// Closed-form jump: x_t = sqrt(abar_t) x_0 + sqrt(1 - abar_t) eps
LatentVector diffuse_to(const DiffusionSchedule& schedule, const LatentVector& x0, int t,
                        const LatentVector& eps);

// mu = (x_t - (1 - alpha_t) / sqrt(1 - abar_t) * eps_pred) / sqrt(alpha_t)
LatentVector posterior_mean(const DiffusionSchedule& schedule, const LatentVector& x_t, int t,
                            const LatentVector& eps_pred);

// P2-weighted mean squared error: lambda_t * mean((pred - true)^2) with
// lambda_t = 1 / (k + SNR_t)^gamma and SNR_t = abar_t / (1 - abar_t).
double p2_loss(const DiffusionSchedule& schedule, const LatentVector& eps_pred,
               const LatentVector& eps_true, int t, double k = 1.0, double gamma = 1.0);

double p2_weight(const DiffusionSchedule& schedule, int t, double k = 1.0, double gamma = 1.0);

// Noise predictor: (x_t, t) -> eps_hat. Must be safe to call concurrently.
using DenoiserFn = std::function<LatentVector(const LatentVector&, int)>;

// Ancestral sampling of n chains of dimension d. Per-chain RNG streams are
// derived from (seed, chain index), so results are independent of thread
// count and chain evaluation order. The final step adds no noise.
std::vector<LatentVector> sample(const DiffusionSchedule& schedule, const DenoiserFn& denoiser,
                                 std::uint64_t seed, std::size_t n, std::size_t d);

}  // namespace qldm
