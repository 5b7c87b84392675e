#include "qldm/diffusion.hpp"

#include <cmath>
#include <string>

#include "qldm/errors.hpp"
#include "qldm/rng.hpp"

namespace qldm {

namespace {

void check_t(const DiffusionSchedule& schedule, int t) {
    if (t < 1 || t > schedule.T)
        throw ContractError("diffusion: step " + std::to_string(t) + " outside 1.." +
                            std::to_string(schedule.T));
}

void check_dims(const LatentVector& a, const LatentVector& b, const char* what) {
    if (a.size() != b.size()) throw ContractError(std::string(what) + ": dimension mismatch");
}

}  // namespace

double DiffusionSchedule::beta_at(int t) const {
    check_t(*this, t);
    return beta[static_cast<std::size_t>(t - 1)];
}

double DiffusionSchedule::alpha_at(int t) const {
    check_t(*this, t);
    return alpha[static_cast<std::size_t>(t - 1)];
}

double DiffusionSchedule::alpha_bar_at(int t) const {
    check_t(*this, t);
    return alpha_bar[static_cast<std::size_t>(t - 1)];
}

DiffusionSchedule linear_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) throw ContractError("linear_schedule: T must be >= 1");
    if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0))
        throw ContractError("linear_schedule: need 0 < beta_start <= beta_end < 1");

    DiffusionSchedule s;
    s.T = T;
    s.beta.resize(static_cast<std::size_t>(T));
    s.alpha.resize(static_cast<std::size_t>(T));
    s.alpha_bar.resize(static_cast<std::size_t>(T));
    double prod = 1.0;
    for (int t = 0; t < T; ++t) {
        const double frac = (T == 1) ? 0.0 : static_cast<double>(t) / (T - 1);
        const double b = beta_start + (beta_end - beta_start) * frac;
        s.beta[static_cast<std::size_t>(t)] = b;
        s.alpha[static_cast<std::size_t>(t)] = 1.0 - b;
        prod *= 1.0 - b;
        s.alpha_bar[static_cast<std::size_t>(t)] = prod;
    }
    return s;
}

LatentVector forward_step(const DiffusionSchedule& schedule, const LatentVector& x_prev, int t,
                          const LatentVector& eps) {
    check_t(schedule, t);
    check_dims(x_prev, eps, "forward_step");
    const double b = schedule.beta_at(t);
    const double keep = std::sqrt(1.0 - b);
    const double add = std::sqrt(b);
    LatentVector out(x_prev.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = keep * x_prev[i] + add * eps[i];
    return out;
}

LatentVector diffuse_to(const DiffusionSchedule& schedule, const LatentVector& x0, int t,
                        const LatentVector& eps) {
    check_t(schedule, t);
    check_dims(x0, eps, "diffuse_to");
    const double abar = schedule.alpha_bar_at(t);
    const double signal = std::sqrt(abar);
    const double noise = std::sqrt(1.0 - abar);
    LatentVector out(x0.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = signal * x0[i] + noise * eps[i];
    return out;
}

LatentVector posterior_mean(const DiffusionSchedule& schedule, const LatentVector& x_t, int t,
                            const LatentVector& eps_pred) {
    check_t(schedule, t);
    check_dims(x_t, eps_pred, "posterior_mean");
    const double a = schedule.alpha_at(t);
    const double abar = schedule.alpha_bar_at(t);
    const double inv_sqrt_a = 1.0 / std::sqrt(a);
    // with beta_t = 0 the eps coefficient vanishes and x_t passes through
    const double coef = (a == 1.0) ? 0.0 : (1.0 - a) / std::sqrt(1.0 - abar);
    LatentVector out(x_t.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = inv_sqrt_a * (x_t[i] - coef * eps_pred[i]);
    return out;
}

double p2_weight(const DiffusionSchedule& schedule, int t, double k, double gamma) {
    const double abar = schedule.alpha_bar_at(t);
    const double snr = abar / (1.0 - abar);
    return 1.0 / std::pow(k + snr, gamma);
}

double p2_loss(const DiffusionSchedule& schedule, const LatentVector& eps_pred,
               const LatentVector& eps_true, int t, double k, double gamma) {
    check_dims(eps_pred, eps_true, "p2_loss");
    if (eps_pred.empty()) throw ContractError("p2_loss: empty vectors");
    double mse = 0.0;
    for (std::size_t i = 0; i < eps_pred.size(); ++i) {
        const double d = eps_pred[i] - eps_true[i];
        mse += d * d;
    }
    mse /= static_cast<double>(eps_pred.size());
    return p2_weight(schedule, t, k, gamma) * mse;
}

std::vector<LatentVector> sample(const DiffusionSchedule& schedule, const DenoiserFn& denoiser,
                                 std::uint64_t seed, std::size_t n, std::size_t d) {
    std::vector<LatentVector> out(n);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t chain = 0; chain < static_cast<std::int64_t>(n); ++chain) {
        auto g = make_stream(seed, RngStream::Sampling, static_cast<std::uint64_t>(chain));
        LatentVector x = normal_vector(g, d);
        for (int t = schedule.T; t >= 1; --t) {
            const LatentVector eps_hat = denoiser(x, t);
            LatentVector mu = posterior_mean(schedule, x, t, eps_hat);
            if (t > 1) {
                const double sigma = std::sqrt(schedule.beta_at(t));
                for (std::size_t i = 0; i < d; ++i) mu[i] += sigma * normal(g);
            }
            x = std::move(mu);
        }
        out[static_cast<std::size_t>(chain)] = std::move(x);
    }
    return out;
}

}  // namespace qldm
