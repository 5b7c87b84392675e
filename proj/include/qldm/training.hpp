#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qldm/data.hpp"
#include "qldm/denoiser.hpp"
#include "qldm/diffusion.hpp"
#include "qldm/nn.hpp"

namespace qldm {

struct TrainConfig {
    DenoiserConfig denoiser;
    int epochs = 40;
    int batch_size = 64;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.99;
    int T = 200;
    double beta_start = 1e-4;
    double beta_end = 0.02;
    double dataset_fraction = 1.0;
    std::uint64_t seed = 0;
    int checkpoint_every = 0;  // epochs between checkpoints; 0 disables
    double p2_k = 1.0;
    double p2_gamma = 1.0;

    enum class Init : std::uint8_t { Random = 0, Zero = 1 };
    Init init = Init::Random;
};

void validate(const TrainConfig& config);

struct TrainLogEntry {
    std::uint64_t iteration = 0;  // 1-based
    int epoch = 0;                // 1-based
    double loss = 0.0;
};

struct TrainLog {
    std::vector<TrainLogEntry> iterations;
    std::vector<double> epoch_ema_loss;  // P2 loss of the EMA shadow on a fixed probe batch
    std::vector<double> epoch_seconds;
};

// Complete mutable training state; a QDM1 checkpoint captures all of it,
// including the RNG engines, so a resumed run is bit-identical to an
// uninterrupted one.
struct TrainState {
    TrainConfig config;
    DenoiserParams params;
    AdamState adam;
    EmaState ema;
    std::uint64_t iteration = 0;
    int epochs_done = 0;
    std::mt19937_64 shuffle_rng;
    std::mt19937_64 time_rng;
    std::mt19937_64 noise_rng;
};

TrainState init_train_state(const TrainConfig& config);

// One optimizer step on an explicit batch (time indices and noises supplied
// by the caller); returns the batch P2 loss before the update. Gradients are
// averaged per element in index order, independent of thread count.
double training_step(const DiffusionSchedule& schedule, TrainState& state,
                     const std::vector<LatentVector>& x0_batch, const std::vector<int>& ts,
                     const std::vector<LatentVector>& eps_batch);

using EpochCallback = std::function<void(const TrainState&, const TrainLog&)>;

// Runs epochs [state.epochs_done, config.epochs). The callback fires after
// every completed epoch (checkpointing, log flushing).
void train_epochs(TrainState& state, const LatentDataset& latents, TrainLog& log,
                  const EpochCallback& on_epoch = {});

struct TrainResult {
    TrainState state;
    TrainLog log;
};

// Full run from scratch: applies the configured dataset fraction, trains all
// epochs. Aborts with a diagnostic on non-finite loss.
TrainResult train(const TrainConfig& config, const LatentDataset& latents,
                  const EpochCallback& on_epoch = {});

// QDM1 checkpoint: magic, version, config, progress counters, parameters,
// Adam moments, EMA shadow, RNG algorithm tag + engine states.
void checkpoint_save(const std::string& path, const TrainState& state);
TrainState checkpoint_load(const std::string& path);

// Throws ConfigError naming the first differing field.
void ensure_compatible(const TrainConfig& checkpoint, const TrainConfig& requested);

// Ancestral sampling with the EMA shadow parameters (never the live ones).
std::vector<LatentVector> sample_with_ema(const TrainState& state, std::size_t n,
                                          std::uint64_t seed);

}  // namespace qldm
