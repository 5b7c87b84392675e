#include "qldm/training.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "qldm/errors.hpp"
#include "qldm/rng.hpp"

namespace qldm {

void validate(const TrainConfig& config) {
    if (config.denoiser.dim < 1) throw ConfigError("train: latent dimension must be >= 1");
    if (config.epochs < 1) throw ConfigError("train: epochs must be >= 1");
    if (config.batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
    if (!(config.lr > 0.0)) throw ConfigError("train: lr must be > 0");
    if (config.T < 1) throw ConfigError("train: T must be >= 1");
    if (!(config.dataset_fraction > 0.0) || config.dataset_fraction > 1.0)
        throw ConfigError("train: dataset_fraction must be in (0, 1]");
    if (config.checkpoint_every < 0) throw ConfigError("train: checkpoint_every must be >= 0");
}

TrainState init_train_state(const TrainConfig& config) {
    validate(config);
    TrainState state;
    state.config = config;

    const std::size_t n_params = count_params(config.denoiser);
    state.params.flat.assign(n_params, 0.0);
    if (config.init == TrainConfig::Init::Random) {
        auto g = make_stream(config.seed, RngStream::ParamInit);
        if (is_quantum(config.denoiser.variant)) {
            // rotation angles over the full period
            for (auto& p : state.params.flat) p = (2.0 * uniform01(g) - 1.0) * M_PI;
        } else {
            // Xavier uniform per 10x10 affine block; biases stay zero
            const std::size_t d = static_cast<std::size_t>(config.denoiser.dim);
            const double limit = std::sqrt(6.0 / static_cast<double>(2 * d));
            const std::size_t bp = block_param_count(config.denoiser);
            for (std::size_t b = 0; b < 3; ++b)
                for (std::size_t i = 0; i < d * d; ++i)
                    state.params.flat[b * bp + i] = (2.0 * uniform01(g) - 1.0) * limit;
        }
    }

    state.adam = AdamState(n_params, config.lr, config.beta1, config.beta2);
    state.ema.shadow = state.params.flat;
    state.ema.step = 0;
    state.shuffle_rng = make_stream(config.seed, RngStream::Shuffle);
    state.time_rng = make_stream(config.seed, RngStream::TimeDraw);
    state.noise_rng = make_stream(config.seed, RngStream::NoiseDraw);
    return state;
}

double training_step(const DiffusionSchedule& schedule, TrainState& state,
                     const std::vector<LatentVector>& x0_batch, const std::vector<int>& ts,
                     const std::vector<LatentVector>& eps_batch) {
    const std::size_t bsz = x0_batch.size();
    if (bsz == 0 || ts.size() != bsz || eps_batch.size() != bsz)
        throw ContractError("training_step: batch arrays must have equal nonzero length");
    const TrainConfig& cfg = state.config;
    const std::size_t d = static_cast<std::size_t>(cfg.denoiser.dim);

    std::vector<double> losses(bsz, 0.0);
    std::vector<std::vector<double>> grads(bsz);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(bsz); ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const int t = ts[i];
        const LatentVector x_t = diffuse_to(schedule, x0_batch[i], t, eps_batch[i]);
        const LatentVector pred = predict_noise(cfg.denoiser, state.params, x_t, t);
        losses[i] = p2_loss(schedule, pred, eps_batch[i], t, cfg.p2_k, cfg.p2_gamma);

        const double lambda = p2_weight(schedule, t, cfg.p2_k, cfg.p2_gamma);
        LatentVector upstream(d);
        for (std::size_t j = 0; j < d; ++j)
            upstream[j] = lambda * 2.0 * (pred[j] - eps_batch[i][j]) / static_cast<double>(d);
        grads[i] = grad_params(cfg.denoiser, state.params, x_t, t, upstream);
    }

    // fixed-order reduction: same result for any thread count
    double batch_loss = 0.0;
    std::vector<double> grad(state.params.flat.size(), 0.0);
    for (std::size_t i = 0; i < bsz; ++i) {
        batch_loss += losses[i];
        for (std::size_t j = 0; j < grad.size(); ++j)
            grad[j] += grads[i][j] / static_cast<double>(bsz);
    }
    batch_loss /= static_cast<double>(bsz);

    if (!std::isfinite(batch_loss))
        throw std::runtime_error("training aborted: non-finite loss at iteration " +
                                 std::to_string(state.iteration + 1) +
                                 " (check schedule and encoding ranges)");

    adam_update(state.adam, state.params.flat, grad);
    ema_update(state.ema, state.params.flat);
    state.iteration += 1;
    return batch_loss;
}

namespace {

// P2 loss of the EMA shadow on a fixed probe batch; stream-separated so the
// evaluation never disturbs the training draws.
double ema_probe_loss(const TrainState& state, const DiffusionSchedule& schedule,
                      const LatentDataset& latents, int epoch_index) {
    const TrainConfig& cfg = state.config;
    const std::size_t probe =
        std::min(latents.count, static_cast<std::size_t>(cfg.batch_size));
    auto g = make_stream(cfg.seed, RngStream::Evaluation,
                         static_cast<std::uint64_t>(epoch_index));

    DenoiserParams ema_params;
    ema_params.flat = state.ema.shadow;

    std::vector<int> ts(probe);
    std::vector<LatentVector> eps(probe);
    for (std::size_t i = 0; i < probe; ++i) {
        ts[i] = 1 + static_cast<int>(bounded(g, static_cast<std::uint64_t>(cfg.T)));
        eps[i] = normal_vector(g, static_cast<std::size_t>(cfg.denoiser.dim));
    }

    std::vector<double> losses(probe, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(probe); ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const LatentVector x_t = diffuse_to(schedule, latents.row_vec(i), ts[i], eps[i]);
        const LatentVector pred = predict_noise(cfg.denoiser, ema_params, x_t, ts[i]);
        losses[i] = p2_loss(schedule, pred, eps[i], ts[i], cfg.p2_k, cfg.p2_gamma);
    }
    return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(probe);
}

}  // namespace

void train_epochs(TrainState& state, const LatentDataset& latents, TrainLog& log,
                  const EpochCallback& on_epoch) {
    const TrainConfig& cfg = state.config;
    if (latents.count == 0) throw ContractError("train: latent dataset is empty");
    if (latents.dim != static_cast<std::size_t>(cfg.denoiser.dim))
        throw ContractError("train: latent dimension " + std::to_string(latents.dim) +
                            " != configured " + std::to_string(cfg.denoiser.dim));

    const DiffusionSchedule schedule = linear_schedule(cfg.T, cfg.beta_start, cfg.beta_end);
    const std::size_t d = latents.dim;

    std::vector<std::size_t> order(latents.count);

    for (int epoch = state.epochs_done; epoch < cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        // each epoch permutes the identity, so the engine state alone fixes
        // the order and a resumed run shuffles identically
        std::iota(order.begin(), order.end(), 0);
        shuffle_indices(state.shuffle_rng, order);

        for (std::size_t start = 0; start < latents.count;
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(latents.count, start + static_cast<std::size_t>(cfg.batch_size));
            const std::size_t bsz = end - start;

            std::vector<LatentVector> x0(bsz);
            std::vector<int> ts(bsz);
            std::vector<LatentVector> eps(bsz);
            for (std::size_t i = 0; i < bsz; ++i) {
                x0[i] = latents.row_vec(order[start + i]);
                ts[i] = 1 + static_cast<int>(
                                bounded(state.time_rng, static_cast<std::uint64_t>(cfg.T)));
                eps[i] = normal_vector(state.noise_rng, d);
            }

            const double loss = training_step(schedule, state, x0, ts, eps);
            log.iterations.push_back({state.iteration, epoch + 1, loss});
        }

        log.epoch_ema_loss.push_back(ema_probe_loss(state, schedule, latents, epoch));
        const auto t1 = std::chrono::steady_clock::now();
        log.epoch_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        state.epochs_done = epoch + 1;
        if (on_epoch) on_epoch(state, log);
    }
}

TrainResult train(const TrainConfig& config, const LatentDataset& latents,
                  const EpochCallback& on_epoch) {
    validate(config);
    TrainResult result;
    result.state = init_train_state(config);
    const LatentDataset working =
        config.dataset_fraction < 1.0
            ? subset_fraction(latents, config.dataset_fraction, config.seed)
            : latents;
    train_epochs(result.state, working, result.log, on_epoch);
    return result;
}

// ---------------------------------------------------------------------------
// QDM1 checkpoints

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16),
                               std::uint8_t(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = std::uint8_t(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}

void write_vec(std::ostream& out, const std::vector<double>& v) {
    write_u32(out, static_cast<std::uint32_t>(v.size()));
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * 8));
}

void write_str(std::ostream& out, const std::string& s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t read_u32(std::istream& in, const std::string& path) {
    std::uint8_t b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw FormatError(path + ": truncated");
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

std::uint64_t read_u64(std::istream& in, const std::string& path) {
    std::uint8_t b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw FormatError(path + ": truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

double read_f64(std::istream& in, const std::string& path) {
    double v = 0.0;
    if (!in.read(reinterpret_cast<char*>(&v), 8)) throw FormatError(path + ": truncated");
    return v;
}

std::vector<double> read_vec(std::istream& in, const std::string& path) {
    const std::uint32_t n = read_u32(in, path);
    std::vector<double> v(n);
    if (n > 0 && !in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n) * 8))
        throw FormatError(path + ": truncated array");
    return v;
}

std::string read_str(std::istream& in, const std::string& path) {
    const std::uint32_t n = read_u32(in, path);
    std::string s(n, '\0');
    if (n > 0 && !in.read(s.data(), static_cast<std::streamsize>(n)))
        throw FormatError(path + ": truncated string");
    return s;
}

constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace

void checkpoint_save(const std::string& path, const TrainState& state) {
    if (path.empty()) throw IoError("checkpoint_save: empty path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");

    const TrainConfig& c = state.config;
    out.write("QDM1", 4);
    write_u32(out, kCheckpointVersion);
    out.put(static_cast<char>(c.denoiser.variant));
    write_u32(out, static_cast<std::uint32_t>(c.denoiser.dim));
    write_u32(out, static_cast<std::uint32_t>(c.epochs));
    write_u32(out, static_cast<std::uint32_t>(c.batch_size));
    write_f64(out, c.lr);
    write_f64(out, c.beta1);
    write_f64(out, c.beta2);
    write_u32(out, static_cast<std::uint32_t>(c.T));
    write_f64(out, c.beta_start);
    write_f64(out, c.beta_end);
    write_f64(out, c.dataset_fraction);
    write_u64(out, c.seed);
    write_u32(out, static_cast<std::uint32_t>(c.checkpoint_every));
    write_f64(out, c.p2_k);
    write_f64(out, c.p2_gamma);
    out.put(static_cast<char>(c.init));

    write_u64(out, state.iteration);
    write_u32(out, static_cast<std::uint32_t>(state.epochs_done));
    write_vec(out, state.params.flat);
    write_u64(out, state.adam.step);
    write_vec(out, state.adam.m);
    write_vec(out, state.adam.v);
    write_u64(out, state.ema.step);
    write_vec(out, state.ema.shadow);
    write_str(out, kRngAlgorithm);
    write_str(out, serialize_engine(state.shuffle_rng));
    write_str(out, serialize_engine(state.time_rng));
    write_str(out, serialize_engine(state.noise_rng));
    if (!out) throw IoError(path + ": write failed");
}

TrainState checkpoint_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "QDM1", 4) != 0)
        throw FormatError(path + ": bad magic (expected QDM1)");
    const std::uint32_t version = read_u32(in, path);
    if (version != kCheckpointVersion)
        throw FormatError(path + ": unsupported checkpoint version " + std::to_string(version));

    TrainState state;
    TrainConfig& c = state.config;
    int v = in.get();
    if (v < 0 || v > 5) throw FormatError(path + ": bad variant tag");
    c.denoiser.variant = static_cast<DenoiserVariant>(v);
    c.denoiser.dim = static_cast<int>(read_u32(in, path));
    c.epochs = static_cast<int>(read_u32(in, path));
    c.batch_size = static_cast<int>(read_u32(in, path));
    c.lr = read_f64(in, path);
    c.beta1 = read_f64(in, path);
    c.beta2 = read_f64(in, path);
    c.T = static_cast<int>(read_u32(in, path));
    c.beta_start = read_f64(in, path);
    c.beta_end = read_f64(in, path);
    c.dataset_fraction = read_f64(in, path);
    c.seed = read_u64(in, path);
    c.checkpoint_every = static_cast<int>(read_u32(in, path));
    c.p2_k = read_f64(in, path);
    c.p2_gamma = read_f64(in, path);
    const int init_tag = in.get();
    if (init_tag < 0 || init_tag > 1) throw FormatError(path + ": bad init tag");
    c.init = static_cast<TrainConfig::Init>(init_tag);

    state.iteration = read_u64(in, path);
    state.epochs_done = static_cast<int>(read_u32(in, path));
    state.params.flat = read_vec(in, path);
    state.adam = AdamState(state.params.flat.size(), c.lr, c.beta1, c.beta2);
    state.adam.step = read_u64(in, path);
    state.adam.m = read_vec(in, path);
    state.adam.v = read_vec(in, path);
    state.ema.step = read_u64(in, path);
    state.ema.shadow = read_vec(in, path);

    const std::string algo = read_str(in, path);
    if (algo != kRngAlgorithm)
        throw FormatError(path + ": checkpoint uses RNG '" + algo + "', this build expects '" +
                          kRngAlgorithm + "'");
    state.shuffle_rng = deserialize_engine(read_str(in, path));
    state.time_rng = deserialize_engine(read_str(in, path));
    state.noise_rng = deserialize_engine(read_str(in, path));

    if (state.params.flat.size() != count_params(c.denoiser))
        throw FormatError(path + ": parameter count does not match config");
    if (state.adam.m.size() != state.params.flat.size() ||
        state.ema.shadow.size() != state.params.flat.size())
        throw FormatError(path + ": optimizer state size mismatch");
    return state;
}

void ensure_compatible(const TrainConfig& checkpoint, const TrainConfig& requested) {
    auto fail = [](const std::string& field) {
        throw ConfigError("checkpoint incompatible with requested config: field '" + field +
                          "' differs");
    };
    if (checkpoint.denoiser.variant != requested.denoiser.variant) fail("variant");
    if (checkpoint.denoiser.dim != requested.denoiser.dim) fail("dim");
    if (checkpoint.batch_size != requested.batch_size) fail("batch_size");
    if (checkpoint.lr != requested.lr) fail("lr");
    if (checkpoint.beta1 != requested.beta1) fail("beta1");
    if (checkpoint.beta2 != requested.beta2) fail("beta2");
    if (checkpoint.T != requested.T) fail("T");
    if (checkpoint.beta_start != requested.beta_start) fail("beta_start");
    if (checkpoint.beta_end != requested.beta_end) fail("beta_end");
    if (checkpoint.dataset_fraction != requested.dataset_fraction) fail("dataset_fraction");
    if (checkpoint.seed != requested.seed) fail("seed");
    if (checkpoint.p2_k != requested.p2_k) fail("p2_k");
    if (checkpoint.p2_gamma != requested.p2_gamma) fail("p2_gamma");
    if (checkpoint.init != requested.init) fail("init");
}

std::vector<LatentVector> sample_with_ema(const TrainState& state, std::size_t n,
                                          std::uint64_t seed) {
    const TrainConfig& cfg = state.config;
    const DiffusionSchedule schedule = linear_schedule(cfg.T, cfg.beta_start, cfg.beta_end);
    DenoiserParams ema_params;
    ema_params.flat = state.ema.shadow;
    const DenoiserConfig dcfg = cfg.denoiser;
    DenoiserFn fn = [dcfg, ema_params](const LatentVector& x, int t) {
        return predict_noise(dcfg, ema_params, x, t);
    };
    return sample(schedule, fn, seed, n, static_cast<std::size_t>(cfg.denoiser.dim));
}

}  // namespace qldm
