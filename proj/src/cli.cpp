#include "qldm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qldm/autoencoder.hpp"
#include "qldm/circuits.hpp"
#include "qldm/data.hpp"
#include "qldm/denoiser.hpp"
#include "qldm/errors.hpp"
#include "qldm/metrics.hpp"
#include "qldm/plot.hpp"
#include "qldm/threading.hpp"
#include "qldm/training.hpp"

namespace qldm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// config

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("unknown config key '" + where + it.key() + "'");
    }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["dataset"] = {{"images", c.images_path}, {"labels", c.labels_path},
                    {"fraction", c.fraction}};
    j["autoencoder"] = {{"hidden", c.ae_hidden},
                        {"latent_dim", c.latent_dim},
                        {"epochs", c.ae_epochs},
                        {"batch_size", c.ae_batch},
                        {"lr", c.ae_lr}};
    j["diffusion"] = {{"T", c.T}, {"beta_start", c.beta_start}, {"beta_end", c.beta_end}};
    j["train"] = {{"variants", c.variants},   {"epochs", c.epochs},
                  {"batch_size", c.batch_size}, {"lr", c.lr},
                  {"beta1", c.beta1},          {"beta2", c.beta2},
                  {"checkpoint_every", c.checkpoint_every}};
    j["sample"] = {{"count", c.sample_count}};
    j["evaluate"] = {{"kid_subset_size", c.kid_subset_size}, {"kid_subsets", c.kid_subsets}};
    return j;
}

ExperimentConfig from_json(const json& j) {
    ExperimentConfig c;
    reject_unknown(j, {"schema_version", "seed", "output_dir", "dataset", "autoencoder",
                       "diffusion", "train", "sample", "evaluate"},
                   "");
    if (!j.contains("schema_version"))
        throw ConfigError("config is missing required key 'schema_version'");
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != 1)
        throw ConfigError("unsupported config schema_version " +
                          std::to_string(c.schema_version) + " (this build reads version 1)");
    read_field(j, "seed", c.seed);
    read_field(j, "output_dir", c.output_dir);
    if (j.contains("dataset")) {
        const auto& d = j.at("dataset");
        reject_unknown(d, {"images", "labels", "fraction"}, "dataset.");
        read_field(d, "images", c.images_path);
        read_field(d, "labels", c.labels_path);
        read_field(d, "fraction", c.fraction);
    }
    if (j.contains("autoencoder")) {
        const auto& a = j.at("autoencoder");
        reject_unknown(a, {"hidden", "latent_dim", "epochs", "batch_size", "lr"}, "autoencoder.");
        read_field(a, "hidden", c.ae_hidden);
        read_field(a, "latent_dim", c.latent_dim);
        read_field(a, "epochs", c.ae_epochs);
        read_field(a, "batch_size", c.ae_batch);
        read_field(a, "lr", c.ae_lr);
    }
    if (j.contains("diffusion")) {
        const auto& d = j.at("diffusion");
        reject_unknown(d, {"T", "beta_start", "beta_end"}, "diffusion.");
        read_field(d, "T", c.T);
        read_field(d, "beta_start", c.beta_start);
        read_field(d, "beta_end", c.beta_end);
    }
    if (j.contains("train")) {
        const auto& t = j.at("train");
        reject_unknown(t, {"variants", "epochs", "batch_size", "lr", "beta1", "beta2",
                           "checkpoint_every"},
                       "train.");
        read_field(t, "variants", c.variants);
        read_field(t, "epochs", c.epochs);
        read_field(t, "batch_size", c.batch_size);
        read_field(t, "lr", c.lr);
        read_field(t, "beta1", c.beta1);
        read_field(t, "beta2", c.beta2);
        read_field(t, "checkpoint_every", c.checkpoint_every);
    }
    if (j.contains("sample")) {
        const auto& s = j.at("sample");
        reject_unknown(s, {"count"}, "sample.");
        read_field(s, "count", c.sample_count);
    }
    if (j.contains("evaluate")) {
        const auto& e = j.at("evaluate");
        reject_unknown(e, {"kid_subset_size", "kid_subsets"}, "evaluate.");
        read_field(e, "kid_subset_size", c.kid_subset_size);
        read_field(e, "kid_subsets", c.kid_subsets);
    }
    return c;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open config");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return from_json(j);
}

std::string config_hash(const ExperimentConfig& config) {
    const std::string dump = to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// ---------------------------------------------------------------------------
// output helpers

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_sidecar(const std::string& target, const ExperimentConfig& config,
                   const std::string& command) {
    json j;
    j["config_hash"] = config_hash(config);
    j["command"] = command;
    j["schema_version"] = config.schema_version;
    std::ofstream out(target + ".meta.json");
    if (!out) throw IoError(target + ".meta.json: cannot open for writing");
    out << j.dump(2) << "\n";
}

std::ofstream open_csv(const std::string& path, const ExperimentConfig& config,
                       const std::string& header) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "# config_hash=" << config_hash(config) << "\n" << header << "\n";
    return out;
}

void write_pgm(const std::string& path, const std::vector<double>& pixels,
               const std::string& hash) {
    if (pixels.size() != 784) throw ContractError("write_pgm: expected 784 pixels");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P5\n# config_hash=" << hash << "\n28 28\n255\n";
    for (double v : pixels) {
        const double clamped = std::clamp(v, -1.0, 1.0);
        const int byte = static_cast<int>(std::lround((clamped + 1.0) * 127.5));
        out.put(static_cast<char>(std::clamp(byte, 0, 255)));
    }
    if (!out) throw IoError(path + ": write failed");
}

ImageDataset load_images(const ExperimentConfig& config) {
    if (config.images_path.empty())
        throw ConfigError("no image path given (set dataset.images or --images)");
    const RawImages raw = load_idx_images(config.images_path);
    std::vector<std::uint8_t> labels;
    if (!config.labels_path.empty()) {
        labels = load_idx_labels(config.labels_path);
        if (labels.size() != raw.count)
            throw FormatError(config.labels_path + ": label count " +
                              std::to_string(labels.size()) + " != image count " +
                              std::to_string(raw.count));
    }
    return make_image_dataset(raw, std::move(labels));
}

TrainConfig make_train_config(const ExperimentConfig& config, const std::string& variant) {
    TrainConfig tc;
    tc.denoiser.variant = parse_variant(variant);
    tc.denoiser.dim = config.latent_dim;
    tc.epochs = config.epochs;
    tc.batch_size = config.batch_size;
    tc.lr = config.lr;
    tc.beta1 = config.beta1;
    tc.beta2 = config.beta2;
    tc.T = config.T;
    tc.beta_start = config.beta_start;
    tc.beta_end = config.beta_end;
    tc.dataset_fraction = config.fraction;
    tc.seed = config.seed;
    tc.checkpoint_every = config.checkpoint_every;
    return tc;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_train_autoencoder(const ExperimentConfig& config) {
    const ImageDataset dataset = load_images(config);
    std::printf("training autoencoder on %zu images (784 -> %d -> %d)\n", dataset.count,
                config.ae_hidden, config.latent_dim);

    AutoencoderModel model =
        AutoencoderModel::create(config.latent_dim, config.ae_hidden, config.seed);
    const auto log = train_autoencoder(model, dataset, config.ae_epochs, config.ae_batch,
                                       config.ae_lr, config.seed);

    fs::create_directories(config.output_dir);
    const std::string ckpt = (fs::path(config.output_dir) / "autoencoder.qae1").string();
    save_autoencoder(ckpt, model);
    write_sidecar(ckpt, config, "train-autoencoder");

    const std::string csv_path = (fs::path(config.output_dir) / "autoencoder_mse.csv").string();
    auto csv = open_csv(csv_path, config, "epoch,mse");
    for (std::size_t e = 0; e < log.epoch_mse.size(); ++e)
        csv << (e + 1) << "," << fmt_double(log.epoch_mse[e]) << "\n";

    std::printf("wrote %s and %s (final mse %.6f)\n", ckpt.c_str(), csv_path.c_str(),
                log.epoch_mse.back());
    return 0;
}

int cmd_encode(const ExperimentConfig& config, const std::string& ae_path,
               const std::string& out_path) {
    const AutoencoderModel model = load_autoencoder(ae_path);
    ImageDataset dataset = load_images(config);
    if (config.fraction < 1.0)
        dataset = subset_fraction(dataset, config.fraction, config.seed);

    const LatentDataset latents =
        encode_dataset(model, dataset, fs::path(config.images_path).filename().string());
    save_latents(out_path, latents);
    write_sidecar(out_path, config, "encode");
    std::printf("encoded %zu images into %zu-dimensional latents -> %s\n", dataset.count,
                latents.dim, out_path.c_str());
    return 0;
}

int cmd_train(const ExperimentConfig& config, const std::string& latents_path,
              const std::string& resume_path) {
    const LatentDataset latents = load_latents(latents_path);

    for (const std::string& variant : config.variants) {
        const TrainConfig tc = make_train_config(config, variant);
        const fs::path dir = fs::path(config.output_dir) / variant;
        fs::create_directories(dir);

        if (is_quantum(tc.denoiser.variant)) {
            const CircuitSpec spec = quantum_spec(tc.denoiser);
            std::printf("variant %s: %zu trainable parameters, circuit depth %d\n",
                        variant.c_str(), count_params(tc.denoiser), report_depth(spec));
        } else {
            std::printf("variant %s: %zu trainable parameters\n", variant.c_str(),
                        count_params(tc.denoiser));
        }

        TrainState state;
        TrainLog log;
        LatentDataset working = tc.dataset_fraction < 1.0
                                    ? subset_fraction(latents, tc.dataset_fraction, tc.seed)
                                    : latents;
        if (!resume_path.empty()) {
            state = checkpoint_load(resume_path);
            ensure_compatible(state.config, tc);
            std::printf("resuming from %s at epoch %d\n", resume_path.c_str(),
                        state.epochs_done);
        } else {
            state = init_train_state(tc);
        }

        const auto on_epoch = [&](const TrainState& st, const TrainLog& lg) {
            std::printf("  epoch %d/%d  loss %.6f  ema_loss %.6f  (%.1fs)\n", st.epochs_done,
                        tc.epochs, lg.iterations.back().loss, lg.epoch_ema_loss.back(),
                        lg.epoch_seconds.back());
            if (tc.checkpoint_every > 0 && st.epochs_done % tc.checkpoint_every == 0 &&
                st.epochs_done < tc.epochs) {
                const std::string path =
                    (dir / ("ckpt_epoch_" + std::to_string(st.epochs_done) + ".qdm1")).string();
                checkpoint_save(path, st);
                write_sidecar(path, config, "train");
            }
        };
        train_epochs(state, working, log, on_epoch);

        const std::string final_path = (dir / "final.qdm1").string();
        checkpoint_save(final_path, state);
        write_sidecar(final_path, config, "train");

        auto loss_csv = open_csv((dir / "loss.csv").string(), config, "iteration,epoch,loss");
        for (const auto& e : log.iterations)
            loss_csv << e.iteration << "," << e.epoch << "," << fmt_double(e.loss) << "\n";
        auto epoch_csv = open_csv((dir / "epochs.csv").string(), config,
                                  "epoch,ema_loss,seconds");
        for (std::size_t e = 0; e < log.epoch_ema_loss.size(); ++e)
            epoch_csv << (e + 1) << "," << fmt_double(log.epoch_ema_loss[e]) << ","
                      << fmt_double(log.epoch_seconds[e]) << "\n";
        std::printf("variant %s done -> %s\n", variant.c_str(), final_path.c_str());
    }
    return 0;
}

int cmd_sample(const ExperimentConfig& config, const std::string& ckpt_path,
               const std::string& out_path, const std::string& ae_path,
               const std::string& images_dir) {
    const TrainState state = checkpoint_load(ckpt_path);
    const auto latents = sample_with_ema(state, static_cast<std::size_t>(config.sample_count),
                                         config.seed);

    LatentDataset ds;
    ds.count = latents.size();
    ds.dim = static_cast<std::size_t>(state.config.denoiser.dim);
    ds.source_tag = "sampled:" + variant_name(state.config.denoiser.variant);
    ds.values.reserve(ds.count * ds.dim);
    for (const auto& row : latents) ds.values.insert(ds.values.end(), row.begin(), row.end());
    save_latents(out_path, ds);
    write_sidecar(out_path, config, "sample");
    std::printf("sampled %zu latents -> %s\n", ds.count, out_path.c_str());

    if (!images_dir.empty()) {
        if (ae_path.empty())
            throw ConfigError("--images-out requires --autoencoder for decoding");
        const AutoencoderModel model = load_autoencoder(ae_path);
        fs::create_directories(images_dir);
        const std::string hash = config_hash(config);
        for (std::size_t i = 0; i < latents.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "sample_%04zu.pgm", i);
            write_pgm((fs::path(images_dir) / name).string(), decode(model, latents[i]), hash);
        }
        std::printf("decoded %zu samples into %s\n", latents.size(), images_dir.c_str());
    }
    return 0;
}

int cmd_evaluate(const ExperimentConfig& config, const std::string& generated_path,
                 const std::string& reference_path, const std::string& out_path, int epoch,
                 const std::string& variant) {
    const LatentDataset generated = load_latents(generated_path);
    const LatentDataset reference = load_latents(reference_path);
    if (generated.dim != reference.dim)
        throw ContractError("evaluate: latent dimensions differ (" +
                            std::to_string(generated.dim) + " vs " +
                            std::to_string(reference.dim) + ")");

    const double fd = frechet_distance(generated, reference);
    const KidReport kr = kid(generated, reference, config.kid_subset_size, config.kid_subsets,
                             config.seed);

    const bool fresh = !fs::exists(out_path);
    std::ofstream out(out_path, std::ios::app);
    if (!out) throw IoError(out_path + ": cannot open for writing");
    if (fresh)
        out << "# config_hash=" << config_hash(config) << "\n"
            << "epoch,variant,frechet,kid_mean,kid_std\n";
    out << epoch << "," << variant << "," << fmt_double(fd) << "," << fmt_double(kr.mean) << ","
        << fmt_double(kr.std) << "\n";
    std::printf("frechet %.6f  kid %.6f +/- %.6f -> %s\n", fd, kr.mean, kr.std,
                out_path.c_str());
    return 0;
}

int cmd_plot(const ExperimentConfig& config, const std::vector<std::string>& csv_paths,
             const std::string& out_path, const std::string& y_name, bool db) {
    if (csv_paths.empty()) throw ConfigError("plot: no CSV inputs given");
    std::vector<PlotSeries> series;
    for (const auto& path : csv_paths) {
        const Csv csv = read_csv(path);
        if (csv.rows.empty()) throw FormatError(path + ": CSV has no data rows");
        const std::size_t ycol = column_index(csv, y_name);
        PlotSeries s;
        s.label = fs::path(path).parent_path().filename().string();
        if (s.label.empty()) s.label = fs::path(path).stem().string();
        s.x = numeric_column(csv, 0);
        s.y = numeric_column(csv, ycol);
        if (db) {
            PlotSeries filtered;
            filtered.label = s.label;
            for (std::size_t i = 0; i < s.y.size(); ++i) {
                if (s.y[i] > 0.0) {
                    filtered.x.push_back(s.x[i]);
                    filtered.y.push_back(10.0 * std::log10(s.y[i]));
                }
            }
            if (filtered.y.empty())
                throw FormatError(path + ": no positive values for dB transform");
            s = std::move(filtered);
        }
        series.push_back(std::move(s));
    }
    const std::string ylab = db ? y_name + " (dB)" : y_name;
    write_svg_lines(out_path, series, "iteration", ylab, ylab + " per " + "iteration",
                    "config_hash=" + config_hash(config));
    std::printf("wrote %s (%zu series)\n", out_path.c_str(), series.size());
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    apply_thread_cap_from_env();

    CLI::App app{"latent diffusion engine with variational-quantum-circuit denoisers"};
    app.require_subcommand(1);

    std::string config_path;
    ExperimentConfig config;

    // shared override flags; registered per subcommand so help stays local
    struct Overrides {
        CLI::Option* variant = nullptr;
        std::string variant_value;
        CLI::Option *epochs = nullptr, *fraction = nullptr, *seed = nullptr, *qubits = nullptr,
                    *lr = nullptr, *T = nullptr, *out_dir = nullptr, *images = nullptr,
                    *labels = nullptr, *count = nullptr;
        int epochs_value = 0, qubits_value = 0, T_value = 0, count_value = 0;
        double fraction_value = 0.0, lr_value = 0.0;
        std::uint64_t seed_value = 0;
        std::string out_dir_value, images_value, labels_value;
    };

    auto add_common = [&](CLI::App* cmd, Overrides& ov) {
        cmd->add_option("--config", config_path, "JSON experiment config");
        ov.variant = cmd->add_option("--variant", ov.variant_value,
                                     "denoiser variant (classical, BasicQ, 3zQ, 3xQ, 4zQ, 4xQ)");
        ov.epochs = cmd->add_option("--epochs", ov.epochs_value, "training epochs");
        ov.fraction = cmd->add_option("--fraction", ov.fraction_value, "dataset fraction (0,1]");
        ov.seed = cmd->add_option("--seed", ov.seed_value, "base RNG seed");
        ov.qubits = cmd->add_option("--qubits", ov.qubits_value,
                                    "qubit count == latent dimension");
        ov.lr = cmd->add_option("--lr", ov.lr_value, "learning rate");
        ov.T = cmd->add_option("--T", ov.T_value, "diffusion steps");
        ov.out_dir = cmd->add_option("--out-dir", ov.out_dir_value, "output directory");
        ov.images = cmd->add_option("--images", ov.images_value, "IDX image file");
        ov.labels = cmd->add_option("--labels", ov.labels_value, "IDX label file");
        ov.count = cmd->add_option("--count,-n", ov.count_value, "sample count");
    };

    auto apply_overrides = [&](const Overrides& ov) {
        if (ov.variant->count()) config.variants = {ov.variant_value};
        if (ov.epochs->count()) config.epochs = ov.epochs_value;
        if (ov.fraction->count()) config.fraction = ov.fraction_value;
        if (ov.seed->count()) config.seed = ov.seed_value;
        if (ov.qubits->count()) config.latent_dim = ov.qubits_value;
        if (ov.lr->count()) config.lr = ov.lr_value;
        if (ov.T->count()) config.T = ov.T_value;
        if (ov.out_dir->count()) config.output_dir = ov.out_dir_value;
        if (ov.images->count()) config.images_path = ov.images_value;
        if (ov.labels->count()) config.labels_path = ov.labels_value;
        if (ov.count->count()) config.sample_count = ov.count_value;
    };

    Overrides ov_ae, ov_enc, ov_train, ov_sample, ov_eval, ov_plot;

    auto* c_ae = app.add_subcommand("train-autoencoder",
                                    "train the dense autoencoder on an IDX image file");
    add_common(c_ae, ov_ae);

    auto* c_enc = app.add_subcommand("encode", "encode an IDX image file into a QLAT latent file");
    add_common(c_enc, ov_enc);
    std::string enc_ae_path, enc_out;
    c_enc->add_option("--autoencoder", enc_ae_path, "QAE1 checkpoint")->required();
    c_enc->add_option("--out", enc_out, "output QLAT path")->required();

    auto* c_train = app.add_subcommand("train", "train denoiser variants on a QLAT latent file");
    add_common(c_train, ov_train);
    std::string train_latents, train_resume;
    c_train->add_option("--latents", train_latents, "QLAT latent file")->required();
    c_train->add_option("--resume", train_resume, "resume from a QDM1 checkpoint");

    auto* c_sample = app.add_subcommand("sample", "sample latents from a trained checkpoint");
    add_common(c_sample, ov_sample);
    std::string sample_ckpt, sample_out, sample_ae, sample_images_dir;
    c_sample->add_option("--checkpoint", sample_ckpt, "QDM1 checkpoint")->required();
    c_sample->add_option("--out", sample_out, "output QLAT path")->required();
    c_sample->add_option("--autoencoder", sample_ae, "QAE1 checkpoint for decoding");
    c_sample->add_option("--images-out", sample_images_dir, "directory for decoded PGM images");

    auto* c_eval = app.add_subcommand("evaluate",
                                      "latent-space Frechet distance and KID between QLAT files");
    add_common(c_eval, ov_eval);
    std::string eval_gen, eval_ref, eval_out = "metrics.csv", eval_variant = "unknown";
    int eval_epoch = 0, eval_subset_size = 0, eval_subsets = 0;
    c_eval->add_option("--generated", eval_gen, "generated QLAT file")->required();
    c_eval->add_option("--reference", eval_ref, "reference QLAT file")->required();
    c_eval->add_option("--out", eval_out, "metrics CSV (appended)");
    c_eval->add_option("--epoch", eval_epoch, "epoch tag for the CSV row");
    c_eval->add_option("--tag", eval_variant, "variant tag for the CSV row");
    auto* opt_subset_size =
        c_eval->add_option("--kid-subset-size", eval_subset_size, "KID subset size");
    auto* opt_subsets = c_eval->add_option("--kid-subsets", eval_subsets, "number of KID subsets");

    auto* c_plot = app.add_subcommand("plot", "render CSV columns as an SVG line chart");
    add_common(c_plot, ov_plot);
    std::vector<std::string> plot_inputs;
    std::string plot_out = "plot.svg", plot_y = "loss";
    bool plot_db = false;
    c_plot->add_option("csv", plot_inputs, "input CSV files")->required();
    c_plot->add_option("--out", plot_out, "output SVG path");
    c_plot->add_option("--y", plot_y, "column to plot");
    c_plot->add_flag("--db", plot_db, "plot 10*log10(y)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!config_path.empty()) config = load_config(config_path);
        if (c_ae->parsed()) {
            apply_overrides(ov_ae);
            return cmd_train_autoencoder(config);
        }
        if (c_enc->parsed()) {
            apply_overrides(ov_enc);
            return cmd_encode(config, enc_ae_path, enc_out);
        }
        if (c_train->parsed()) {
            apply_overrides(ov_train);
            return cmd_train(config, train_latents, train_resume);
        }
        if (c_sample->parsed()) {
            apply_overrides(ov_sample);
            return cmd_sample(config, sample_ckpt, sample_out, sample_ae, sample_images_dir);
        }
        if (c_eval->parsed()) {
            apply_overrides(ov_eval);
            if (opt_subset_size->count()) config.kid_subset_size = eval_subset_size;
            if (opt_subsets->count()) config.kid_subsets = eval_subsets;
            return cmd_evaluate(config, eval_gen, eval_ref, eval_out, eval_epoch, eval_variant);
        }
        if (c_plot->parsed()) {
            apply_overrides(ov_plot);
            return cmd_plot(config, plot_inputs, plot_out, plot_y, plot_db);
        }
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << "error[config]: " << e.what() << "\n";
    } catch (const FormatError& e) {
        std::cerr << "error[format]: " << e.what() << "\n";
    } catch (const IoError& e) {
        std::cerr << "error[io]: " << e.what() << "\n";
    } catch (const ContractError& e) {
        std::cerr << "error[contract]: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
    }
    return 1;
}

}  // namespace qldm
