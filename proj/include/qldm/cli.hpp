#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qldm {

// Experiment configuration: the JSON document all subcommands share. Flags
// override individual fields; unknown keys are rejected.
struct ExperimentConfig {
    int schema_version = 1;
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    std::string images_path;
    std::string labels_path;
    double fraction = 1.0;

    int ae_hidden = 128;
    int latent_dim = 10;
    int ae_epochs = 10;
    int ae_batch = 64;
    double ae_lr = 1e-3;

    int T = 200;
    double beta_start = 1e-4;
    double beta_end = 0.02;

    std::vector<std::string> variants = {"classical"};
    int epochs = 40;
    int batch_size = 64;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.99;
    int checkpoint_every = 0;

    int sample_count = 16;
    int kid_subset_size = 100;
    int kid_subsets = 100;
};

ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical JSON dump of the effective config.
std::string config_hash(const ExperimentConfig& config);

// Entry point used by the binary and by tests; args excludes argv[0].
int cli_main(const std::vector<std::string>& args);

}  // namespace qldm
