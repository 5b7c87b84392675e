#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qldm/data.hpp"
#include "qldm/nn.hpp"

namespace qldm {

// Dense 784 -> 128 -> d encoder and mirrored decoder, Tanh throughout. The
// final Tanh bounds every latent inside (-1, 1), which the angle encoding
// downstream relies on.
struct AutoencoderModel {
    std::vector<DenseLayer> layers;  // enc1, enc2, dec1, dec2

    static AutoencoderModel create(int latent_dim, int hidden, std::uint64_t seed);
    static AutoencoderModel create_zero(int latent_dim, int hidden);

    int latent_dim() const { return static_cast<int>(layers[1].out_dim()); }
    std::size_t n_params() const;
};

std::vector<double> encode(const AutoencoderModel& model, const std::vector<double>& image);
std::vector<double> decode(const AutoencoderModel& model, const std::vector<double>& latent);

// Mean squared reconstruction error over the whole dataset.
double reconstruction_mse(const AutoencoderModel& model, const ImageDataset& dataset);

struct AutoencoderTrainLog {
    std::vector<double> epoch_mse;
};

AutoencoderTrainLog train_autoencoder(AutoencoderModel& model, const ImageDataset& dataset,
                                      int epochs, int batch_size, double lr, std::uint64_t seed);

LatentDataset encode_dataset(const AutoencoderModel& model, const ImageDataset& dataset,
                             const std::string& source_tag);

// QAE1 checkpoint: magic "QAE1", LE u32 layer count, then per layer
// u32 rows, u32 cols, row-major f64 weights, f64 biases, u8 activation tag.
void save_autoencoder(const std::string& path, const AutoencoderModel& model);
AutoencoderModel load_autoencoder(const std::string& path);

}  // namespace qldm
