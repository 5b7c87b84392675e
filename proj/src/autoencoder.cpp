#include "qldm/autoencoder.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "qldm/errors.hpp"
#include "qldm/rng.hpp"

namespace qldm {

namespace {

constexpr std::size_t kImageDim = 784;

DenseLayer xavier_layer(std::size_t out, std::size_t in, std::mt19937_64& g) {
    DenseLayer layer(out, in, Activation::Tanh);
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (auto& w : layer.weights.v) w = (2.0 * uniform01(g) - 1.0) * limit;
    return layer;
}

void check_image(const std::vector<double>& image) {
    if (image.size() != kImageDim)
        throw ContractError("encode: image must have 784 pixels, got " +
                            std::to_string(image.size()));
    for (double v : image)
        if (!(v >= -1.0 && v <= 1.0))
            throw ContractError("encode: pixel values must lie in [-1, 1]");
}

struct FlatParams {
    std::vector<double> values;
};

FlatParams flatten(const AutoencoderModel& model) {
    FlatParams flat;
    flat.values.reserve(model.n_params());
    for (const auto& l : model.layers) {
        flat.values.insert(flat.values.end(), l.weights.v.begin(), l.weights.v.end());
        flat.values.insert(flat.values.end(), l.bias.begin(), l.bias.end());
    }
    return flat;
}

void unflatten(const FlatParams& flat, AutoencoderModel& model) {
    std::size_t off = 0;
    for (auto& l : model.layers) {
        std::copy_n(flat.values.begin() + static_cast<std::ptrdiff_t>(off), l.weights.v.size(),
                    l.weights.v.begin());
        off += l.weights.v.size();
        std::copy_n(flat.values.begin() + static_cast<std::ptrdiff_t>(off), l.bias.size(),
                    l.bias.begin());
        off += l.bias.size();
    }
}

}  // namespace

AutoencoderModel AutoencoderModel::create(int latent_dim, int hidden, std::uint64_t seed) {
    if (latent_dim < 1 || hidden < 1) throw ContractError("autoencoder: dimensions must be >= 1");
    auto g = make_stream(seed, RngStream::ParamInit);
    AutoencoderModel m;
    m.layers.push_back(xavier_layer(static_cast<std::size_t>(hidden), kImageDim, g));
    m.layers.push_back(xavier_layer(static_cast<std::size_t>(latent_dim),
                                    static_cast<std::size_t>(hidden), g));
    m.layers.push_back(xavier_layer(static_cast<std::size_t>(hidden),
                                    static_cast<std::size_t>(latent_dim), g));
    m.layers.push_back(xavier_layer(kImageDim, static_cast<std::size_t>(hidden), g));
    return m;
}

AutoencoderModel AutoencoderModel::create_zero(int latent_dim, int hidden) {
    AutoencoderModel m;
    m.layers.emplace_back(static_cast<std::size_t>(hidden), kImageDim, Activation::Tanh);
    m.layers.emplace_back(static_cast<std::size_t>(latent_dim), static_cast<std::size_t>(hidden),
                          Activation::Tanh);
    m.layers.emplace_back(static_cast<std::size_t>(hidden), static_cast<std::size_t>(latent_dim),
                          Activation::Tanh);
    m.layers.emplace_back(kImageDim, static_cast<std::size_t>(hidden), Activation::Tanh);
    return m;
}

std::size_t AutoencoderModel::n_params() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.n_params();
    return n;
}

std::vector<double> encode(const AutoencoderModel& model, const std::vector<double>& image) {
    check_image(image);
    return dense_forward(model.layers[1], dense_forward(model.layers[0], image));
}

std::vector<double> decode(const AutoencoderModel& model, const std::vector<double>& latent) {
    if (latent.size() != model.layers[2].in_dim())
        throw ContractError("decode: latent dimension mismatch");
    return dense_forward(model.layers[3], dense_forward(model.layers[2], latent));
}

double reconstruction_mse(const AutoencoderModel& model, const ImageDataset& dataset) {
    if (dataset.count == 0) throw ContractError("reconstruction_mse: empty dataset");
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dataset.count); ++i) {
        std::vector<double> img(dataset.image(static_cast<std::size_t>(i)),
                                dataset.image(static_cast<std::size_t>(i)) + kImageDim);
        const auto rec = decode(model, encode(model, img));
        double s = 0.0;
        for (std::size_t j = 0; j < kImageDim; ++j) {
            const double d = rec[j] - img[j];
            s += d * d;
        }
        total += s / static_cast<double>(kImageDim);
    }
    return total / static_cast<double>(dataset.count);
}

namespace {

// Full forward + backward for one image; returns per-pixel MSE and
// accumulates parameter gradients in layer order into `grad`.
double backprop_one(const AutoencoderModel& model, const double* image, std::vector<double>& grad) {
    std::vector<double> x0(image, image + kImageDim);
    const auto h1 = dense_forward(model.layers[0], x0);
    const auto z = dense_forward(model.layers[1], h1);
    const auto h2 = dense_forward(model.layers[2], z);
    const auto y = dense_forward(model.layers[3], h2);

    double mse = 0.0;
    std::vector<double> dy(kImageDim);
    for (std::size_t j = 0; j < kImageDim; ++j) {
        const double d = y[j] - x0[j];
        mse += d * d;
        dy[j] = 2.0 * d / static_cast<double>(kImageDim);
    }
    mse /= static_cast<double>(kImageDim);

    const auto g3 = dense_backward(model.layers[3], h2, dy);
    const auto g2 = dense_backward(model.layers[2], z, g3.input);
    const auto g1 = dense_backward(model.layers[1], h1, g2.input);
    const auto g0 = dense_backward(model.layers[0], x0, g1.input);

    std::size_t off = 0;
    for (const auto* g : {&g0, &g1, &g2, &g3}) {
        for (std::size_t i = 0; i < g->weights.v.size(); ++i) grad[off + i] += g->weights.v[i];
        off += g->weights.v.size();
        for (std::size_t i = 0; i < g->bias.size(); ++i) grad[off + i] += g->bias[i];
        off += g->bias.size();
    }
    return mse;
}

}  // namespace

AutoencoderTrainLog train_autoencoder(AutoencoderModel& model, const ImageDataset& dataset,
                                      int epochs, int batch_size, double lr, std::uint64_t seed) {
    if (dataset.count == 0) throw ContractError("train_autoencoder: empty dataset");
    if (epochs < 1 || batch_size < 1) throw ContractError("train_autoencoder: bad hyperparameters");

    FlatParams flat = flatten(model);
    AdamState adam(flat.values.size(), lr, 0.9, 0.99);
    auto shuffle_rng = make_stream(seed, RngStream::Shuffle);

    std::vector<std::size_t> order(dataset.count);
    std::iota(order.begin(), order.end(), 0);

    AutoencoderTrainLog log;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        shuffle_indices(shuffle_rng, order);
        double epoch_loss = 0.0;
        std::size_t n_batches = 0;

        for (std::size_t start = 0; start < dataset.count; start += static_cast<std::size_t>(batch_size)) {
            const std::size_t end = std::min(dataset.count, start + static_cast<std::size_t>(batch_size));
            const std::size_t bsz = end - start;

            std::vector<std::vector<double>> grads(bsz);
            std::vector<double> losses(bsz, 0.0);
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t k = 0; k < static_cast<std::int64_t>(bsz); ++k) {
                grads[static_cast<std::size_t>(k)].assign(flat.values.size(), 0.0);
                losses[static_cast<std::size_t>(k)] =
                    backprop_one(model, dataset.image(order[start + static_cast<std::size_t>(k)]),
                                 grads[static_cast<std::size_t>(k)]);
            }

            // serial reduction keeps results independent of thread count
            std::vector<double> grad(flat.values.size(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t k = 0; k < bsz; ++k) {
                batch_loss += losses[k];
                for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += grads[k][i] / bsz;
            }
            batch_loss /= static_cast<double>(bsz);

            adam_update(adam, flat.values, grad);
            unflatten(flat, model);
            epoch_loss += batch_loss;
            ++n_batches;
        }
        log.epoch_mse.push_back(epoch_loss / static_cast<double>(n_batches));
    }
    return log;
}

LatentDataset encode_dataset(const AutoencoderModel& model, const ImageDataset& dataset,
                             const std::string& source_tag) {
    LatentDataset out;
    out.count = dataset.count;
    out.dim = static_cast<std::size_t>(model.latent_dim());
    out.labels = dataset.labels;
    out.source_tag = source_tag;
    out.values.resize(out.count * out.dim);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dataset.count); ++i) {
        std::vector<double> img(dataset.image(static_cast<std::size_t>(i)),
                                dataset.image(static_cast<std::size_t>(i)) + kImageDim);
        const auto z = encode(model, img);
        std::copy(z.begin(), z.end(),
                  out.values.begin() + static_cast<std::ptrdiff_t>(out.dim) * i);
    }
    return out;
}

namespace {

void write_le_u32(std::ostream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16),
                               std::uint8_t(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_le_u32(std::istream& in, const std::string& path) {
    std::uint8_t b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw FormatError(path + ": truncated");
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void write_f64(std::ostream& out, const double* data, std::size_t n) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * 8));
}

void read_f64(std::istream& in, double* data, std::size_t n, const std::string& path) {
    if (!in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * 8)))
        throw FormatError(path + ": truncated parameter block");
}

}  // namespace

void save_autoencoder(const std::string& path, const AutoencoderModel& model) {
    if (path.empty()) throw IoError("save_autoencoder: empty path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out.write("QAE1", 4);
    write_le_u32(out, static_cast<std::uint32_t>(model.layers.size()));
    for (const auto& l : model.layers) {
        write_le_u32(out, static_cast<std::uint32_t>(l.out_dim()));
        write_le_u32(out, static_cast<std::uint32_t>(l.in_dim()));
        write_f64(out, l.weights.v.data(), l.weights.v.size());
        write_f64(out, l.bias.data(), l.bias.size());
        const std::uint8_t tag = static_cast<std::uint8_t>(l.activation);
        out.write(reinterpret_cast<const char*>(&tag), 1);
    }
    if (!out) throw IoError(path + ": write failed");
}

AutoencoderModel load_autoencoder(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "QAE1", 4) != 0)
        throw FormatError(path + ": bad magic (expected QAE1)");
    const std::uint32_t n_layers = read_le_u32(in, path);

    AutoencoderModel m;
    for (std::uint32_t i = 0; i < n_layers; ++i) {
        const std::uint32_t rows = read_le_u32(in, path);
        const std::uint32_t cols = read_le_u32(in, path);
        DenseLayer layer(rows, cols, Activation::Identity);
        read_f64(in, layer.weights.v.data(), layer.weights.v.size(), path);
        read_f64(in, layer.bias.data(), layer.bias.size(), path);
        std::uint8_t tag = 0;
        if (!in.read(reinterpret_cast<char*>(&tag), 1))
            throw FormatError(path + ": truncated activation tag");
        if (tag > 1) throw FormatError(path + ": unknown activation tag");
        layer.activation = static_cast<Activation>(tag);
        m.layers.push_back(std::move(layer));
    }
    if (m.layers.size() != 4) throw FormatError(path + ": expected 4 layers");
    return m;
}

}  // namespace qldm
