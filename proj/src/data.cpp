#include "qldm/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "qldm/errors.hpp"
#include "qldm/rng.hpp"

namespace qldm {

namespace {

std::uint32_t read_be_u32(std::istream& in, const std::string& path, const char* field) {
    std::uint8_t b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw FormatError(path + ": truncated while reading " + field);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
           std::uint32_t(b[3]);
}

std::uint32_t read_le_u32(std::istream& in, const std::string& path, const char* field) {
    std::uint8_t b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw FormatError(path + ": truncated while reading " + field);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void write_le_u32(std::ostream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16),
                               std::uint8_t(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::ifstream open_input(const std::string& path) {
    if (path.empty()) throw IoError("empty path");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    return in;
}

// little-endian f32 on all supported targets; asserts the assumption once
static_assert(sizeof(float) == 4);

}  // namespace

RawImages load_idx_images(const std::string& path, bool require_28x28) {
    auto in = open_input(path);
    const std::uint32_t magic = read_be_u32(in, path, "magic");
    if (magic != 0x00000803u)
        throw FormatError(path + ": bad image magic at offset 0 (expected 0x00000803)");

    RawImages raw;
    raw.count = read_be_u32(in, path, "count");
    raw.rows = read_be_u32(in, path, "rows");
    raw.cols = read_be_u32(in, path, "cols");
    if (require_28x28 && (raw.rows != 28 || raw.cols != 28))
        throw FormatError(path + ": expected 28x28 images, got " + std::to_string(raw.rows) + "x" +
                          std::to_string(raw.cols));

    const std::size_t payload = raw.count * raw.rows * raw.cols;
    raw.bytes.resize(payload);
    if (!in.read(reinterpret_cast<char*>(raw.bytes.data()),
                 static_cast<std::streamsize>(payload)))
        throw FormatError(path + ": truncated pixel payload (count field says " +
                          std::to_string(raw.count) + " images)");
    return raw;
}

std::vector<std::uint8_t> load_idx_labels(const std::string& path) {
    auto in = open_input(path);
    const std::uint32_t magic = read_be_u32(in, path, "magic");
    if (magic != 0x00000801u)
        throw FormatError(path + ": bad label magic at offset 0 (expected 0x00000801)");
    const std::uint32_t count = read_be_u32(in, path, "count");
    std::vector<std::uint8_t> labels(count);
    if (!in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(count)))
        throw FormatError(path + ": truncated label payload");
    return labels;
}

std::vector<double> scale_pixels(const std::vector<std::uint8_t>& raw) {
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / 127.5 - 1.0;
    return out;
}

ImageDataset make_image_dataset(const RawImages& raw, std::vector<std::uint8_t> labels) {
    if (!labels.empty() && labels.size() != raw.count)
        throw ContractError("make_image_dataset: label count mismatch");
    ImageDataset ds;
    ds.count = raw.count;
    ds.pixels_per_image = raw.rows * raw.cols;
    ds.pixels = scale_pixels(raw.bytes);
    ds.labels = std::move(labels);
    return ds;
}

namespace {

std::vector<std::size_t> pick_subset(std::size_t n, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ContractError("subset_fraction: fraction must be in (0, 1]");
    const std::size_t m = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto g = make_stream(seed, RngStream::Shuffle);
    shuffle_indices(g, idx);
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

ImageDataset subset_fraction(const ImageDataset& dataset, double fraction, std::uint64_t seed) {
    const auto idx = pick_subset(dataset.count, fraction, seed);
    ImageDataset out;
    out.count = idx.size();
    out.pixels_per_image = dataset.pixels_per_image;
    out.pixels.reserve(out.count * out.pixels_per_image);
    for (auto i : idx)
        out.pixels.insert(out.pixels.end(), dataset.image(i),
                          dataset.image(i) + dataset.pixels_per_image);
    if (!dataset.labels.empty()) {
        out.labels.reserve(out.count);
        for (auto i : idx) out.labels.push_back(dataset.labels[i]);
    }
    return out;
}

LatentDataset subset_fraction(const LatentDataset& dataset, double fraction, std::uint64_t seed) {
    const auto idx = pick_subset(dataset.count, fraction, seed);
    LatentDataset out;
    out.count = idx.size();
    out.dim = dataset.dim;
    out.source_tag = dataset.source_tag;
    out.values.reserve(out.count * out.dim);
    for (auto i : idx)
        out.values.insert(out.values.end(), dataset.row(i), dataset.row(i) + dataset.dim);
    if (!dataset.labels.empty()) {
        out.labels.reserve(out.count);
        for (auto i : idx) out.labels.push_back(dataset.labels[i]);
    }
    return out;
}

void save_latents(const std::string& path, const LatentDataset& dataset) {
    if (path.empty()) throw IoError("save_latents: empty path");
    if (!dataset.labels.empty() && dataset.labels.size() != dataset.count)
        throw ContractError("save_latents: label count mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");

    out.write("QLAT", 4);
    write_le_u32(out, 1);
    write_le_u32(out, static_cast<std::uint32_t>(dataset.count));
    write_le_u32(out, static_cast<std::uint32_t>(dataset.dim));
    const std::uint8_t has_labels = dataset.labels.empty() ? 0 : 1;
    out.write(reinterpret_cast<const char*>(&has_labels), 1);

    std::vector<float> f32(dataset.values.size());
    for (std::size_t i = 0; i < f32.size(); ++i) f32[i] = static_cast<float>(dataset.values[i]);
    out.write(reinterpret_cast<const char*>(f32.data()),
              static_cast<std::streamsize>(f32.size() * sizeof(float)));
    if (has_labels)
        out.write(reinterpret_cast<const char*>(dataset.labels.data()),
                  static_cast<std::streamsize>(dataset.labels.size()));
    if (!out) throw IoError(path + ": write failed");
}

LatentDataset load_latents(const std::string& path) {
    auto in = open_input(path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "QLAT", 4) != 0)
        throw FormatError(path + ": bad magic (expected QLAT)");
    const std::uint32_t version = read_le_u32(in, path, "version");
    if (version != 1)
        throw FormatError(path + ": unsupported QLAT version " + std::to_string(version));

    LatentDataset ds;
    ds.count = read_le_u32(in, path, "count");
    ds.dim = read_le_u32(in, path, "dim");
    std::uint8_t has_labels = 0;
    if (!in.read(reinterpret_cast<char*>(&has_labels), 1))
        throw FormatError(path + ": truncated header");

    std::vector<float> f32(ds.count * ds.dim);
    if (!f32.empty() && !in.read(reinterpret_cast<char*>(f32.data()),
                                 static_cast<std::streamsize>(f32.size() * sizeof(float))))
        throw FormatError(path + ": truncated latent payload");
    ds.values.assign(f32.begin(), f32.end());

    if (has_labels) {
        ds.labels.resize(ds.count);
        if (!ds.labels.empty() &&
            !in.read(reinterpret_cast<char*>(ds.labels.data()),
                     static_cast<std::streamsize>(ds.labels.size())))
            throw FormatError(path + ": truncated label payload");
    }
    return ds;
}

}  // namespace qldm
