#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qldm {

// N images of 784 pixels scaled to [-1, 1], row-major per image.
struct ImageDataset {
    std::size_t count = 0;
    std::size_t pixels_per_image = 784;
    std::vector<double> pixels;        // count * pixels_per_image
    std::vector<std::uint8_t> labels;  // empty or count entries

    const double* image(std::size_t i) const { return pixels.data() + i * pixels_per_image; }
};

// N latent rows of dimension d.
struct LatentDataset {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<double> values;        // count * dim
    std::vector<std::uint8_t> labels;  // empty or count entries
    std::string source_tag;

    const double* row(std::size_t i) const { return values.data() + i * dim; }
    std::vector<double> row_vec(std::size_t i) const {
        return std::vector<double>(row(i), row(i) + dim);
    }
};

// IDX image file (big-endian, magic 0x00000803). Raw bytes, row-major.
// When require_28x28 is set, any other geometry is rejected.
struct RawImages {
    std::size_t count = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> bytes;
};

RawImages load_idx_images(const std::string& path, bool require_28x28 = true);

// IDX label file (magic 0x00000801).
std::vector<std::uint8_t> load_idx_labels(const std::string& path);

// v -> v / 127.5 - 1, mapping 0 to -1 and 255 to +1 exactly.
std::vector<double> scale_pixels(const std::vector<std::uint8_t>& raw);

ImageDataset make_image_dataset(const RawImages& raw, std::vector<std::uint8_t> labels = {});

// ceil(fraction * N) rows sampled uniformly without replacement; deterministic
// per seed, row order follows the original dataset.
ImageDataset subset_fraction(const ImageDataset& dataset, double fraction, std::uint64_t seed);
LatentDataset subset_fraction(const LatentDataset& dataset, double fraction, std::uint64_t seed);

// QLAT file: magic "QLAT", u32 version=1, u32 N, u32 d, u8 has_labels,
// N*d little-endian f32 values, then N label bytes if present.
void save_latents(const std::string& path, const LatentDataset& dataset);
LatentDataset load_latents(const std::string& path);

}  // namespace qldm
