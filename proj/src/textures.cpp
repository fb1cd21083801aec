#include "elbp/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace elbp {

namespace {

// splitmix64; fully pinned so fixtures are reproducible everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double next_unit() {  // [0, 1), 53-bit
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

GrayImage make_ramp(int w, int h) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = w > 1 ? static_cast<std::uint8_t>(255 * x / (w - 1)) : 0;
    return img;
}

GrayImage make_checker(int w, int h) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = ((x / 8 + y / 8) % 2 == 0) ? 255 : 0;
    return img;
}

GrayImage make_noise(std::uint64_t seed, int w, int h) {
    GrayImage img(w, h);
    SplitMix64 rng(seed);
    for (auto& px : img.data) px = static_cast<std::uint8_t>(rng.next() & 0xFF);
    return img;
}

GrayImage make_blobs(std::uint64_t seed, int w, int h) {
    constexpr int kBlobCount = 8;
    SplitMix64 rng(seed);
    struct Blob {
        double cx, cy, inv_two_sigma_sq, amp;
    };
    Blob blobs[kBlobCount];
    for (Blob& blob : blobs) {
        blob.cx = rng.next_unit() * w;
        blob.cy = rng.next_unit() * h;
        const double sigma = (0.10 + 0.15 * rng.next_unit()) * std::min(w, h);
        blob.inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
        blob.amp = 80.0 + 175.0 * rng.next_unit();
    }

    GrayImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = 0;
            for (const Blob& blob : blobs) {
                const double dx = x - blob.cx;
                const double dy = y - blob.cy;
                v += blob.amp *
                     std::exp(-(dx * dx + dy * dy) * blob.inv_two_sigma_sq);
            }
            img.at(x, y) = static_cast<std::uint8_t>(
                std::clamp(std::floor(v + 0.5), 0.0, 255.0));
        }
    }
    return img;
}

}  // namespace

TextureKind texture_kind_from_name(const std::string& name) {
    if (name == "ramp") return TextureKind::Ramp;
    if (name == "checker") return TextureKind::Checker;
    if (name == "noise") return TextureKind::Noise;
    if (name == "blobs") return TextureKind::Blobs;
    raise(ErrorCode::Argument, "unknown texture kind '" + name +
                                   "' (expected ramp, checker, noise or blobs)");
}

GrayImage gen_texture(std::uint64_t seed, TextureKind kind, int w, int h) {
    if (w < 1 || h < 1)
        raise(ErrorCode::Argument, "texture dimensions must be >= 1");
    switch (kind) {
        case TextureKind::Ramp: return make_ramp(w, h);
        case TextureKind::Checker: return make_checker(w, h);
        case TextureKind::Noise: return make_noise(seed, w, h);
        case TextureKind::Blobs: return make_blobs(seed, w, h);
    }
    raise(ErrorCode::Argument, "unknown texture kind");
}

GrayImage add_uniform_noise(const GrayImage& img, std::uint64_t seed,
                            int amplitude) {
    if (amplitude < 0)
        raise(ErrorCode::Argument, "noise amplitude must be >= 0");
    GrayImage out = img;
    if (amplitude == 0) return out;
    SplitMix64 rng(seed);
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(amplitude) + 1;
    for (auto& px : out.data) {
        const int delta = static_cast<int>(rng.next() % span) - amplitude;
        px = static_cast<std::uint8_t>(std::clamp(px + delta, 0, 255));
    }
    return out;
}

}  // namespace elbp
