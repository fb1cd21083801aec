#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "elbp/error.hpp"

namespace elbp {

/// Single-channel 8-bit raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    bool operator==(const GrayImage&) const = default;
};

struct Point2 {
    double x = 0;
    double y = 0;
};

/// 0.299 R + 0.587 G + 0.114 B, rounded half up.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Decodes a PGM (P5, maxval <= 255) or PNG (8-bit) file. Color inputs are
/// converted through luma(); gray inputs are taken verbatim.
GrayImage load_image(const std::filesystem::path& path);

/// Writes a binary P5 file with maxval 255.
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// Bilinear resampling. Sample positions follow the align-corners rule
/// src = dst * (srcDim - 1) / (dstDim - 1); a 1-wide target samples the
/// source centre. Border samples clamp to the edge.
GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h);

/// Similarity-transforms the image so that the eyes land on a horizontal
/// line at row eye_row_frac * out_h, separated by eye_dist_frac * out_w and
/// centred about the raster midline. Samples falling outside the source
/// contribute 0.
GrayImage crop_by_eyes(const GrayImage& img, Point2 left_eye, Point2 right_eye,
                       int out_w, int out_h, double eye_row_frac = 0.35,
                       double eye_dist_frac = 0.5);

enum class TextureKind { Ramp, Checker, Noise, Blobs };

TextureKind texture_kind_from_name(const std::string& name);

/// Deterministic synthetic rasters, pure in (seed, kind, w, h):
///   ramp:    I(x,y) = floor(255 * x / (w - 1)), 0 when w == 1
///   checker: 8-px squares, 255 where (x/8 + y/8) is even
///   noise:   low byte of a splitmix64 stream, row-major
///   blobs:   8 seeded Gaussian bumps, summed, rounded half up, clamped
GrayImage gen_texture(std::uint64_t seed, TextureKind kind, int w, int h);

/// Adds a seeded uniform integer perturbation in [-amplitude, +amplitude]
/// to every pixel, clamped to [0, 255].
GrayImage add_uniform_noise(const GrayImage& img, std::uint64_t seed,
                            int amplitude);

}  // namespace elbp
