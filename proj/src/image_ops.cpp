#include "elbp/image.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace elbp {

namespace {

std::uint8_t round_half_up(double v) {
    return static_cast<std::uint8_t>(
        std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

// Bilinear value at (sx, sy); positions outside the raster read as 0.
double sample_zero_fill(const GrayImage& img, double sx, double sy) {
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const double fx = sx - x0;
    const double fy = sy - y0;
    double acc = 0;
    for (int dy = 0; dy <= 1; ++dy) {
        for (int dx = 0; dx <= 1; ++dx) {
            const int x = x0 + dx;
            const int y = y0 + dy;
            if (!img.in_bounds(x, y)) continue;
            const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy);
            acc += w * img.at(x, y);
        }
    }
    return acc;
}

}  // namespace

GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h) {
    if (img.width < 1 || img.height < 1)
        raise(ErrorCode::Argument, "cannot resize an empty image");
    if (out_w < 1 || out_h < 1)
        raise(ErrorCode::Argument, "resize target dimensions must be >= 1");

    GrayImage out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        const double sy = out_h > 1
                              ? static_cast<double>(y) * (img.height - 1) / (out_h - 1)
                              : (img.height - 1) * 0.5;
        const int y0 = std::clamp(static_cast<int>(std::floor(sy)), 0, img.height - 1);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = std::clamp(sy - y0, 0.0, 1.0);
        for (int x = 0; x < out_w; ++x) {
            const double sx = out_w > 1
                                  ? static_cast<double>(x) * (img.width - 1) / (out_w - 1)
                                  : (img.width - 1) * 0.5;
            const int x0 = std::clamp(static_cast<int>(std::floor(sx)), 0, img.width - 1);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double fx = std::clamp(sx - x0, 0.0, 1.0);
            const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
            const double bottom = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
            out.at(x, y) = round_half_up((1.0 - fy) * top + fy * bottom);
        }
    }
    return out;
}

GrayImage crop_by_eyes(const GrayImage& img, Point2 left_eye, Point2 right_eye,
                       int out_w, int out_h, double eye_row_frac,
                       double eye_dist_frac) {
    if (out_w < 1 || out_h < 1)
        raise(ErrorCode::Argument, "crop target dimensions must be >= 1");
    if (!(eye_dist_frac > 0))
        raise(ErrorCode::Argument, "eye_dist_frac must be positive");
    for (const Point2& eye : {left_eye, right_eye}) {
        if (!(eye.x >= 0 && eye.x <= img.width - 1 && eye.y >= 0 &&
              eye.y <= img.height - 1))
            raise(ErrorCode::Argument, "eye coordinates outside the image");
    }

    const std::complex<double> src_left(left_eye.x, left_eye.y);
    const std::complex<double> src_right(right_eye.x, right_eye.y);
    if (std::abs(src_right - src_left) < 1e-9)
        raise(ErrorCode::DegenerateGeometry, "eye positions coincide");

    const double mid_x = (out_w - 1) * 0.5;
    const double eye_y = eye_row_frac * out_h;
    const double half_dist = eye_dist_frac * out_w * 0.5;
    const std::complex<double> dst_left(mid_x - half_dist, eye_y);
    const std::complex<double> dst_right(mid_x + half_dist, eye_y);

    // dst = c * src + t, with c encoding rotation and scale.
    const std::complex<double> c = (dst_right - dst_left) / (src_right - src_left);
    const std::complex<double> t = dst_left - c * src_left;

    GrayImage out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            const std::complex<double> src = (std::complex<double>(x, y) - t) / c;
            out.at(x, y) = round_half_up(sample_zero_fill(img, src.real(), src.imag()));
        }
    }
    return out;
}

}  // namespace elbp
