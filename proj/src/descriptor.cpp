#include "elbp/descriptor.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "parallel.hpp"

namespace elbp {

namespace {

void check_point_in_bounds(const GrayImage& img, int x, int y,
                           const char* what) {
    if (!img.in_bounds(x, y))
        raise(ErrorCode::Bounds, std::string(what) + " sample (" +
                                     std::to_string(x) + ", " +
                                     std::to_string(y) + ") outside " +
                                     std::to_string(img.width) + "x" +
                                     std::to_string(img.height) + " image");
}

// Sum of intensities of the topology's block anchored at (ax, ay).
std::uint32_t block_sum(const GrayImage& img, int ax, int ay,
                        const PointSetTopology& topo, const char* what) {
    check_point_in_bounds(img, ax + topo.min_dx, ay + topo.min_dy, what);
    check_point_in_bounds(img, ax + topo.max_dx, ay + topo.max_dy, what);
    std::uint32_t sum = 0;
    for (int dy = topo.min_dy; dy <= topo.max_dy; ++dy)
        for (int dx = topo.min_dx; dx <= topo.max_dx; ++dx)
            sum += img.at(ax + dx, ay + dy);
    return sum;
}

// Summed-area table with a zero top row and left column; sums become four
// lookups and stay in exact integer arithmetic.
class IntegralImage {
public:
    explicit IntegralImage(const GrayImage& img)
        : stride_(img.width + 1),
          table_(static_cast<std::size_t>(img.width + 1) * (img.height + 1), 0) {
        for (int y = 0; y < img.height; ++y) {
            std::uint64_t row = 0;
            const std::uint64_t* above = &table_[static_cast<std::size_t>(y) * stride_];
            std::uint64_t* current = &table_[static_cast<std::size_t>(y + 1) * stride_];
            for (int x = 0; x < img.width; ++x) {
                row += img.at(x, y);
                current[x + 1] = above[x + 1] + row;
            }
        }
    }

    // Sum over the inclusive pixel rectangle [x0, x1] x [y0, y1].
    std::uint64_t rect_sum(int x0, int y0, int x1, int y1) const {
        const std::uint64_t* top = &table_[static_cast<std::size_t>(y0) * stride_];
        const std::uint64_t* bottom = &table_[static_cast<std::size_t>(y1 + 1) * stride_];
        return bottom[x1 + 1] - bottom[x0] - top[x1 + 1] + top[x0];
    }

private:
    int stride_;
    std::vector<std::uint64_t> table_;
};

}  // namespace

PointSetTopology PointSetTopology::from_tag(int tag) {
    switch (tag) {
        case 1: return {1, 0, 0, 0, 0};
        case 4: return {4, 0, 0, 1, 1};
        case 9: return {9, -1, -1, 1, 1};
    }
    raise(ErrorCode::Argument, "point-set topology must be 1, 4 or 9 (got " +
                                   std::to_string(tag) + ")");
}

std::vector<std::pair<int, int>> PointSetTopology::offsets() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(point_count());
    for (int dy = min_dy; dy <= max_dy; ++dy)
        for (int dx = min_dx; dx <= max_dx; ++dx) result.emplace_back(dx, dy);
    return result;
}

OperatorParams OperatorParams::make(int neighbor_tag, int central_tag,
                                    int range) {
    if (range < 1)
        raise(ErrorCode::Argument,
              "operator range must be >= 1 (got " + std::to_string(range) + ")");
    return {PointSetTopology::from_tag(neighbor_tag),
            PointSetTopology::from_tag(central_tag), range};
}

std::string OperatorParams::name() const {
    if (neighbor.tag == 1 && central.tag == 1 && range == 1) return "LBP";
    return "ELBP_" + std::to_string(neighbor.tag) + "_" +
           std::to_string(central.tag) + "_" + std::to_string(range);
}

Margins operator_margins(const OperatorParams& params) {
    const int min_dx = std::min(params.neighbor.min_dx, params.central.min_dx);
    const int max_dx = std::max(params.neighbor.max_dx, params.central.max_dx);
    const int min_dy = std::min(params.neighbor.min_dy, params.central.min_dy);
    const int max_dy = std::max(params.neighbor.max_dy, params.central.max_dy);
    const int r = params.range;
    return {r + std::max(-min_dx, 0), r + std::max(max_dx, 0),
            r + std::max(-min_dy, 0), r + std::max(max_dy, 0)};
}

std::uint8_t lbp_code(const GrayImage& img, int x, int y) {
    if (x < 1 || x > img.width - 2 || y < 1 || y > img.height - 2)
        raise(ErrorCode::Bounds,
              "LBP needs the full 3x3 neighbourhood inside the image");
    const std::uint8_t center = img.at(x, y);
    std::uint8_t code = 0;
    for (const auto& [dx, dy] : kNeighborDirections)
        code = static_cast<std::uint8_t>((code << 1) |
                                         (img.at(x + dx, y + dy) >= center));
    return code;
}

std::uint8_t elbp_code(const GrayImage& img, int x, int y,
                       const OperatorParams& params) {
    const std::uint64_t central_sum =
        block_sum(img, x, y, params.central, "central set");
    const std::uint64_t central_count = params.central.point_count();
    const std::uint64_t neighbor_count = params.neighbor.point_count();
    const std::uint64_t rhs = central_sum * neighbor_count;

    std::uint8_t code = 0;
    for (const auto& [dx, dy] : kNeighborDirections) {
        const std::uint64_t neighbor_sum =
            block_sum(img, x + params.range * dx, y + params.range * dy,
                      params.neighbor, "neighbour set");
        code = static_cast<std::uint8_t>((code << 1) |
                                         (neighbor_sum * central_count >= rhs));
    }
    return code;
}

CodeImage code_image(const GrayImage& img, const OperatorParams& params,
                     int threads) {
    const Margins m = operator_margins(params);
    if (img.width <= 2 * std::max(m.left, m.right) ||
        img.height <= 2 * std::max(m.top, m.bottom))
        raise(ErrorCode::ImageTooSmall,
              std::to_string(img.width) + "x" + std::to_string(img.height) +
                  " image too small for operator margins (" +
                  std::to_string(m.left) + ", " + std::to_string(m.right) +
                  ", " + std::to_string(m.top) + ", " + std::to_string(m.bottom) +
                  ")");

    CodeImage out;
    out.width = img.width - m.left - m.right;
    out.height = img.height - m.top - m.bottom;
    out.origin_x = m.left;
    out.origin_y = m.top;
    out.codes.resize(static_cast<std::size_t>(out.width) * out.height);

    const IntegralImage integral(img);
    const PointSetTopology& nb = params.neighbor;
    const PointSetTopology& ct = params.central;
    const std::uint64_t central_count = ct.point_count();
    const std::uint64_t neighbor_count = nb.point_count();
    const int r = params.range;

    detail::parallel_for(out.height, threads, [&](int row) {
        const int y = out.origin_y + row;
        std::uint8_t* dst = &out.codes[static_cast<std::size_t>(row) * out.width];
        for (int col = 0; col < out.width; ++col) {
            const int x = out.origin_x + col;
            const std::uint64_t rhs =
                integral.rect_sum(x + ct.min_dx, y + ct.min_dy, x + ct.max_dx,
                                  y + ct.max_dy) *
                neighbor_count;
            std::uint8_t code = 0;
            for (const auto& [dx, dy] : kNeighborDirections) {
                const int ax = x + r * dx;
                const int ay = y + r * dy;
                const std::uint64_t neighbor_sum =
                    integral.rect_sum(ax + nb.min_dx, ay + nb.min_dy,
                                      ax + nb.max_dx, ay + nb.max_dy);
                code = static_cast<std::uint8_t>(
                    (code << 1) | (neighbor_sum * central_count >= rhs));
            }
            dst[col] = code;
        }
    });
    return out;
}

}  // namespace elbp
