#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "elbp/image.hpp"

namespace elbp {

/// Shape of one point-set: a solid block of 1 (single pixel), 4 (2x2) or
/// 9 (3x3) pixels given as displacements from the set's anchor. The 2x2
/// block anchors at its top-left member, the 3x3 block at its centre.
struct PointSetTopology {
    int tag = 1;  // 1, 4 or 9
    int min_dx = 0, min_dy = 0;
    int max_dx = 0, max_dy = 0;

    static PointSetTopology from_tag(int tag);

    int point_count() const {
        return (max_dx - min_dx + 1) * (max_dy - min_dy + 1);
    }
    std::vector<std::pair<int, int>> offsets() const;

    bool operator==(const PointSetTopology&) const = default;
};

/// Operator configuration: neighbour-set shape, central-set shape and the
/// anchor-to-anchor distance r between them.
struct OperatorParams {
    PointSetTopology neighbor;
    PointSetTopology central;
    int range = 1;

    static OperatorParams make(int neighbor_tag, int central_tag, int range);

    /// "LBP" for the degenerate (1,1,1) operator, otherwise "ELBP_x_y_r".
    std::string name() const;

    bool operator==(const OperatorParams&) const = default;
};

/// The eight neighbour-anchor directions, clockwise from north-west. The
/// first direction supplies the most significant code bit.
inline constexpr std::array<std::pair<int, int>, 8> kNeighborDirections = {{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0},
}};

struct Margins {
    int left = 0, right = 0, top = 0, bottom = 0;
};

/// Border widths inside which no code is produced:
///   left  = r + max(-min_dx, 0), right  = r + max(max_dx, 0)
/// with the offset extrema taken over both topologies; vertically alike.
Margins operator_margins(const OperatorParams& params);

/// Per-pixel codes over the region of the source image where every sample
/// of every point-set is in bounds. origin is the region's offset inside
/// the source.
struct CodeImage {
    int width = 0;
    int height = 0;
    int origin_x = 0;
    int origin_y = 0;
    std::vector<std::uint8_t> codes;

    std::uint8_t at(int x, int y) const {
        return codes[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const CodeImage&) const = default;
};

/// Classic 3x3 LBP code at (x, y): bit = 1 iff neighbour >= centre,
/// neighbours taken clockwise from north-west, first bit most significant.
std::uint8_t lbp_code(const GrayImage& img, int x, int y);

/// E-LBP code at (x, y): bit = 1 iff mean(neighbour set) >= mean(central
/// set), decided exactly as sum_N * |G_C| >= sum_C * |G_N| in integers.
/// Neighbour anchors sit at (x, y) + r * d over kNeighborDirections.
std::uint8_t elbp_code(const GrayImage& img, int x, int y,
                       const OperatorParams& params);

/// Codes for every interior pixel. threads <= 0 selects the hardware
/// concurrency; any thread count yields bit-identical output.
CodeImage code_image(const GrayImage& img, const OperatorParams& params,
                     int threads = 1);

}  // namespace elbp
