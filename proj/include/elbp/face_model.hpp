#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "elbp/descriptor.hpp"

namespace elbp {

/// 256-bin code histogram of one grid cell.
struct CellHistogram {
    std::array<std::uint32_t, 256> counts{};

    std::uint32_t total() const;
    std::array<double, 256> normalized() const;

    bool operator==(const CellHistogram&) const = default;
};

/// Face representation: per-cell code histograms over a regular grid laid
/// on the code image, row-major, plus everything needed to rebuild it.
struct FaceModel {
    OperatorParams params;
    int cell_size = 0;
    int grid_cols = 0;
    int grid_rows = 0;
    int source_width = 0;
    int source_height = 0;
    std::vector<CellHistogram> cells;

    int num_cells() const { return grid_cols * grid_rows; }

    bool operator==(const FaceModel&) const = default;
};

/// Histograms the code image over a cell_size grid anchored at its top-left
/// corner. Trailing partial cells at the right/bottom are kept; cells are
/// ordered row-major.
std::vector<CellHistogram> build_histograms(const CodeImage& codes,
                                            int cell_size);

/// code_image + build_histograms, recording the producing parameters.
FaceModel build_face_model(const GrayImage& img, const OperatorParams& params,
                           int cell_size, int threads = 1);

/// Binary model file: magic "ELBPMODL", version u16 LE, neighbour and
/// central topology tags (u8 each), range u16, cell_size u16, source
/// width/height u16, grid cols/rows u16, then cells x 256 counts as u32 LE.
void save_model(const FaceModel& model, const std::filesystem::path& path);
FaceModel load_model(const std::filesystem::path& path);

}  // namespace elbp
