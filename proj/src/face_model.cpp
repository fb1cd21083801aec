#include "elbp/face_model.hpp"

#include <cstdint>
#include <fstream>
#include <string>

namespace elbp {

namespace {

constexpr char kMagic[8] = {'E', 'L', 'B', 'P', 'M', 'O', 'D', 'L'};
constexpr std::uint16_t kVersion = 1;

void write_u16(std::ostream& out, std::uint16_t v) {
    const char bytes[2] = {static_cast<char>(v & 0xFF),
                           static_cast<char>((v >> 8) & 0xFF)};
    out.write(bytes, 2);
}

void write_u32(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {
        static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
        static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(bytes, 4);
}

class Reader {
public:
    Reader(std::istream& in, std::string path)
        : in_(in), path_(std::move(path)) {}

    void bytes(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            raise(ErrorCode::Corrupt, path_ + ": truncated model file");
    }
    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    std::uint16_t u16() {
        std::uint8_t b[2];
        bytes(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32() {
        std::uint8_t b[4];
        bytes(b, 4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) |
               (static_cast<std::uint32_t>(b[3]) << 24);
    }
    bool at_eof() {
        return in_.peek() == std::char_traits<char>::eof();
    }
    const std::string& path() const { return path_; }

private:
    std::istream& in_;
    std::string path_;
};

std::uint16_t checked_u16(int v, const char* what) {
    if (v < 0 || v > 0xFFFF)
        raise(ErrorCode::Argument, std::string("model file cannot store ") +
                                       what + " " + std::to_string(v));
    return static_cast<std::uint16_t>(v);
}

}  // namespace

std::uint32_t CellHistogram::total() const {
    std::uint32_t sum = 0;
    for (std::uint32_t c : counts) sum += c;
    return sum;
}

std::array<double, 256> CellHistogram::normalized() const {
    const std::uint32_t sum = total();
    if (sum == 0)
        raise(ErrorCode::Argument, "cannot normalize an empty histogram");
    std::array<double, 256> result;
    for (std::size_t i = 0; i < counts.size(); ++i)
        result[i] = static_cast<double>(counts[i]) / sum;
    return result;
}

std::vector<CellHistogram> build_histograms(const CodeImage& codes,
                                            int cell_size) {
    if (cell_size < 1)
        raise(ErrorCode::Argument, "cell size must be >= 1");
    if (codes.width < 1 || codes.height < 1)
        raise(ErrorCode::Argument, "cannot histogram an empty code image");

    const int cols = (codes.width + cell_size - 1) / cell_size;
    const int rows = (codes.height + cell_size - 1) / cell_size;
    std::vector<CellHistogram> cells(static_cast<std::size_t>(cols) * rows);
    for (int y = 0; y < codes.height; ++y) {
        const int cell_row = y / cell_size;
        for (int x = 0; x < codes.width; ++x) {
            const std::size_t cell =
                static_cast<std::size_t>(cell_row) * cols + x / cell_size;
            ++cells[cell].counts[codes.at(x, y)];
        }
    }
    return cells;
}

FaceModel build_face_model(const GrayImage& img, const OperatorParams& params,
                           int cell_size, int threads) {
    const CodeImage codes = code_image(img, params, threads);
    FaceModel model;
    model.params = params;
    model.cell_size = cell_size;
    model.grid_cols = (codes.width + cell_size - 1) / cell_size;
    model.grid_rows = (codes.height + cell_size - 1) / cell_size;
    model.source_width = img.width;
    model.source_height = img.height;
    model.cells = build_histograms(codes, cell_size);
    return model;
}

void save_model(const FaceModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorCode::Io, "cannot open " + path.string() + " for writing");

    out.write(kMagic, sizeof(kMagic));
    write_u16(out, kVersion);
    out.put(static_cast<char>(model.params.neighbor.tag));
    out.put(static_cast<char>(model.params.central.tag));
    write_u16(out, checked_u16(model.params.range, "range"));
    write_u16(out, checked_u16(model.cell_size, "cell size"));
    write_u16(out, checked_u16(model.source_width, "source width"));
    write_u16(out, checked_u16(model.source_height, "source height"));
    write_u16(out, checked_u16(model.grid_cols, "grid columns"));
    write_u16(out, checked_u16(model.grid_rows, "grid rows"));
    for (const CellHistogram& cell : model.cells)
        for (std::uint32_t count : cell.counts) write_u32(out, count);
    if (!out)
        raise(ErrorCode::Io, "write failure on " + path.string());
}

FaceModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorCode::Io, "cannot open " + path.string());
    Reader reader(in, path.string());

    char magic[8];
    reader.bytes(magic, sizeof(magic));
    if (!std::equal(magic, magic + 8, kMagic))
        raise(ErrorCode::Format, reader.path() + ": not a model file");
    const std::uint16_t version = reader.u16();
    if (version != kVersion)
        raise(ErrorCode::VersionMismatch,
              reader.path() + ": model format version " +
                  std::to_string(version) + ", expected " +
                  std::to_string(kVersion));

    const int neighbor_tag = reader.u8();
    const int central_tag = reader.u8();
    const int range = reader.u16();
    const int cell_size = reader.u16();
    const int source_w = reader.u16();
    const int source_h = reader.u16();
    const int grid_cols = reader.u16();
    const int grid_rows = reader.u16();

    FaceModel model;
    try {
        model.params = OperatorParams::make(neighbor_tag, central_tag, range);
    } catch (const Error& e) {
        raise(ErrorCode::Corrupt, reader.path() + ": " + e.what());
    }
    if (cell_size < 1)
        raise(ErrorCode::Corrupt, reader.path() + ": zero cell size");
    model.cell_size = cell_size;
    model.source_width = source_w;
    model.source_height = source_h;
    model.grid_cols = grid_cols;
    model.grid_rows = grid_rows;

    // The grid must match what the recorded parameters produce.
    const Margins m = operator_margins(model.params);
    const int code_w = source_w - m.left - m.right;
    const int code_h = source_h - m.top - m.bottom;
    if (code_w < 1 || code_h < 1)
        raise(ErrorCode::Corrupt,
              reader.path() + ": source dimensions too small for the operator");
    if (grid_cols != (code_w + cell_size - 1) / cell_size ||
        grid_rows != (code_h + cell_size - 1) / cell_size)
        raise(ErrorCode::Corrupt,
              reader.path() + ": grid does not match the recorded parameters");

    model.cells.resize(static_cast<std::size_t>(grid_cols) * grid_rows);
    for (CellHistogram& cell : model.cells) {
        for (std::uint32_t& count : cell.counts) count = reader.u32();
        if (cell.total() == 0)
            raise(ErrorCode::Corrupt, reader.path() + ": empty cell histogram");
    }
    if (!reader.at_eof())
        raise(ErrorCode::Corrupt, reader.path() + ": trailing data");
    return model;
}

}  // namespace elbp
