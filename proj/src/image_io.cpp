#include "elbp/image.hpp"

#include <png.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace elbp {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorCode::Io, "cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    if (in.bad())
        raise(ErrorCode::Io, "read failure on " + path.string());
    return buf;
}

bool is_pnm_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
}

// One whitespace/comment-delimited header token.
std::string next_pnm_token(const std::string& buf, std::size_t& pos,
                           const std::filesystem::path& path) {
    while (pos < buf.size()) {
        if (buf[pos] == '#') {
            while (pos < buf.size() && buf[pos] != '\n') ++pos;
        } else if (is_pnm_space(buf[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < buf.size() && !is_pnm_space(buf[pos]) && buf[pos] != '#') ++pos;
    if (start == pos)
        raise(ErrorCode::Corrupt, path.string() + ": truncated PGM header");
    return buf.substr(start, pos - start);
}

long parse_pnm_int(const std::string& token, const char* what,
                   const std::filesystem::path& path) {
    long value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        raise(ErrorCode::Corrupt, path.string() + ": bad PGM " +
                                      std::string(what) + " '" + token + "'");
    return value;
}

GrayImage load_pgm(const std::string& buf, const std::filesystem::path& path) {
    std::size_t pos = 2;  // past "P5"
    const long width = parse_pnm_int(next_pnm_token(buf, pos, path), "width", path);
    const long height = parse_pnm_int(next_pnm_token(buf, pos, path), "height", path);
    const long maxval = parse_pnm_int(next_pnm_token(buf, pos, path), "maxval", path);
    if (width < 1 || height < 1)
        raise(ErrorCode::Corrupt, path.string() + ": non-positive PGM dimensions");
    if (maxval < 1)
        raise(ErrorCode::Corrupt, path.string() + ": non-positive PGM maxval");
    if (maxval > 255)
        raise(ErrorCode::UnsupportedDepth,
              path.string() + ": PGM maxval " + std::to_string(maxval) +
                  " exceeds 8-bit range");
    if (pos >= buf.size() || !is_pnm_space(buf[pos]))
        raise(ErrorCode::Corrupt, path.string() + ": missing raster separator");
    ++pos;  // exactly one whitespace byte before the raster

    const std::size_t pixels =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (buf.size() - pos < pixels)
        raise(ErrorCode::Corrupt, path.string() + ": truncated PGM raster");

    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    const auto* raster = reinterpret_cast<const std::uint8_t*>(buf.data() + pos);
    img.data.assign(raster, raster + pixels);
    return img;
}

GrayImage load_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
        std::string msg = png.message;
        png_image_free(&png);
        raise(ErrorCode::Corrupt, path.string() + ": PNG read failed: " + msg);
    }
    if (png.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&png);
        raise(ErrorCode::UnsupportedDepth,
              path.string() + ": 16-bit PNG not supported");
    }
    const bool color =
        (png.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_COLORMAP)) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    const int width = static_cast<int>(png.width);
    const int height = static_cast<int>(png.height);
    const int channels = color ? 3 : 1;
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height *
                                     channels);
    if (!png_image_finish_read(&png, nullptr, pixels.data(), 0, nullptr)) {
        std::string msg = png.message;
        png_image_free(&png);
        raise(ErrorCode::Corrupt, path.string() + ": PNG decode failed: " + msg);
    }

    GrayImage img(width, height);
    if (color) {
        for (std::size_t i = 0; i < img.data.size(); ++i)
            img.data[i] =
                luma(pixels[3 * i], pixels[3 * i + 1], pixels[3 * i + 2]);
    } else {
        img.data = std::move(pixels);
    }
    return img;
}

}  // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h) {
    if (w < 1 || h < 1)
        raise(ErrorCode::Argument, "image dimensions must be positive");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::floor(y + 0.5));
}

GrayImage load_image(const std::filesystem::path& path) {
    static const std::uint8_t kPngSig[8] = {0x89, 'P',  'N',  'G',
                                            0x0d, 0x0a, 0x1a, 0x0a};
    const std::string buf = read_file(path);
    if (buf.size() >= 2 && buf[0] == 'P' && buf[1] == '5')
        return load_pgm(buf, path);
    if (buf.size() >= 8 &&
        std::equal(kPngSig, kPngSig + 8,
                   reinterpret_cast<const std::uint8_t*>(buf.data())))
        return load_png(path);
    raise(ErrorCode::Format,
          path.string() + ": not a binary PGM (P5) or PNG file");
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    if (img.width < 1 || img.height < 1)
        raise(ErrorCode::Argument, "cannot save an empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out)
        raise(ErrorCode::Io, "write failure on " + path.string());
}

}  // namespace elbp
