// Geometric normalization helper: aligns faces by their eye coordinates and
// writes fixed-size crops, either for a single image or for a TSV batch with
// lines "src<TAB>dst<TAB>lx<TAB>ly<TAB>rx<TAB>ry".

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "elbp/image.hpp"

namespace {

double parse_double(const std::string& token, const std::string& where) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        elbp::raise(elbp::ErrorCode::Parse,
                    where + ": bad number '" + token + "'");
    }
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return fields;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eye-coordinate face cropper"};

    std::string in_path, out_path, list_path;
    std::vector<double> left_eye, right_eye;
    int width = 130, height = 150;
    double eye_row = 0.35, eye_dist = 0.5;

    app.add_option("--in", in_path, "Input image");
    app.add_option("--out", out_path, "Output PGM path");
    app.add_option("--left", left_eye, "Left eye x,y (image-left eye)")
        ->delimiter(',')
        ->expected(2);
    app.add_option("--right", right_eye, "Right eye x,y")
        ->delimiter(',')
        ->expected(2);
    app.add_option("--list", list_path,
                   "Batch TSV: src, dst, lx, ly, rx, ry per line");
    app.add_option("--width", width, "Output width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--height", height, "Output height")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--eye-row", eye_row, "Eye line as a fraction of height")
        ->capture_default_str();
    app.add_option("--eye-dist", eye_dist, "Eye distance as a fraction of width")
        ->capture_default_str();

    try {
        app.parse(argc, argv);

        if (!list_path.empty()) {
            std::ifstream in(list_path);
            if (!in)
                elbp::raise(elbp::ErrorCode::Io, "cannot open " + list_path);
            std::string line;
            int line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                const std::string where =
                    list_path + ":" + std::to_string(line_no);
                const std::vector<std::string> fields = split_tabs(line);
                if (fields.size() != 6)
                    elbp::raise(elbp::ErrorCode::Parse,
                                where + ": expected 6 tab-separated fields");
                const elbp::GrayImage src = elbp::load_image(fields[0]);
                const elbp::GrayImage cropped = elbp::crop_by_eyes(
                    src, {parse_double(fields[2], where), parse_double(fields[3], where)},
                    {parse_double(fields[4], where), parse_double(fields[5], where)},
                    width, height, eye_row, eye_dist);
                elbp::save_pgm(cropped, fields[1]);
            }
        } else {
            if (in_path.empty() || out_path.empty() || left_eye.size() != 2 ||
                right_eye.size() != 2) {
                std::cerr << "usage error: either --list, or all of --in, "
                             "--out, --left and --right are required\n";
                return 1;
            }
            const elbp::GrayImage src = elbp::load_image(in_path);
            const elbp::GrayImage cropped = elbp::crop_by_eyes(
                src, {left_eye[0], left_eye[1]}, {right_eye[0], right_eye[1]},
                width, height, eye_row, eye_dist);
            elbp::save_pgm(cropped, out_path);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const elbp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
