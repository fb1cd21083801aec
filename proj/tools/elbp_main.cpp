// Command-line front end: code-map dumps, model building, identification,
// dataset evaluation, parameter sweeps and synthetic fixture generation.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "elbp/evaluation.hpp"

namespace fs = std::filesystem;

namespace {

struct OperatorFlags {
    int x = 4;
    int y = 9;
    int r = 5;
};

void add_operator_flags(CLI::App* cmd, OperatorFlags& flags) {
    cmd->add_option("--x", flags.x, "Neighbour point-set topology")
        ->check(CLI::IsMember({1, 4, 9}))
        ->capture_default_str();
    cmd->add_option("--y", flags.y, "Central point-set topology")
        ->check(CLI::IsMember({1, 4, 9}))
        ->capture_default_str();
    cmd->add_option("--r", flags.r, "Operator range (anchor distance)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

elbp::OperatorParams make_params(const OperatorFlags& flags) {
    return elbp::OperatorParams::make(flags.x, flags.y, flags.r);
}

// Writes through `write` to the given file, or to stdout for "-".
void write_output(const std::string& out_path,
                  const std::function<void(std::ostream&)>& write) {
    if (out_path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        elbp::raise(elbp::ErrorCode::Io,
                    "cannot open " + out_path + " for writing");
    write(out);
    if (!out)
        elbp::raise(elbp::ErrorCode::Io, "write failure on " + out_path);
}

elbp::Gallery load_gallery(const std::string& manifest_path,
                           const elbp::OperatorParams& params, int cell_size,
                           int threads) {
    const elbp::Manifest manifest = elbp::load_manifest(manifest_path);
    elbp::Gallery gallery;
    for (const elbp::ManifestEntry& entry : manifest.entries) {
        if (entry.split != elbp::Split::Gallery) continue;
        const std::string file = manifest.resolve(entry).string();
        try {
            gallery.enroll(entry.subject,
                           elbp::build_face_model(elbp::load_image(file),
                                                  params, cell_size, threads));
        } catch (const elbp::Error& e) {
            elbp::raise(e.code(), file + ": " + e.what());
        }
    }
    if (gallery.empty())
        elbp::raise(elbp::ErrorCode::Validation,
                    manifest_path + " contains no gallery entries");
    return gallery;
}

std::string padded_subject(int index, int count) {
    std::string digits = std::to_string(index);
    std::size_t width = std::to_string(count - 1).size();
    if (width < 2) width = 2;
    while (digits.size() < width) digits.insert(digits.begin(), '0');
    return "s" + digits;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"E-LBP face descriptor toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "Worker thread cap (0 = hardware concurrency)")
        ->capture_default_str();

    // codes
    auto* codes_cmd =
        app.add_subcommand("codes", "Compute a code map and save it as PGM");
    std::string codes_in, codes_out;
    OperatorFlags codes_op;
    codes_cmd->add_option("--in", codes_in, "Input image (PGM or PNG)")
        ->required();
    codes_cmd->add_option("--out", codes_out, "Output PGM path")->required();
    add_operator_flags(codes_cmd, codes_op);
    codes_cmd->callback([&] {
        const elbp::CodeImage codes = elbp::code_image(
            elbp::load_image(codes_in), make_params(codes_op), threads);
        elbp::GrayImage img(codes.width, codes.height);
        img.data = codes.codes;
        elbp::save_pgm(img, codes_out);
    });

    // build-model
    auto* build_cmd =
        app.add_subcommand("build-model", "Build a face model file");
    std::string build_in, build_out;
    OperatorFlags build_op;
    int build_cell = 10;
    build_cmd->add_option("--in", build_in, "Input image")->required();
    build_cmd->add_option("--out", build_out, "Output model path")->required();
    add_operator_flags(build_cmd, build_op);
    build_cmd->add_option("--cell", build_cell, "Cell size in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    build_cmd->callback([&] {
        elbp::save_model(
            elbp::build_face_model(elbp::load_image(build_in),
                                   make_params(build_op), build_cell, threads),
            build_out);
    });

    // identify
    auto* identify_cmd = app.add_subcommand(
        "identify", "Rank gallery subjects against a probe image");
    std::string identify_gallery, identify_probe;
    OperatorFlags identify_op;
    int identify_cell = 10;
    int identify_top = 5;
    identify_cmd
        ->add_option("--gallery", identify_gallery,
                     "Manifest TSV; its gallery rows are enrolled")
        ->required();
    identify_cmd->add_option("--probe", identify_probe, "Probe image")
        ->required();
    add_operator_flags(identify_cmd, identify_op);
    identify_cmd->add_option("--cell", identify_cell, "Cell size in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    identify_cmd
        ->add_option("--top", identify_top, "Rows to print (0 = all)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    identify_cmd->callback([&] {
        const elbp::OperatorParams params = make_params(identify_op);
        const elbp::Gallery gallery =
            load_gallery(identify_gallery, params, identify_cell, threads);
        const elbp::FaceModel probe = elbp::build_face_model(
            elbp::load_image(identify_probe), params, identify_cell, threads);
        const std::vector<elbp::RankedMatch> matches =
            elbp::identify(probe, gallery, threads);
        const std::size_t limit =
            identify_top == 0
                ? matches.size()
                : std::min<std::size_t>(identify_top, matches.size());
        std::cout << "rank,subject,score\n";
        char score[32];
        for (std::size_t i = 0; i < limit; ++i) {
            std::snprintf(score, sizeof(score), "%.6f", matches[i].score);
            std::cout << i + 1 << ',' << matches[i].subject << ',' << score
                      << '\n';
        }
    });

    // evaluate
    auto* eval_cmd = app.add_subcommand(
        "evaluate", "Rank-1 identification accuracy over a manifest");
    std::string eval_manifest, eval_out = "-", eval_details;
    OperatorFlags eval_op;
    int eval_cell = 10;
    eval_cmd->add_option("--manifest", eval_manifest, "Manifest TSV")
        ->required();
    add_operator_flags(eval_cmd, eval_op);
    eval_cmd->add_option("--cell", eval_cell, "Cell size in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eval_cmd->add_option("--out", eval_out, "Results CSV path (- = stdout)")
        ->capture_default_str();
    eval_cmd->add_option("--details", eval_details,
                         "Optional per-probe detail CSV path");
    eval_cmd->callback([&] {
        const elbp::OperatorParams params = make_params(eval_op);
        const elbp::AccuracyReport report = elbp::evaluate(
            elbp::load_manifest(eval_manifest), params, eval_cell, threads);
        write_output(eval_out, [&](std::ostream& out) {
            elbp::write_results_csv(out,
                                    {elbp::to_result_row(report, params, eval_cell)});
        });
        if (!eval_details.empty())
            write_output(eval_details, [&](std::ostream& out) {
                elbp::write_details_csv(out, report);
            });
    });

    // sweep-cell
    auto* sweep_cell_cmd = app.add_subcommand(
        "sweep-cell", "Accuracy as a function of the cell size");
    std::string sc_manifest, sc_out = "-";
    OperatorFlags sc_op;
    std::vector<int> sc_sizes;
    sweep_cell_cmd->add_option("--manifest", sc_manifest, "Manifest TSV")
        ->required();
    add_operator_flags(sweep_cell_cmd, sc_op);
    sweep_cell_cmd
        ->add_option("--sizes", sc_sizes,
                     "Cell sizes to sweep (default 4..20)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sweep_cell_cmd->add_option("--out", sc_out, "Results CSV path (- = stdout)")
        ->capture_default_str();
    sweep_cell_cmd->callback([&] {
        if (sc_sizes.empty())
            for (int size = 4; size <= 20; ++size) sc_sizes.push_back(size);
        const std::vector<elbp::ResultRow> rows =
            elbp::sweep_cell_size(elbp::load_manifest(sc_manifest),
                                  make_params(sc_op), sc_sizes, threads);
        write_output(sc_out, [&](std::ostream& out) {
            elbp::write_results_csv(out, rows);
        });
    });

    // sweep-range
    auto* sweep_range_cmd = app.add_subcommand(
        "sweep-range", "Accuracy as a function of the operator range");
    std::string sr_manifest, sr_out = "-";
    std::vector<std::pair<int, int>> sr_topologies;
    std::vector<int> sr_ranges;
    int sr_cell = 10;
    sweep_range_cmd->add_option("--manifest", sr_manifest, "Manifest TSV")
        ->required();
    sweep_range_cmd
        ->add_option("--topology", sr_topologies,
                     "Topology pair x,y; repeatable (default the four "
                     "4/9 combinations)")
        ->delimiter(',');
    sweep_range_cmd->add_option("--cell", sr_cell, "Cell size in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_range_cmd
        ->add_option("--ranges", sr_ranges, "Ranges to sweep (default 1..8)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sweep_range_cmd->add_option("--out", sr_out, "Results CSV path (- = stdout)")
        ->capture_default_str();
    sweep_range_cmd->callback([&] {
        if (sr_topologies.empty())
            sr_topologies = {{4, 4}, {4, 9}, {9, 4}, {9, 9}};
        if (sr_ranges.empty())
            for (int range = 1; range <= 8; ++range) sr_ranges.push_back(range);
        const std::vector<elbp::ResultRow> rows =
            elbp::sweep_range(elbp::load_manifest(sr_manifest), sr_topologies,
                              sr_cell, sr_ranges, threads);
        write_output(sr_out, [&](std::ostream& out) {
            elbp::write_results_csv(out, rows);
        });
    });

    // gen-fixtures
    auto* fixtures_cmd = app.add_subcommand(
        "gen-fixtures",
        "Write a synthetic closed-set dataset (images + manifest.tsv)");
    std::string fx_dir;
    int fx_subjects = 20, fx_width = 64, fx_height = 64, fx_noise = 4;
    std::uint64_t fx_seed = 1;
    std::string fx_kind = "blobs";
    fixtures_cmd->add_option("--out-dir", fx_dir, "Output directory")
        ->required();
    fixtures_cmd->add_option("--subjects", fx_subjects, "Number of subjects")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fixtures_cmd->add_option("--width", fx_width, "Image width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fixtures_cmd->add_option("--height", fx_height, "Image height")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fixtures_cmd
        ->add_option("--noise", fx_noise,
                     "Probe perturbation amplitude (0 = identical probes)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fixtures_cmd->add_option("--seed", fx_seed, "Fixture seed")
        ->capture_default_str();
    fixtures_cmd
        ->add_option("--kind", fx_kind, "Texture kind for subject images")
        ->check(CLI::IsMember({"ramp", "checker", "noise", "blobs"}))
        ->capture_default_str();
    fixtures_cmd->callback([&] {
        const elbp::TextureKind kind = elbp::texture_kind_from_name(fx_kind);
        std::error_code ec;
        fs::create_directories(fx_dir, ec);
        if (ec)
            elbp::raise(elbp::ErrorCode::Io,
                        "cannot create directory " + fx_dir + ": " + ec.message());
        std::string manifest_body;
        for (int i = 0; i < fx_subjects; ++i) {
            const std::string subject = padded_subject(i, fx_subjects);
            const elbp::GrayImage gallery =
                elbp::gen_texture(fx_seed + i, kind, fx_width, fx_height);
            const elbp::GrayImage probe = elbp::add_uniform_noise(
                gallery, fx_seed + 100000 + i, fx_noise);
            elbp::save_pgm(gallery, fs::path(fx_dir) / (subject + ".pgm"));
            elbp::save_pgm(probe, fs::path(fx_dir) / (subject + "_probe.pgm"));
            manifest_body += subject + ".pgm\t" + subject + "\tgallery\n";
            manifest_body += subject + "_probe.pgm\t" + subject + "\tprobe\n";
        }
        write_output((fs::path(fx_dir) / "manifest.tsv").string(),
                     [&](std::ostream& out) { out << manifest_body; });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
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
