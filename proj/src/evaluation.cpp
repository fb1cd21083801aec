#include "elbp/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "parallel.hpp"

namespace elbp {

namespace {

void validate_entries(const std::vector<ManifestEntry>& entries) {
    std::set<std::string> paths;
    std::set<std::string> gallery_subjects;
    for (const ManifestEntry& entry : entries) {
        if (!paths.insert(entry.path).second)
            raise(ErrorCode::Validation,
                  "duplicate manifest path '" + entry.path + "'");
        if (entry.split == Split::Gallery)
            gallery_subjects.insert(entry.subject);
    }
    for (const ManifestEntry& entry : entries) {
        if (entry.split == Split::Probe &&
            gallery_subjects.count(entry.subject) == 0)
            raise(ErrorCode::Validation,
                  "probe subject '" + entry.subject +
                      "' has no gallery image (closed-set manifest required)");
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Builds one model per entry index, in parallel, with path context on errors.
std::vector<FaceModel> build_models(const Manifest& manifest,
                                    const std::vector<std::size_t>& indices,
                                    const OperatorParams& params, int cell_size,
                                    int threads) {
    std::vector<FaceModel> models(indices.size());
    detail::parallel_for(
        static_cast<int>(indices.size()), threads, [&](int i) {
            const ManifestEntry& entry = manifest.entries[indices[i]];
            const std::string file = manifest.resolve(entry).string();
            try {
                models[i] = build_face_model(load_image(file), params, cell_size);
            } catch (const Error& e) {
                raise(e.code(), file + ": " + e.what());
            }
        });
    return models;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace

std::filesystem::path Manifest::resolve(const ManifestEntry& entry) const {
    std::filesystem::path p(entry.path);
    return p.is_absolute() ? p : base_dir / p;
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::Io, "cannot open " + path.string());

    std::vector<ManifestEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 3)
            raise(ErrorCode::Parse,
                  where + ": expected 3 tab-separated fields (path, subject, "
                          "split), got " +
                      std::to_string(fields.size()));
        if (fields[0].empty())
            raise(ErrorCode::Parse, where + ": empty path");
        if (fields[1].empty())
            raise(ErrorCode::Parse, where + ": empty subject id");

        Split split;
        if (fields[2] == "gallery")
            split = Split::Gallery;
        else if (fields[2] == "probe")
            split = Split::Probe;
        else
            raise(ErrorCode::Parse, where + ": unknown split '" + fields[2] +
                                        "' (allowed: gallery, probe)");
        entries.push_back({fields[0], fields[1], split});
    }
    if (in.bad())
        raise(ErrorCode::Io, "read failure on " + path.string());

    validate_entries(entries);
    Manifest manifest;
    manifest.base_dir = path.has_parent_path() ? path.parent_path()
                                               : std::filesystem::path(".");
    manifest.entries = std::move(entries);
    return manifest;
}

Manifest make_manifest(std::vector<ManifestEntry> entries,
                       std::filesystem::path base_dir) {
    validate_entries(entries);
    return {std::move(base_dir), std::move(entries)};
}

AccuracyReport evaluate(const Manifest& manifest, const OperatorParams& params,
                        int cell_size, int threads) {
    std::vector<std::size_t> gallery_idx;
    std::vector<std::size_t> probe_idx;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i)
        (manifest.entries[i].split == Split::Gallery ? gallery_idx : probe_idx)
            .push_back(i);
    if (gallery_idx.empty())
        raise(ErrorCode::Argument, "manifest has no gallery entries");
    if (probe_idx.empty())
        raise(ErrorCode::Argument, "manifest has no probe entries");

    std::vector<FaceModel> gallery_models =
        build_models(manifest, gallery_idx, params, cell_size, threads);
    std::vector<FaceModel> probe_models =
        build_models(manifest, probe_idx, params, cell_size, threads);

    // All images must share one resolution; report the first offender.
    const int ref_w = gallery_models.front().source_width;
    const int ref_h = gallery_models.front().source_height;
    auto check_dims = [&](const FaceModel& model, std::size_t entry_idx) {
        if (model.source_width != ref_w || model.source_height != ref_h)
            raise(ErrorCode::Dataset,
                  manifest.entries[entry_idx].path + " is " +
                      std::to_string(model.source_width) + "x" +
                      std::to_string(model.source_height) + " but " +
                      manifest.entries[gallery_idx.front()].path + " is " +
                      std::to_string(ref_w) + "x" + std::to_string(ref_h));
    };
    for (std::size_t i = 0; i < gallery_models.size(); ++i)
        check_dims(gallery_models[i], gallery_idx[i]);
    for (std::size_t i = 0; i < probe_models.size(); ++i)
        check_dims(probe_models[i], probe_idx[i]);

    Gallery gallery;
    for (std::size_t i = 0; i < gallery_models.size(); ++i)
        gallery.enroll(manifest.entries[gallery_idx[i]].subject,
                       std::move(gallery_models[i]));

    AccuracyReport report;
    report.total_probes = static_cast<int>(probe_models.size());
    report.records.resize(probe_models.size());
    detail::parallel_for(
        static_cast<int>(probe_models.size()), threads, [&](int i) {
            const ManifestEntry& entry = manifest.entries[probe_idx[i]];
            const RankedMatch best =
                identify(probe_models[i], gallery).front();
            report.records[i] = {entry.path, entry.subject, best.subject,
                                 best.score};
        });
    for (const ProbeRecord& record : report.records)
        if (record.predicted_subject == record.true_subject)
            ++report.correct_rank1;
    report.accuracy_percent =
        100.0 * report.correct_rank1 / report.total_probes;
    return report;
}

ResultRow to_result_row(const AccuracyReport& report,
                        const OperatorParams& params, int cell_size) {
    return {params.name(),          cell_size,
            params.neighbor.tag,    params.central.tag,
            params.range,           report.accuracy_percent,
            report.total_probes,    report.correct_rank1};
}

std::vector<ResultRow> sweep_cell_size(const Manifest& manifest,
                                       const OperatorParams& params,
                                       const std::vector<int>& sizes,
                                       int threads) {
    if (sizes.empty())
        raise(ErrorCode::Argument, "cell-size sweep needs at least one size");
    std::vector<ResultRow> rows;
    rows.reserve(sizes.size());
    for (int size : sizes)
        rows.push_back(
            to_result_row(evaluate(manifest, params, size, threads), params, size));
    return rows;
}

std::vector<ResultRow> sweep_range(
    const Manifest& manifest,
    const std::vector<std::pair<int, int>>& topologies, int cell_size,
    const std::vector<int>& ranges, int threads) {
    if (topologies.empty())
        raise(ErrorCode::Argument, "range sweep needs at least one topology");
    if (ranges.empty())
        raise(ErrorCode::Argument, "range sweep needs at least one range");
    std::vector<ResultRow> rows;
    rows.reserve(topologies.size() * ranges.size());
    for (const auto& [neighbor_tag, central_tag] : topologies) {
        for (int range : ranges) {
            const OperatorParams params =
                OperatorParams::make(neighbor_tag, central_tag, range);
            rows.push_back(to_result_row(
                evaluate(manifest, params, cell_size, threads), params,
                cell_size));
        }
    }
    return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "config,cell_size,x,y,r,accuracy_percent,total,correct\n";
    for (const ResultRow& row : rows)
        out << csv_escape(row.config) << ',' << row.cell_size << ','
            << row.neighbor_tag << ',' << row.central_tag << ',' << row.range
            << ',' << format_fixed(row.accuracy_percent, 2) << ',' << row.total
            << ',' << row.correct << '\n';
}

void write_details_csv(std::ostream& out, const AccuracyReport& report) {
    out << "path,true_subject,predicted_subject,score\n";
    for (const ProbeRecord& record : report.records)
        out << csv_escape(record.path) << ','
            << csv_escape(record.true_subject) << ','
            << csv_escape(record.predicted_subject) << ','
            << format_fixed(record.score, 6) << '\n';
}

}  // namespace elbp
