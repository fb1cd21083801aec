#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "elbp/matcher.hpp"

namespace elbp {

enum class Split { Gallery, Probe };

struct ManifestEntry {
    std::string path;
    std::string subject;
    Split split = Split::Gallery;
};

/// Dataset description: labelled image paths split into gallery and probe
/// sets. Closed-set: every probe subject also appears in the gallery.
struct Manifest {
    std::filesystem::path base_dir;  // relative entry paths resolve here
    std::vector<ManifestEntry> entries;

    std::filesystem::path resolve(const ManifestEntry& entry) const;
};

/// Parses a three-column TSV (path, subject, split) where split is
/// "gallery" or "probe", then validates the closed-set invariants.
Manifest load_manifest(const std::filesystem::path& path);

/// Validates and wraps in-memory entries (fixture plumbing).
Manifest make_manifest(std::vector<ManifestEntry> entries,
                       std::filesystem::path base_dir);

struct ProbeRecord {
    std::string path;
    std::string true_subject;
    std::string predicted_subject;
    double score = 0;
};

struct AccuracyReport {
    int total_probes = 0;
    int correct_rank1 = 0;
    double accuracy_percent = 0;
    std::vector<ProbeRecord> records;  // manifest probe order
};

/// Enrolls every gallery image, identifies every probe, reports rank-1
/// accuracy. All images must decode to identical dimensions.
AccuracyReport evaluate(const Manifest& manifest, const OperatorParams& params,
                        int cell_size, int threads = 1);

/// One line of the results CSV.
struct ResultRow {
    std::string config;
    int cell_size = 0;
    int neighbor_tag = 0;
    int central_tag = 0;
    int range = 0;
    double accuracy_percent = 0;
    int total = 0;
    int correct = 0;
};

ResultRow to_result_row(const AccuracyReport& report,
                        const OperatorParams& params, int cell_size);

/// One evaluate run per size, rows in input order.
std::vector<ResultRow> sweep_cell_size(const Manifest& manifest,
                                       const OperatorParams& params,
                                       const std::vector<int>& sizes,
                                       int threads = 1);

/// Full cross-product, outer loop topologies, inner loop ranges.
std::vector<ResultRow> sweep_range(
    const Manifest& manifest,
    const std::vector<std::pair<int, int>>& topologies, int cell_size,
    const std::vector<int>& ranges, int threads = 1);

/// "config,cell_size,x,y,r,accuracy_percent,total,correct"; accuracy with
/// two decimals and '.' separator.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// "path,true_subject,predicted_subject,score", one row per probe.
void write_details_csv(std::ostream& out, const AccuracyReport& report);

}  // namespace elbp
