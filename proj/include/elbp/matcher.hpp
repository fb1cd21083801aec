#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "elbp/face_model.hpp"

namespace elbp {

/// Everything two models must agree on to be comparable.
struct ModelFingerprint {
    int neighbor_tag = 0;
    int central_tag = 0;
    int range = 0;
    int cell_size = 0;
    int source_width = 0;
    int source_height = 0;

    bool operator==(const ModelFingerprint&) const = default;
};

ModelFingerprint fingerprint(const FaceModel& model);

/// Ordered collection of labelled models sharing one fingerprint. Several
/// entries may carry the same subject (multiple gallery images per person).
class Gallery {
public:
    struct Entry {
        std::string subject;
        FaceModel model;
    };

    void enroll(std::string subject, FaceModel model);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const ModelFingerprint& shared_fingerprint() const { return fingerprint_; }

private:
    std::vector<Entry> entries_;
    ModelFingerprint fingerprint_{};
};

/// Mean over cells of the histogram intersection of the normalized cell
/// histograms: S = (1/numCells) * sum_cells sum_bins min(a, b), in [0, 1],
/// symmetric, S(a, a) = 1. Cells with equal pixel counts are intersected
/// on raw counts and divided once, which is exact.
double intersection_similarity(const FaceModel& a, const FaceModel& b);

struct RankedMatch {
    std::string subject;
    double score = 0;
    std::size_t gallery_index = 0;
};

/// Scores the probe against every gallery image and sorts descending;
/// ties keep gallery insertion order. The rank-1 subject is the predicted
/// identity (nearest image, not per-subject pooling).
std::vector<RankedMatch> identify(const FaceModel& probe,
                                  const Gallery& gallery, int threads = 1);

}  // namespace elbp
