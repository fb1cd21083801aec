#include "elbp/matcher.hpp"

#include <algorithm>
#include <cstdint>

#include "parallel.hpp"

namespace elbp {

ModelFingerprint fingerprint(const FaceModel& model) {
    return {model.params.neighbor.tag, model.params.central.tag,
            model.params.range,        model.cell_size,
            model.source_width,        model.source_height};
}

void Gallery::enroll(std::string subject, FaceModel model) {
    if (subject.empty())
        raise(ErrorCode::Argument, "gallery subject id must be non-empty");
    const ModelFingerprint fp = fingerprint(model);
    if (entries_.empty())
        fingerprint_ = fp;
    else if (!(fp == fingerprint_))
        raise(ErrorCode::IncompatibleModels,
              "model parameters differ from the enrolled gallery");
    entries_.push_back({std::move(subject), std::move(model)});
}

double intersection_similarity(const FaceModel& a, const FaceModel& b) {
    if (!(fingerprint(a) == fingerprint(b)) || a.grid_cols != b.grid_cols ||
        a.grid_rows != b.grid_rows || a.cells.size() != b.cells.size())
        raise(ErrorCode::IncompatibleModels,
              "models were built with different parameters");
    if (a.cells.empty())
        raise(ErrorCode::Argument, "models have no cells");

    double sum = 0;
    for (std::size_t cell = 0; cell < a.cells.size(); ++cell) {
        const auto& ca = a.cells[cell].counts;
        const auto& cb = b.cells[cell].counts;
        const std::uint32_t total_a = a.cells[cell].total();
        const std::uint32_t total_b = b.cells[cell].total();
        if (total_a == 0 || total_b == 0)
            raise(ErrorCode::Argument, "model contains an empty cell histogram");
        if (total_a == total_b) {
            // Equal pixel counts: min commutes with the shared division, so
            // one integer pass and a single divide are exact.
            std::uint64_t overlap = 0;
            for (std::size_t bin = 0; bin < ca.size(); ++bin)
                overlap += std::min(ca[bin], cb[bin]);
            sum += static_cast<double>(overlap) / total_a;
        } else {
            double overlap = 0;
            for (std::size_t bin = 0; bin < ca.size(); ++bin)
                overlap += std::min(static_cast<double>(ca[bin]) / total_a,
                                    static_cast<double>(cb[bin]) / total_b);
            sum += overlap;
        }
    }
    return sum / static_cast<double>(a.cells.size());
}

std::vector<RankedMatch> identify(const FaceModel& probe,
                                  const Gallery& gallery, int threads) {
    if (gallery.empty())
        raise(ErrorCode::Argument, "cannot identify against an empty gallery");

    const auto& entries = gallery.entries();
    std::vector<RankedMatch> matches(entries.size());
    detail::parallel_for(
        static_cast<int>(entries.size()), threads, [&](int i) {
            matches[i] = {entries[i].subject,
                          intersection_similarity(probe, entries[i].model),
                          static_cast<std::size_t>(i)};
        });
    std::stable_sort(matches.begin(), matches.end(),
                     [](const RankedMatch& lhs, const RankedMatch& rhs) {
                         return lhs.score > rhs.score;
                     });
    return matches;
}

}  // namespace elbp
