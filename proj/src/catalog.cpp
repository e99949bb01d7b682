#include "mvstream/catalog.hpp"

#include <algorithm>
#include <set>

namespace mvstream {

void RepresentationSet::insert(const Representation& rep) {
    auto it = std::lower_bound(reps.begin(), reps.end(), rep);
    if (it == reps.end() || *it != rep) reps.insert(it, rep);
}

bool RepresentationSet::contains(const Representation& rep) const {
    return std::binary_search(reps.begin(), reps.end(), rep);
}

std::vector<Representation> RepresentationSet::select(const std::string& video,
                                                      const std::string& resolution) const {
    std::vector<Representation> out;
    for (const auto& r : reps)
        if (r.video == video && r.resolution == resolution) out.push_back(r);
    return out;
}

RepresentationSet make_set(std::vector<Representation> reps) {
    RepresentationSet set;
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    set.reps = std::move(reps);
    return set;
}

Kbps storage_cost_kbps(const RepresentationSet& set, const VideoMap& videos) {
    Kbps total = 0;
    std::set<std::pair<std::string, std::int64_t>> stored_views;
    for (const auto& r : set.reps) {
        total += r.rate;
        stored_views.insert({r.video, r.view.ticks});
    }
    for (const auto& [video, tick] : stored_views) {
        auto it = videos.find(video);
        if (it == videos.end()) throw ConfigInvalid("unknown video in set: " + video);
        total += it->second.depth_overhead_kbps;
        (void)tick;
    }
    return total;
}

std::vector<Representation> enumerate_candidates(const VideoMap& videos,
                                                 const CandidateLadder& ladder) {
    if (!std::is_sorted(ladder.rates.begin(), ladder.rates.end()) ||
        std::adjacent_find(ladder.rates.begin(), ladder.rates.end()) != ladder.rates.end())
        throw ConfigInvalid("ladder rates must be strictly increasing");
    std::vector<Representation> out;
    for (const auto& [id, video] : videos) {
        for (const auto& res : ladder.resolutions)
            for (ViewpointIndex cam : video.cameras)
                for (Kbps rate : ladder.rates) out.push_back(make_representation(video, cam, rate, res));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mvstream
