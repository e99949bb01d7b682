#ifndef MVSTREAM_CATALOG_HPP
#define MVSTREAM_CATALOG_HPP

#include <map>
#include <string>
#include <vector>

#include "mvstream/model.hpp"

namespace mvstream {

using VideoMap = std::map<std::string, VideoModel>;

// The stored set of representations; the optimizer's decision object.
// Members are kept sorted and unique.
struct RepresentationSet {
    std::vector<Representation> reps;

    void insert(const Representation& rep);
    bool contains(const Representation& rep) const;
    bool empty() const { return reps.empty(); }
    std::size_t size() const { return reps.size(); }

    // Representations of one (video, resolution), sorted by (view, rate).
    std::vector<Representation> select(const std::string& video,
                                       const std::string& resolution) const;
};

RepresentationSet make_set(std::vector<Representation> reps);

// Sum of member rates plus the per-view depth overhead, once per distinct
// stored (video, view).
Kbps storage_cost_kbps(const RepresentationSet& set, const VideoMap& videos);

// The candidate space the optimizer selects from: every camera view of every
// video at every ladder rate and resolution.
struct CandidateLadder {
    std::vector<Kbps> rates;               // strictly increasing
    std::vector<std::string> resolutions;  // typically {"1080p"}
};

std::vector<Representation> enumerate_candidates(const VideoMap& videos,
                                                 const CandidateLadder& ladder);

}  // namespace mvstream

#endif
