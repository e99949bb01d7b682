#ifndef MVSTREAM_SEGMENTS_HPP
#define MVSTREAM_SEGMENTS_HPP

#include <optional>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/model.hpp"

namespace mvstream {

// A pair of anchor representations responsible for every lattice viewpoint
// in the half-open interval [left.view, right.view).
struct MvNavigationSegment {
    Representation left;
    Representation right;

    auto operator<=>(const MvNavigationSegment&) const = default;

    ViewpointIndex cover_lo() const { return left.view; }
    ViewpointIndex cover_hi() const { return right.view; }  // exclusive
    std::int64_t lattice_count() const { return right.view.ticks - left.view.ticks; }
};

MvNavigationSegment make_segment(const Representation& left, const Representation& right);

// An ordered collection of segments with its download cost: each distinct
// representation is billed once, but a shared anchor view downloaded at two
// rates is two representations and billed twice.
struct SegmentSet {
    std::vector<MvNavigationSegment> segments;
    Kbps download_cost = 0;
};

SegmentSet make_segment_set(std::vector<MvNavigationSegment> segments);

// All ordered anchor pairs (left.view < right.view) drawn from the stored
// representations of (video, resolution). max_rate_mismatch, when set, drops
// pairs with |r_L - r_R| above the cap.
std::vector<MvNavigationSegment> enumerate_segments(
    const RepresentationSet& stored, const std::string& video, const std::string& resolution,
    std::optional<Kbps> max_rate_mismatch = std::nullopt);

// Re-use constraint: sorted by left view, consecutive segments abut exactly
// (segment i's right view equals segment i+1's left view) with no overlap.
bool check_c1(const SegmentSet& set);

// Full coverage: every lattice viewpoint of w lies in some [v_L, v_R); the
// right endpoint w.hi also counts as covered when it equals some segment's
// right anchor view.
bool check_c2(const SegmentSet& set, const NavigationWindow& w);

struct CoverageMatrices {
    // a[m][u]: segment m covers viewpoint u (half-open interval membership).
    std::vector<std::vector<std::uint8_t>> viewpoint;
    // b[m][v]: camera view v is a reference view of segment m.
    std::vector<std::vector<std::uint8_t>> camera;
};

CoverageMatrices build_coverage_matrices(const std::vector<MvNavigationSegment>& segments,
                                         const std::vector<ViewpointIndex>& viewpoints,
                                         const std::vector<ViewpointIndex>& cameras);

enum class Normalization {
    segment,       // divide by the segment's own lattice count
    intersection,  // divide by the count of summed viewpoints
};

// Mean synthesized distortion of the segment's viewpoints inside w.
double segment_distortion(const MvNavigationSegment& seg, const NavigationWindow& w,
                          const VideoModel& video,
                          Normalization normalization = Normalization::segment);

double segment_satisfaction(const MvNavigationSegment& seg, const NavigationWindow& w,
                            const VideoModel& video,
                            Normalization normalization = Normalization::segment);

}  // namespace mvstream

#endif
