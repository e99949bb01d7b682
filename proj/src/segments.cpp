#include "mvstream/segments.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace mvstream {

MvNavigationSegment make_segment(const Representation& left, const Representation& right) {
    if (left.video != right.video || left.resolution != right.resolution)
        throw ViewOrderViolation("segment anchors must share video and resolution");
    if (left.view >= right.view) throw ViewOrderViolation("segment anchors must satisfy left < right");
    return MvNavigationSegment{left, right};
}

SegmentSet make_segment_set(std::vector<MvNavigationSegment> segments) {
    SegmentSet set;
    std::set<Representation> distinct;
    for (const auto& seg : segments) {
        distinct.insert(seg.left);
        distinct.insert(seg.right);
    }
    for (const auto& rep : distinct) set.download_cost += rep.rate;
    set.segments = std::move(segments);
    return set;
}

std::vector<MvNavigationSegment> enumerate_segments(const RepresentationSet& stored,
                                                    const std::string& video,
                                                    const std::string& resolution,
                                                    std::optional<Kbps> max_rate_mismatch) {
    std::vector<Representation> reps = stored.select(video, resolution);
    std::vector<MvNavigationSegment> out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (reps[i].view >= reps[j].view) continue;
            if (max_rate_mismatch && std::llabs(reps[i].rate - reps[j].rate) > *max_rate_mismatch)
                continue;
            out.push_back(MvNavigationSegment{reps[i], reps[j]});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool check_c1(const SegmentSet& set) {
    if (set.segments.size() <= 1) return true;
    std::vector<MvNavigationSegment> sorted = set.segments;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::pair(a.left.view, a.right.view) < std::pair(b.left.view, b.right.view);
    });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i].right.view != sorted[i + 1].left.view) return false;
    }
    return true;
}

bool check_c2(const SegmentSet& set, const NavigationWindow& w) {
    for (std::int64_t t = w.lo.ticks; t <= w.hi.ticks; ++t) {
        ViewpointIndex u{t};
        bool covered = false;
        for (const auto& seg : set.segments) {
            if (seg.cover_lo() <= u && u < seg.cover_hi()) {
                covered = true;
                break;
            }
            if (u == w.hi && seg.right.view == u) {  // anchor itself is decodable
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

CoverageMatrices build_coverage_matrices(const std::vector<MvNavigationSegment>& segments,
                                         const std::vector<ViewpointIndex>& viewpoints,
                                         const std::vector<ViewpointIndex>& cameras) {
    CoverageMatrices m;
    m.viewpoint.assign(segments.size(), std::vector<std::uint8_t>(viewpoints.size(), 0));
    m.camera.assign(segments.size(), std::vector<std::uint8_t>(cameras.size(), 0));
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        for (std::size_t u = 0; u < viewpoints.size(); ++u)
            if (seg.cover_lo() <= viewpoints[u] && viewpoints[u] < seg.cover_hi())
                m.viewpoint[s][u] = 1;
        for (std::size_t v = 0; v < cameras.size(); ++v)
            if (cameras[v] == seg.left.view || cameras[v] == seg.right.view) m.camera[s][v] = 1;
    }
    return m;
}

double segment_distortion(const MvNavigationSegment& seg, const NavigationWindow& w,
                          const VideoModel& video, Normalization normalization) {
    std::int64_t lo = std::max(seg.cover_lo().ticks, w.lo.ticks);
    std::int64_t hi = std::min(seg.cover_hi().ticks - 1, w.hi.ticks);
    if (lo > hi) throw EmptyIntersection("segment does not intersect the window");
    double sum = 0.0;
    for (std::int64_t t = lo; t <= hi; ++t)
        sum += synthesis_distortion(video, ViewpointIndex{t}, seg.left, seg.right);
    std::int64_t n = normalization == Normalization::segment ? seg.lattice_count() : hi - lo + 1;
    return sum / static_cast<double>(n);
}

double segment_satisfaction(const MvNavigationSegment& seg, const NavigationWindow& w,
                            const VideoModel& video, Normalization normalization) {
    return 1.0 - segment_distortion(seg, w, video, normalization);
}

}  // namespace mvstream
