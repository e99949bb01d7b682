#include "doctest.h"
#include "mvstream/presets.hpp"
#include "mvstream/segments.hpp"

using namespace mvstream;

namespace {

RepresentationSet grid_set(const VideoModel& video, std::initializer_list<int> camera_idx,
                           std::initializer_list<Kbps> rates) {
    RepresentationSet set;
    for (int i : camera_idx)
        for (Kbps r : rates)
            set.insert(make_representation(video, video.cameras[static_cast<std::size_t>(i)], r,
                                           "1080p"));
    return set;
}

}  // namespace

TEST_CASE("segment enumeration counts ordered view pairs times rate combinations") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");

    CHECK(enumerate_segments(grid_set(shark, {0, 1}, {1000}), "Shark", "1080p").size() == 1);
    CHECK(enumerate_segments(grid_set(shark, {0, 1}, {1000, 2000}), "Shark", "1080p").size() == 4);
    CHECK(enumerate_segments(grid_set(shark, {0, 1, 2}, {1000}), "Shark", "1080p").size() == 3);
    CHECK(enumerate_segments(grid_set(shark, {0}, {1000}), "Shark", "1080p").empty());
    CHECK(enumerate_segments(grid_set(shark, {0, 1}, {1000}), "Hall", "1080p").empty());
}

TEST_CASE("rate mismatch cap filters wide pairs") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    RepresentationSet set = grid_set(shark, {0, 1}, {1000, 4000});
    CHECK(enumerate_segments(set, "Shark", "1080p").size() == 4);
    CHECK(enumerate_segments(set, "Shark", "1080p", 0).size() == 2);     // equal rates only
    CHECK(enumerate_segments(set, "Shark", "1080p", 3000).size() == 4);  // cap not binding
}

TEST_CASE("c1 accepts abutting chains and rejects overlap") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    auto rep = [&](int cam, Kbps r) {
        return make_representation(shark, shark.cameras[static_cast<std::size_t>(cam)], r, "1080p");
    };

    SegmentSet chain = make_segment_set(
        {make_segment(rep(0, 1000), rep(2, 2000)), make_segment(rep(2, 400), rep(3, 1000))});
    CHECK(check_c1(chain));  // shared view, rates may differ

    SegmentSet overlap = make_segment_set(
        {make_segment(rep(0, 1000), rep(2, 1000)), make_segment(rep(1, 1000), rep(3, 1000))});
    CHECK_FALSE(check_c1(overlap));

    SegmentSet gap = make_segment_set(
        {make_segment(rep(0, 1000), rep(1, 1000)), make_segment(rep(2, 1000), rep(3, 1000))});
    CHECK_FALSE(check_c1(gap));

    CHECK(check_c1(make_segment_set({make_segment(rep(0, 1000), rep(3, 1000))})));
    CHECK(check_c1(make_segment_set({})));
}

TEST_CASE("c2 demands coverage of every window viewpoint") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    auto rep = [&](int cam) {
        return make_representation(shark, shark.cameras[static_cast<std::size_t>(cam)], 1000,
                                   "1080p");
    };

    SegmentSet one = make_segment_set({make_segment(rep(0), rep(3))});
    CHECK(check_c2(one, {shark.cameras[1], ViewpointIndex{shark.cameras[2].ticks + 1}}));

    SegmentSet gap = make_segment_set(
        {make_segment(rep(0), rep(1)), make_segment(rep(2), rep(3))});
    CHECK_FALSE(check_c2(gap, {shark.cameras[0], shark.cameras[3]}));

    CHECK_FALSE(check_c2(make_segment_set({}), {shark.cameras[0], shark.cameras[0]}));

    // Window right endpoint on the chain's last anchor counts as covered.
    CHECK(check_c2(one, {shark.cameras[1], shark.cameras[3]}));
    CHECK_FALSE(check_c2(one, {shark.cameras[1], ViewpointIndex{shark.cameras[3].ticks + 1}}));
}

TEST_CASE("coverage matrices mark half-open intervals and reference views") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    auto rep = [&](int cam, Kbps r) {
        return make_representation(shark, shark.cameras[static_cast<std::size_t>(cam)], r, "1080p");
    };
    std::vector<MvNavigationSegment> segs = {make_segment(rep(0, 1000), rep(1, 1000)),
                                             make_segment(rep(1, 1000), rep(3, 2000))};
    std::vector<ViewpointIndex> viewpoints;
    for (std::int64_t t = 0; t <= shark.cameras[3].ticks; ++t) viewpoints.push_back({t});

    CoverageMatrices m = build_coverage_matrices(segs, viewpoints, shark.cameras);

    int row0 = 0, row1 = 0;
    for (auto v : m.viewpoint[0]) row0 += v;
    for (auto v : m.viewpoint[1]) row1 += v;
    CHECK(row0 == 4);  // one camera gap at q=4
    CHECK(row1 == 8);

    for (const auto& row : m.camera) {
        int refs = 0;
        for (auto v : row) refs += v;
        CHECK(refs == 2);
    }
    CHECK(m.viewpoint[0][0] == 1);
    CHECK(m.viewpoint[0][4] == 0);  // right end exclusive
    CHECK(m.camera[0][0] == 1);
    CHECK(m.camera[0][1] == 1);
    CHECK(m.camera[0][2] == 0);
}

TEST_CASE("download cost bills distinct representations once") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    auto rep = [&](int cam, Kbps r) {
        return make_representation(shark, shark.cameras[static_cast<std::size_t>(cam)], r, "1080p");
    };

    // Shared middle anchor at one rate: billed once.
    SegmentSet shared = make_segment_set(
        {make_segment(rep(0, 1000), rep(1, 2000)), make_segment(rep(1, 2000), rep(2, 400))});
    CHECK(shared.download_cost == 3400);

    // Shared view at two rates: both representations transferred.
    SegmentSet split = make_segment_set(
        {make_segment(rep(0, 1000), rep(1, 2000)), make_segment(rep(1, 400), rep(2, 400))});
    CHECK(split.download_cost == 3800);

    // C1-valid chain of k segments with distinct anchors bills k+1 slots.
    SegmentSet chain = make_segment_set({make_segment(rep(0, 400), rep(1, 800)),
                                         make_segment(rep(1, 800), rep(2, 1500)),
                                         make_segment(rep(2, 1500), rep(3, 3000))});
    CHECK(check_c1(chain));
    CHECK(chain.download_cost == 400 + 800 + 1500 + 3000);
}

TEST_CASE("c1 chains tile without overlap") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    auto rep = [&](int cam) {
        return make_representation(shark, shark.cameras[static_cast<std::size_t>(cam)], 1000,
                                   "1080p");
    };
    SegmentSet chain = make_segment_set({make_segment(rep(0), rep(2)), make_segment(rep(2), rep(5)),
                                         make_segment(rep(5), rep(6))});
    REQUIRE(check_c1(chain));
    std::int64_t covered = 0;
    for (const auto& seg : chain.segments) covered += seg.lattice_count();
    CHECK(covered == shark.cameras[6].ticks - shark.cameras[0].ticks);

    // anchors strictly increase and neighbours share exactly one view
    for (std::size_t i = 0; i + 1 < chain.segments.size(); ++i) {
        CHECK(chain.segments[i].left.view < chain.segments[i].right.view);
        CHECK(chain.segments[i].right.view == chain.segments[i + 1].left.view);
    }
}
