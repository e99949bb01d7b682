#include <cmath>

#include "doctest.h"
#include "mvstream/model.hpp"
#include "mvstream/presets.hpp"
#include "mvstream/segments.hpp"

using namespace mvstream;

namespace {

VideoModel flat_video(double d_anchor_rate_1000, double xi, double d_inpaint,
                      std::int64_t q_ticks = 4, int cameras = 10) {
    // b chosen so that coding_distortion(1000) equals the requested value
    // with a = 1, e = 0: d = b / 1000.
    std::vector<std::int64_t> labels;
    for (int i = 0; i < cameras; ++i) labels.push_back(8 * i);
    return make_video_model("flat", labels, q_ticks, 1.0, d_anchor_rate_1000 * 1000.0, 0.0, xi,
                            d_inpaint, 4.0 * (cameras - 1), 100.0);
}

}  // namespace

TEST_CASE("coding quality reproduces the fitted curves") {
    VideoMap videos = preset_videos(4);
    // python3 -c "print('%.17g' % (a - b/(r+e)))" for each row/rate
    struct Row {
        const char* video;
        Kbps rate;
        double expected;
    };
    const Row rows[] = {
        {"Shark", 600, 0.9075108997225525},
        {"Shark", 1000, 0.94840813619279241},
        {"Shark", 10000, 0.99528804797770731},
        {"Shark", 120000, 0.99961077389858266},
        {"Dancer", 600, 0.73175058579913899},
        {"Dancer", 1000, 0.7849066421138281},
        {"Dancer", 10000, 0.94646601791668816},
        {"Dancer", 120000, 0.97698472913609613},
        {"Hall", 600, 0.85477335730875859},
        {"Hall", 1000, 0.90170328383379394},
        {"Hall", 10000, 0.97169890785559254},
        {"Hall", 120000, 0.97930397397793822},
    };
    for (const auto& row : rows) {
        CAPTURE(row.video);
        CAPTURE(row.rate);
        CHECK(coding_quality(videos.at(row.video), row.rate) ==
              doctest::Approx(row.expected).epsilon(1e-12));
        CHECK(coding_distortion(videos.at(row.video), row.rate) ==
              doctest::Approx(1.0 - row.expected).epsilon(1e-12));
    }
}

TEST_CASE("coding quality saturates toward its asymptote") {
    VideoMap videos = preset_videos(4);
    CHECK(coding_quality(videos.at("Hall"), 100'000'000) == doctest::Approx(0.98).epsilon(1e-6));
    CHECK(coding_distortion(videos.at("Hall"), 100'000'000) == doctest::Approx(0.02).epsilon(1e-4));
}

TEST_CASE("coding quality is monotone over the admissible rate grid") {
    VideoMap videos = preset_videos(4);
    for (const auto& [id, video] : videos) {
        double prev = -1.0;
        for (Kbps r = 400; r <= 120000; r += 97) {
            double q = coding_quality(video, r);
            CHECK(q >= prev);
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
            prev = q;
        }
    }
}

TEST_CASE("rates outside the fit domain are rejected") {
    VideoMap videos = preset_videos(4);
    CHECK_THROWS_AS(coding_quality(videos.at("Shark"), 90), RateOutOfDomain);
    CHECK_THROWS_AS(make_representation(videos.at("Shark"), ViewpointIndex{0}, 90, "1080p"),
                    RateOutOfDomain);
}

TEST_CASE("quality clamp is counted, not raised") {
    VideoMap videos = preset_videos(4);
    quality_clamp_count().store(0);
    // Just inside the domain the raw fit goes far below zero.
    double q = coding_quality(videos.at("Shark"), 100);
    CHECK(q == 0.0);
    CHECK(quality_clamp_count().load() == 1);
    quality_clamp_count().store(0);
}

TEST_CASE("synthesis distortion at the better anchor equals its coding distortion") {
    VideoMap videos = preset_videos(4);
    const VideoModel& hall = videos.at("Hall");
    Representation left = make_representation(hall, hall.cameras[2], 1000, "1080p");
    Representation right = make_representation(hall, hall.cameras[4], 600, "1080p");
    // left has the lower distortion; at u = left.view the mix collapses to it
    CHECK(synthesis_distortion(hall, left.view, left, right) ==
          coding_distortion(hall, 1000));
}

TEST_CASE("synthesis distortion approaches the inpainted level for fast decay") {
    VideoModel video = flat_video(0.10, 500.0, 0.35);
    Representation left = make_representation(video, video.cameras[2], 1000, "1080p");
    Representation right = make_representation(video, video.cameras[4], 1000, "1080p");
    ViewpointIndex mid{video.cameras[3].ticks};
    CHECK(synthesis_distortion(video, mid, left, right) == doctest::Approx(0.35).epsilon(1e-9));
}

TEST_CASE("synthesis distortion midpoint example") {
    // Anchors one view unit away on both sides, both at distortion 0.10,
    // xi = 1.32 and inpainting 0.35:
    // python3 -c "import math; a=math.exp(-1.32); print('%.17g'%(a*.1+(1-a)*a*.1+(1-a-(1-a)*a)*.35))"
    VideoModel video = flat_video(0.10, 1.32, 0.35);
    Representation left = make_representation(video, video.cameras[2], 1000, "1080p");
    Representation right = make_representation(video, video.cameras[4], 1000, "1080p");
    ViewpointIndex mid{video.cameras[3].ticks};
    CHECK(synthesis_distortion(video, mid, left, right) ==
          doctest::Approx(0.23427266640617136).epsilon(1e-12));
}

TEST_CASE("synthesis weights are a convex combination") {
    VideoMap videos = preset_videos(4);
    for (const auto& [id, video] : videos) {
        Representation left = make_representation(video, video.cameras[1], 800, "1080p");
        Representation right = make_representation(video, video.cameras[6], 2500, "1080p");
        for (std::int64_t t = left.view.ticks; t <= right.view.ticks; ++t) {
            double q = static_cast<double>(video.q_ticks);
            double d1 = static_cast<double>(t - left.view.ticks) / q;
            double d2 = static_cast<double>(right.view.ticks - t) / q;
            double near = std::exp(-video.xi * std::min(d1, d2));
            // the weight identities hold regardless of which anchor is better
            for (double dn : {d1, d2}) {
                double df = dn == d1 ? d2 : d1;
                double w1 = std::exp(-video.xi * dn);
                double w2 = (1.0 - w1) * std::exp(-video.xi * df);
                double w3 = 1.0 - w1 - w2;
                CHECK(w1 >= 0.0);
                CHECK(w1 <= 1.0);
                CHECK(w2 >= 0.0);
                CHECK(w2 <= 1.0);
                CHECK(w3 >= -1e-12);
                CHECK(w3 <= 1.0);
                CHECK(w1 + w2 + w3 == doctest::Approx(1.0).epsilon(1e-12));
            }
            (void)near;
            double d = synthesis_distortion(video, ViewpointIndex{t}, left, right);
            CHECK(d >= 0.0);
            CHECK(d <= 1.0);
            double dmax = std::max({coding_distortion(video, 800), coding_distortion(video, 2500),
                                    video.d_inpaint});
            CHECK(d <= dmax + 1e-12);
        }
    }
}

TEST_CASE("synthesis distortion rejects misordered anchors") {
    VideoMap videos = preset_videos(4);
    const VideoModel& shark = videos.at("Shark");
    Representation left = make_representation(shark, shark.cameras[2], 1000, "1080p");
    Representation right = make_representation(shark, shark.cameras[4], 1000, "1080p");
    CHECK_THROWS_AS(synthesis_distortion(shark, ViewpointIndex{0}, left, right),
                    ViewOrderViolation);
    CHECK_THROWS_AS(synthesis_distortion(shark, shark.cameras[5], left, right),
                    ViewOrderViolation);
    CHECK_THROWS_AS(synthesis_distortion(shark, shark.cameras[3], right, left),
                    ViewOrderViolation);
}

TEST_CASE("segment distortion averages per viewpoint") {
    // Flat content with xi = 0: every synthesized viewpoint sits at the
    // anchor distortion mix, which for equal anchors is exactly d.
    VideoModel video = flat_video(0.20, 0.0, 0.35);
    Representation left = make_representation(video, video.cameras[0], 1000, "1080p");
    Representation right = make_representation(video, video.cameras[2], 1000, "1080p");
    MvNavigationSegment seg = make_segment(left, right);

    NavigationWindow whole{left.view, right.view};
    CHECK(segment_distortion(seg, whole, video) == doctest::Approx(0.20).epsilon(1e-12));

    // Window covering half of the segment's viewpoints halves the
    // segment-normalized mean.
    NavigationWindow half{left.view, ViewpointIndex{left.view.ticks + video.q_ticks - 1}};
    CHECK(segment_distortion(seg, half, video) == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(segment_distortion(seg, half, video, Normalization::intersection) ==
          doctest::Approx(0.20).epsilon(1e-12));

    CHECK(segment_satisfaction(seg, whole, video) == doctest::Approx(0.80).epsilon(1e-12));
}

TEST_CASE("segment distortion of three known viewpoints is their mean") {
    VideoModel video = flat_video(0.10, 0.7, 0.35, 1, 4);  // q=1: one viewpoint per gap boundary
    Representation left = make_representation(video, video.cameras[0], 1000, "1080p");
    Representation right = make_representation(video, video.cameras[3], 1000, "1080p");
    MvNavigationSegment seg = make_segment(left, right);
    NavigationWindow w{left.view, right.view};
    double expected = (synthesis_distortion(video, ViewpointIndex{0}, left, right) +
                       synthesis_distortion(video, ViewpointIndex{1}, left, right) +
                       synthesis_distortion(video, ViewpointIndex{2}, left, right)) /
                      3.0;
    CHECK(segment_distortion(seg, w, video) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("segment distortion requires an intersection") {
    VideoModel video = flat_video(0.10, 0.7, 0.35);
    Representation left = make_representation(video, video.cameras[0], 1000, "1080p");
    Representation right = make_representation(video, video.cameras[1], 1000, "1080p");
    MvNavigationSegment seg = make_segment(left, right);
    NavigationWindow w{video.cameras[3], video.cameras[5]};
    CHECK_THROWS_AS(segment_distortion(seg, w, video), EmptyIntersection);
}

TEST_CASE("intersection-normalized tiling reproduces the window mean") {
    VideoMap videos = preset_videos(4);
    const VideoModel& hall = videos.at("Hall");
    Representation a = make_representation(hall, hall.cameras[1], 700, "1080p");
    Representation b = make_representation(hall, hall.cameras[3], 2100, "1080p");
    Representation c = make_representation(hall, hall.cameras[6], 1100, "1080p");
    MvNavigationSegment s1 = make_segment(a, b);
    MvNavigationSegment s2 = make_segment(b, c);
    NavigationWindow w{ViewpointIndex{hall.cameras[1].ticks + 2},
                       ViewpointIndex{hall.cameras[6].ticks - 3}};

    double direct = 0.0;
    for (std::int64_t t = w.lo.ticks; t <= w.hi.ticks; ++t) {
        const MvNavigationSegment& seg = t < hall.cameras[3].ticks ? s1 : s2;
        direct += synthesis_distortion(hall, ViewpointIndex{t}, seg.left, seg.right);
    }
    direct /= static_cast<double>(w.lattice_count());

    auto count = [&](const MvNavigationSegment& seg) {
        std::int64_t lo = std::max(seg.cover_lo().ticks, w.lo.ticks);
        std::int64_t hi = std::min(seg.cover_hi().ticks - 1, w.hi.ticks);
        return static_cast<double>(hi - lo + 1);
    };
    double weighted = (count(s1) * segment_distortion(s1, w, hall, Normalization::intersection) +
                       count(s2) * segment_distortion(s2, w, hall, Normalization::intersection)) /
                      (count(s1) + count(s2));
    CHECK(weighted == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("video model construction validates invariants") {
    CHECK_THROWS_AS(make_video_model("x", {0}, 4, 1, 1, 0, 0.5, 0.3, 0, 10), ConfigInvalid);
    CHECK_THROWS_AS(make_video_model("x", {0, 8, 12}, 4, 1, 1, 0, 0.5, 0.3, 0, 10), ConfigInvalid);
    CHECK_THROWS_AS(make_video_model("x", {0, 8}, 4, 1, 1, 0, 0.5, 1.3, 0, 10), ConfigInvalid);
    CHECK_THROWS_AS(make_video_model("x", {0, 8}, 4, 1, 1, 0, 0.5, 0.3, 0, 0), ConfigInvalid);
    VideoModel v = make_video_model("x", {0, 8, 16}, 4, 1, 46.67, -95.4, 0.5, 0.3, 8, 64);
    CHECK(v.cameras.size() == 3);
    CHECK(v.cameras[2].ticks == 8);
    CHECK(v.focus_mean == doctest::Approx(1.0));
    CHECK(v.focus_var == doctest::Approx(1.0));
    CHECK(v.label_of(ViewpointIndex{4}) == 8);  // throws unless a camera
    CHECK(v.tick_of_label(16).ticks == 8);
}

