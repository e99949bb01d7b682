#include <cmath>

#include "doctest.h"
#include "mvstream/population.hpp"
#include "mvstream/presets.hpp"

using namespace mvstream;

namespace {

double entropy(const std::vector<std::pair<ViewpointIndex, double>>& dist) {
    double h = 0.0;
    for (const auto& [u, p] : dist)
        if (p > 0) h -= p * std::log(p);
    return h;
}

}  // namespace

TEST_CASE("start view distribution is normalized and centered") {
    VideoMap videos = preset_videos(4);
    for (const auto& [id, video] : videos) {
        auto dist = start_view_distribution(video);
        CHECK(dist.size() == static_cast<std::size_t>(video.last_camera().ticks + 1));
        double sum = 0.0, mean = 0.0;
        for (const auto& [u, p] : dist) {
            sum += p;
            mean += p * static_cast<double>(u.ticks);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // focus mean sits at the centre of the symmetric camera range
        CHECK(mean == doctest::Approx(video.focus_mean * static_cast<double>(video.q_ticks))
                          .epsilon(1e-9));
        // symmetry about the midpoint
        std::size_t n = dist.size();
        for (std::size_t i = 0; i < n / 2; ++i)
            CHECK(dist[i].second == doctest::Approx(dist[n - 1 - i].second).epsilon(1e-12));
    }
}

TEST_CASE("a vanishing variance concentrates on the nearest lattice point") {
    VideoModel v = make_video_model("x", {0, 8, 16}, 4, 1.0, 50.0, 0.0, 0.5, 0.3, 8.0, 1e-6);
    auto dist = start_view_distribution(v);
    double at_center = 0.0;
    for (const auto& [u, p] : dist)
        if (u.ticks == 4) at_center = p;
    CHECK(at_center == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("wider focus variance has strictly larger entropy") {
    VideoMap videos = preset_videos(4);
    CHECK(entropy(start_view_distribution(videos.at("Hall"))) >
          entropy(start_view_distribution(videos.at("Dancer"))));
    CHECK(entropy(start_view_distribution(videos.at("Hall"))) >
          entropy(start_view_distribution(videos.at("Shark"))));
}

TEST_CASE("population construction matches the class arithmetic") {
    VideoMap videos = preset_videos(4);
    PopulationConfig config;
    config.connections = preset_connections();
    NavigationModel nav{0.5, 2.0, 4};
    auto classes = build_population(videos, config, nav, 7);

    CHECK(classes.size() == 18);  // 3 videos x 3 connections x 2 percentiles
    double zeta = 0.0;
    for (const auto& cls : classes) {
        zeta += cls.fraction;
        double psum = 0.0;
        for (const auto& [w, p] : cls.windows) psum += p;
        CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!cls.windows.empty());
    }
    CHECK(zeta == doctest::Approx(1.0).epsilon(1e-12));

    // Wi-Fi 25th percentile on the doubled range [0.8, 8] Mbps.
    bool seen = false;
    for (const auto& cls : classes) {
        if (cls.connection == "wifi" && cls.percentile == 0.25) {
            CHECK(cls.budget == 2600);
            seen = true;
        }
    }
    CHECK(seen);

    // Budgets grow with the percentile and the connection quality.
    for (const auto& cls : classes) {
        for (const auto& other : classes) {
            if (cls.video == other.video && cls.connection == other.connection &&
                cls.percentile < other.percentile)
                CHECK(cls.budget <= other.budget);
        }
    }
}

TEST_CASE("single-cell population carries full weight") {
    VideoMap videos;
    VideoModel v = preset_video("Shark", 4);
    videos.emplace(v.id, v);
    PopulationConfig config;
    config.connections = {{"wifi", 0.4, 4.0, 1.0}};
    config.percentiles = {0.5};
    NavigationModel nav{0.5, 2.0, 4};
    auto classes = build_population(videos, config, nav, 7);
    CHECK(classes.size() == 1);
    CHECK(classes[0].fraction == doctest::Approx(1.0));
    CHECK(classes[0].budget == static_cast<Kbps>(std::llround((0.8 + 0.5 * 7.2) * 1000)));
}

TEST_CASE("population sampling is reproducible per seed") {
    VideoMap videos = preset_videos(4);
    PopulationConfig config;
    config.connections = preset_connections();
    NavigationModel nav{0.5, 2.0, 4};
    auto a = build_population(videos, config, nav, 99);
    auto b = build_population(videos, config, nav, 99);
    auto c = build_population(videos, config, nav, 100);
    REQUIRE(a.size() == b.size());
    bool all_equal = true, any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].windows != b[i].windows) all_equal = false;
        if (a[i].windows != c[i].windows) any_diff = true;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("invalid population configs are rejected") {
    VideoMap videos = preset_videos(4);
    NavigationModel nav{0.5, 2.0, 4};
    PopulationConfig bad;
    bad.connections = {{"wifi", 0.4, 4.0, 0.7}};  // probabilities don't sum to 1
    CHECK_THROWS_AS(build_population(videos, bad, nav, 1), ConfigInvalid);
    PopulationConfig swapped;
    swapped.connections = {{"wifi", 4.0, 0.4, 1.0}};
    CHECK_THROWS_AS(build_population(videos, swapped, nav, 1), ConfigInvalid);
}

TEST_CASE("scenario presets") {
    VideoMap videos = preset_videos(4);
    PopulationConfig config;
    config.connections = preset_connections();

    SUBCASE("nw-homogeneous pins one shared window") {
        apply_scenario("nw-homogeneous", videos, config);
        REQUIRE(config.fixed_window_labels.has_value());
        NavigationModel nav{0.5, 2.0, 4};
        auto classes = build_population(videos, config, nav, 3);
        for (const auto& cls : classes) {
            REQUIRE(cls.windows.size() == 1);
            CHECK(cls.windows[0].second == 1.0);
            CHECK(cls.windows[0].first.lo.ticks == 8);   // camera label 16
            CHECK(cls.windows[0].first.hi.ticks == 26);  // label 52 = view 6.5
        }
    }

    SUBCASE("bw-homogeneous is Wi-Fi only with re-spread variances") {
        apply_scenario("bw-homogeneous", videos, config);
        REQUIRE(config.connections.size() == 1);
        CHECK(config.connections[0].probability == 1.0);
        CHECK(videos.at("Dancer").focus_var == doctest::Approx(10.0 / 64.0));
        CHECK(videos.at("Hall").focus_var == doctest::Approx(3000.0 / 64.0));
    }

    SUBCASE("unknown scenario") {
        CHECK_THROWS_AS(apply_scenario("hw-homogeneous", videos, config), UnknownScenario);
    }
}

TEST_CASE("window label conversion respects the lattice") {
    VideoModel v = preset_video("Shark", 4);
    NavigationWindow w = window_from_labels(v, 16, 52);
    CHECK(w.lo.ticks == 8);
    CHECK(w.hi.ticks == 26);
    CHECK_THROWS_AS(window_from_labels(preset_video("Shark", 3), 16, 52), ConfigInvalid);
    CHECK_THROWS_AS(window_from_labels(v, 16, 80), ConfigInvalid);
}
