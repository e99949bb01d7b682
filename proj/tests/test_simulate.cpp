#include <random>

#include "doctest.h"
#include "mvstream/presets.hpp"
#include "mvstream/simulate.hpp"

using namespace mvstream;

namespace {

RepresentationSet two_view_set(const VideoModel& video, Kbps rate) {
    RepresentationSet set;
    set.insert(make_representation(video, video.first_camera(), rate, "1080p"));
    set.insert(make_representation(video, video.last_camera(), rate, "1080p"));
    return set;
}

}  // namespace

TEST_CASE("staircase channel cycles through its levels") {
    ChannelProcess p = make_staircase({2000, 4000, 6000}, 5);
    ChannelState state;
    std::mt19937_64 rng(1);
    std::vector<Kbps> seen;
    for (int slot = 0; slot < 16; ++slot) seen.push_back(channel_step(p, state, rng));
    CHECK(seen[0] == 2000);
    CHECK(seen[4] == 2000);
    CHECK(seen[5] == 4000);
    CHECK(seen[7] == 4000);
    CHECK(seen[10] == 6000);
    CHECK(seen[15] == 2000);  // wraps
}

TEST_CASE("identity markov transitions hold the channel constant") {
    ChannelProcess p = make_markov({1500, 3000}, {{1, 0}, {0, 1}});
    ChannelState state;
    state.markov_state = 1;
    std::mt19937_64 rng(7);
    for (int slot = 0; slot < 10; ++slot) CHECK(channel_step(p, state, rng) == 3000);
}

TEST_CASE("markov rows must be stochastic") {
    CHECK_THROWS_AS(make_markov({1000, 2000}, {{0.5, 0.4}, {0, 1}}), ConfigInvalid);
    CHECK_THROWS_AS(make_markov({1000}, {{1}, {1}}), ConfigInvalid);
}

TEST_CASE("trace channels exhaust") {
    ChannelProcess p = make_trace({1000, 2000});
    ChannelState state;
    std::mt19937_64 rng(7);
    CHECK(channel_step(p, state, rng) == 1000);
    CHECK(channel_step(p, state, rng) == 2000);
    CHECK_THROWS_AS(channel_step(p, state, rng), TraceExhausted);
}

TEST_CASE("default markov channel uses the connection midpoints") {
    ChannelProcess p = default_markov(preset_connections());
    REQUIRE(p.levels.size() == 3);
    CHECK(p.levels[0] == 4400);
    CHECK(p.levels[1] == 10700);
    CHECK(p.levels[2] == 26500);
    for (const auto& row : p.transition) {
        double sum = 0;
        for (double x : row) sum += x;
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("navigation is frozen at zero speed") {
    VideoModel v = preset_video("Shark", 4);
    NavigationModel nav{0.0, 2.0, 4};
    auto focus = start_view_distribution(v);
    std::mt19937_64 rng(3);
    ViewpointIndex u{13};
    NavigationWindow w{{0}, v.last_camera()};
    for (int i = 0; i < 20; ++i) CHECK(navigation_step(u, w, nav, v, focus, 1.0, rng) == u);
}

TEST_CASE("unbiased walks have near-zero mean displacement") {
    VideoModel v = preset_video("Shark", 4);
    NavigationModel nav{0.5, 2.0, 4};  // +- 4 ticks per step
    auto focus = start_view_distribution(v);
    std::mt19937_64 rng(11);
    NavigationWindow w{{0}, v.last_camera()};
    double sum = 0;
    const int n = 20000;
    ViewpointIndex u{18};  // interior start, range 0..36
    for (int i = 0; i < n; ++i) {
        ViewpointIndex next = navigation_step(u, w, nav, v, focus, 0.0, rng);
        sum += static_cast<double>(next.ticks - u.ticks);
    }
    CHECK(std::abs(sum / n) < 0.1);
}

TEST_CASE("strongly biased walks drift toward the focus mean") {
    VideoModel v = preset_video("Dancer", 4);  // tight focus at the centre
    NavigationModel nav{0.5, 2.0, 4};
    auto focus = start_view_distribution(v);
    std::mt19937_64 rng(17);
    NavigationWindow w{{0}, v.last_camera()};
    ViewpointIndex u{4};  // far left of the mean at tick 18
    int toward = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        ViewpointIndex next = navigation_step(u, w, nav, v, focus, 8.0, rng);
        if (next.ticks > u.ticks) ++toward;
    }
    CHECK(static_cast<double>(toward) / n > 0.5);
}

TEST_CASE("walks stay inside the downloaded window") {
    VideoModel v = preset_video("Hall", 4);
    NavigationModel nav{1.0, 2.0, 4};
    auto focus = start_view_distribution(v);
    std::mt19937_64 rng(23);
    NavigationWindow w{{8}, {16}};
    ViewpointIndex u{12};
    for (int i = 0; i < 200; ++i) {
        u = navigation_step(u, w, nav, v, focus, 1.0, rng);
        CHECK(u.ticks >= 8);
        CHECK(u.ticks <= 16);
    }
}

TEST_CASE("sessions are deterministic and respect the slot budget") {
    VideoModel v = preset_video("Shark", 4);
    RepresentationSet set = two_view_set(v, 900);
    SessionParams params;
    params.user_id = "u0";
    params.class_name = "c";
    params.video = &v;
    params.resolution = "1080p";
    params.nav = {0.5, 2.0, 4};
    params.channel = make_staircase({2000, 4000, 6000}, 5);
    params.start_view = ViewpointIndex{18};

    SessionTrace a = run_session(params, set, 30, 99);
    SessionTrace b = run_session(params, set, 30, 99);
    SessionTrace c = run_session(params, set, 30, 100);
    REQUIRE(a.slots.size() == 30);
    bool identical = true, differs = false;
    for (int i = 0; i < 30; ++i) {
        identical &= a.slots[i].satisfaction == b.slots[i].satisfaction &&
                     a.slots[i].start_view == b.slots[i].start_view;
        differs |= a.slots[i].start_view != c.slots[i].start_view;
        CHECK(a.slots[i].cost_kbps <= a.slots[i].channel_kbps);
        CHECK(a.slots[i].satisfaction >= 0.0);
        CHECK(a.slots[i].satisfaction <= 1.0);
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("a starved channel records zero satisfaction throughout") {
    VideoModel v = preset_video("Shark", 4);
    RepresentationSet set = two_view_set(v, 900);
    SessionParams params;
    params.user_id = "u0";
    params.video = &v;
    params.resolution = "1080p";
    params.nav = {0.5, 2.0, 4};
    params.channel = make_staircase({1000}, 5);  // below the 1800 pair
    params.start_view = ViewpointIndex{18};
    SessionTrace t = run_session(params, set, 10, 1);
    for (const auto& s : t.slots) {
        CHECK(s.satisfaction == 0.0);
        CHECK(s.infeasible);
        CHECK(s.cost_kbps == 0);
    }
}

TEST_CASE("ample single-slot session finds the unique chain") {
    VideoModel v = preset_video("Shark", 4);
    RepresentationSet set = two_view_set(v, 900);
    SessionParams params;
    params.user_id = "u0";
    params.video = &v;
    params.resolution = "1080p";
    params.nav = {0.25, 2.0, 4};
    params.channel = make_staircase({10000}, 5);
    params.start_view = ViewpointIndex{18};
    SessionTrace t = run_session(params, set, 1, 1);
    REQUIRE(t.slots.size() == 1);
    CHECK(t.slots[0].cost_kbps == 1800);
    CHECK(t.slots[0].satisfaction > 0.0);
}

TEST_CASE("aggregation means and confidence intervals") {
    SessionTrace t1;
    t1.user_id = "u0";
    t1.video = "A";
    t1.repetition = 0;
    SessionTrace t2 = t1;
    t2.user_id = "u1";
    t2.video = "B";
    for (int i = 0; i < 5; ++i) {
        t1.slots.push_back({i, {0}, {{0}, {0}}, 1000, 0, 0.4, false, false});
        t2.slots.push_back({i, {0}, {{0}, {0}}, 1000, 0, 0.8, false, false});
    }
    AggregateStats stats = aggregate({t1, t2});
    CHECK(stats.population_mean == doctest::Approx(0.6));
    REQUIRE(stats.per_user.size() == 2);
    CHECK(stats.per_user[0].video == "A");  // ordered by requested video
    CHECK(stats.per_user[0].mean_satisfaction == doctest::Approx(0.4));
    CHECK(stats.per_user[1].mean_satisfaction == doctest::Approx(0.8));
    for (double m : stats.per_slot_mean) CHECK(m == doctest::Approx(0.6));

    // constant traces across repetitions collapse the interval to zero
    SessionTrace r2 = t1;
    r2.repetition = 1;
    SessionTrace r2b = t2;
    r2b.repetition = 1;
    AggregateStats reps = aggregate({t1, t2, r2, r2b});
    CHECK(reps.per_repetition_mean.size() == 2);
    CHECK(reps.ci95_halfwidth == doctest::Approx(0.0));
}
