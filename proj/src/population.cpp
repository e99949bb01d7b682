#include "mvstream/population.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"
#include "mvstream/client.hpp"

namespace mvstream {

std::vector<std::pair<ViewpointIndex, double>> start_view_distribution(const VideoModel& video) {
    if (video.focus_var <= 0) throw ConfigInvalid("focus variance must be > 0");
    std::vector<std::pair<ViewpointIndex, double>> dist;
    double total = 0.0;
    for (std::int64_t t = video.first_camera().ticks; t <= video.last_camera().ticks; ++t) {
        double x = static_cast<double>(t) / static_cast<double>(video.q_ticks);
        double z = x - video.focus_mean;
        double density = std::exp(-0.5 * z * z / video.focus_var);
        dist.push_back({ViewpointIndex{t}, density});
        total += density;
    }
    for (auto& [u, p] : dist) p /= total;
    return dist;
}

NavigationWindow window_from_labels(const VideoModel& video, std::int64_t lo_label,
                                    std::int64_t hi_label) {
    if (lo_label > hi_label) throw ConfigInvalid("window labels out of order");
    std::int64_t spacing = video.camera_labels[1] - video.camera_labels[0];
    std::int64_t first = video.camera_labels.front();
    auto to_tick = [&](std::int64_t label) {
        std::int64_t num = (label - first) * video.q_ticks;
        if (num % spacing != 0)
            throw ConfigInvalid("window label " + std::to_string(label) +
                                " does not land on the viewpoint lattice (q_ticks=" +
                                std::to_string(video.q_ticks) + ")");
        return ViewpointIndex{num / spacing};
    };
    NavigationWindow w{to_tick(lo_label), to_tick(hi_label)};
    if (w.lo < video.first_camera() || w.hi > video.last_camera())
        throw ConfigInvalid("window outside the camera range");
    return w;
}

namespace {

template <class Rng>
ViewpointIndex sample_discrete(const std::vector<std::pair<ViewpointIndex, double>>& dist,
                               Rng& rng) {
    double x = uniform01(rng);
    double acc = 0.0;
    for (const auto& [u, p] : dist) {
        acc += p;
        if (x < acc) return u;
    }
    return dist.back().first;
}

}  // namespace

std::vector<UserClass> build_population(const VideoMap& videos, const PopulationConfig& config,
                                        const NavigationModel& nav, std::uint64_t seed) {
    if (config.connections.empty()) throw ConfigInvalid("no connection classes configured");
    double psum = 0.0;
    for (const auto& c : config.connections) {
        if (c.bmin_mbps <= 0 || c.bmin_mbps >= c.bmax_mbps)
            throw ConfigInvalid("connection " + c.name + ": need 0 < bmin < bmax");
        psum += c.probability;
    }
    if (std::abs(psum - 1.0) > 1e-9) throw ConfigInvalid("connection probabilities must sum to 1");
    if (config.percentiles.empty()) throw ConfigInvalid("no percentiles configured");
    for (double p : config.percentiles)
        if (p < 0.0 || p > 1.0) throw ConfigInvalid("percentiles must lie in [0,1]");
    if (config.windows_per_class < 1) throw ConfigInvalid("windows_per_class must be >= 1");
    if (videos.empty()) throw ConfigInvalid("no videos configured");

    std::map<std::string, double> video_prob = config.video_probability;
    if (video_prob.empty()) {
        for (const auto& [id, v] : videos) video_prob[id] = 1.0 / static_cast<double>(videos.size());
    } else {
        double vsum = 0.0;
        for (const auto& [id, p] : video_prob) {
            if (!videos.count(id)) throw ConfigInvalid("video probability for unknown video " + id);
            vsum += p;
        }
        if (video_prob.size() != videos.size() || std::abs(vsum - 1.0) > 1e-9)
            throw ConfigInvalid("video probabilities must cover all videos and sum to 1");
    }

    std::vector<UserClass> classes;
    std::size_t class_index = 0;
    for (const auto& [video_id, video] : videos) {
        auto focus = start_view_distribution(video);
        for (const auto& conn : config.connections) {
            for (double percentile : config.percentiles) {
                UserClass cls;
                cls.video = video_id;
                cls.resolution = config.resolution;
                cls.connection = conn.name;
                cls.percentile = percentile;
                std::ostringstream name;
                name << video_id << "/" << conn.name << "/p" << static_cast<int>(percentile * 100);
                cls.name = name.str();
                // Per-chunk budget range is twice the connection bounds.
                double lo = 2.0 * conn.bmin_mbps, hi = 2.0 * conn.bmax_mbps;
                cls.budget = static_cast<Kbps>(std::llround((lo + percentile * (hi - lo)) * 1000.0));
                cls.fraction = video_prob.at(video_id) * conn.probability /
                               static_cast<double>(config.percentiles.size());

                if (config.fixed_window_labels) {
                    cls.windows.push_back({window_from_labels(video, config.fixed_window_labels->first,
                                                              config.fixed_window_labels->second),
                                           1.0});
                } else {
                    std::mt19937_64 rng(mix_seed(seed, class_index));
                    double each = 1.0 / static_cast<double>(config.windows_per_class);
                    for (int k = 0; k < config.windows_per_class; ++k) {
                        ViewpointIndex u = sample_discrete(focus, rng);
                        NavigationWindow w = navigation_window(u, nav, video);
                        auto it = std::find_if(cls.windows.begin(), cls.windows.end(),
                                               [&](const auto& e) { return e.first == w; });
                        if (it == cls.windows.end())
                            cls.windows.push_back({w, each});
                        else
                            it->second += each;
                    }
                }
                classes.push_back(std::move(cls));
                ++class_index;
            }
        }
    }
    return classes;
}

void apply_scenario(const std::string& name, VideoMap& videos, PopulationConfig& config) {
    if (name == "nw-homogeneous") {
        config.fixed_window_labels = {16, 52};
        return;
    }
    if (name == "bw-homogeneous") {
        config.connections = {{"wifi", 0.4, 4.0, 1.0}};
        const std::map<std::string, double> variances = {
            {"Dancer", 10.0}, {"Shark", 150.0}, {"Hall", 3000.0}};
        for (auto& [id, video] : videos) {
            auto it = variances.find(id);
            if (it == variances.end())
                throw ConfigInvalid("bw-homogeneous expects the Dancer/Shark/Hall presets");
            double spacing = static_cast<double>(video.camera_labels[1] - video.camera_labels[0]);
            video.focus_var = it->second / (spacing * spacing);
        }
        return;
    }
    throw UnknownScenario("unknown scenario: " + name);
}

std::string population_manifest(const std::vector<UserClass>& classes, std::uint64_t seed) {
    nlohmann::json j;
    j["seed"] = seed;
    j["classes"] = nlohmann::json::array();
    for (const auto& cls : classes) {
        nlohmann::json c;
        c["name"] = cls.name;
        c["video"] = cls.video;
        c["resolution"] = cls.resolution;
        c["connection"] = cls.connection;
        c["percentile"] = cls.percentile;
        c["budget_kbps"] = cls.budget;
        c["fraction"] = cls.fraction;
        c["windows"] = nlohmann::json::array();
        for (const auto& [w, p] : cls.windows)
            c["windows"].push_back({{"lo_tick", w.lo.ticks}, {"hi_tick", w.hi.ticks}, {"probability", p}});
        j["classes"].push_back(std::move(c));
    }
    return j.dump(2);
}

}  // namespace mvstream
