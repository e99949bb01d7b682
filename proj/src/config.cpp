#include "mvstream/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mvstream/presets.hpp"

namespace mvstream {

using nlohmann::json;

namespace {

Kbps mbps_to_kbps(double mbps) { return static_cast<Kbps>(std::llround(mbps * 1000.0)); }

ChannelProcess parse_channel(const json& j) {
    std::string kind = j.value("kind", "staircase");
    if (kind == "staircase") {
        std::vector<Kbps> levels;
        for (double m : j.at("levels_mbps").get<std::vector<double>>())
            levels.push_back(mbps_to_kbps(m));
        return make_staircase(levels, j.value("dwell", 5));
    }
    if (kind == "markov") {
        if (j.contains("states_mbps")) {
            std::vector<Kbps> states;
            for (double m : j.at("states_mbps").get<std::vector<double>>())
                states.push_back(mbps_to_kbps(m));
            return make_markov(states, j.at("transition").get<std::vector<std::vector<double>>>());
        }
        return default_markov(preset_connections());
    }
    if (kind == "trace") {
        std::vector<Kbps> kbps;
        for (double m : j.at("levels_mbps").get<std::vector<double>>())
            kbps.push_back(mbps_to_kbps(m));
        return make_trace(kbps);
    }
    throw ConfigInvalid("unknown channel kind: " + kind);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        cfg.nav.q_ticks = j.value("q_ticks", 4);
        if (j.contains("navigation")) {
            const auto& n = j.at("navigation");
            cfg.nav.rho = n.value("rho_views_per_second", 0.5);
            cfg.nav.chunk_seconds = n.value("chunk_seconds", 2.0);
        }
        if (cfg.nav.q_ticks < 1 || cfg.nav.chunk_seconds <= 0 || cfg.nav.rho < 0)
            throw ConfigInvalid("invalid navigation model");

        if (!j.contains("videos")) throw ConfigInvalid("config needs a videos list");
        for (const auto& v : j.at("videos")) {
            if (v.contains("preset")) {
                VideoModel video = preset_video(v.at("preset").get<std::string>(), cfg.nav.q_ticks);
                if (v.contains("depth_overhead_kbps"))
                    video.depth_overhead_kbps = v.at("depth_overhead_kbps").get<Kbps>();
                cfg.videos.emplace(video.id, std::move(video));
            } else {
                VideoModel video = make_video_model(
                    v.at("id").get<std::string>(),
                    v.at("camera_labels").get<std::vector<std::int64_t>>(), cfg.nav.q_ticks,
                    v.at("fit_a").get<double>(), v.at("fit_b").get<double>(),
                    v.at("fit_e").get<double>(), v.at("xi").get<double>(),
                    v.at("d_inpaint").get<double>(), v.at("focus_mean_label").get<double>(),
                    v.at("focus_var_label").get<double>(), v.value("depth_overhead_kbps", 0));
                cfg.videos.emplace(video.id, std::move(video));
            }
        }

        for (double m : j.at("ladder_mbps").get<std::vector<double>>())
            cfg.ladder.rates.push_back(mbps_to_kbps(m));
        cfg.ladder.resolutions = j.value("resolutions", std::vector<std::string>{"1080p"});

        if (j.contains("population")) {
            const auto& p = j.at("population");
            if (p.contains("connections")) {
                for (const auto& c : p.at("connections"))
                    cfg.population.connections.push_back(
                        {c.at("name").get<std::string>(), c.at("bmin_mbps").get<double>(),
                         c.at("bmax_mbps").get<double>(), c.at("probability").get<double>()});
            }
            cfg.population.percentiles = p.value("percentiles", std::vector<double>{0.25, 0.75});
            cfg.population.windows_per_class = p.value("windows_per_class", 4);
            if (p.contains("video_probability"))
                cfg.population.video_probability =
                    p.at("video_probability").get<std::map<std::string, double>>();
            cfg.population.resolution = p.value("resolution", std::string("1080p"));
        }
        if (cfg.population.connections.empty()) cfg.population.connections = preset_connections();

        if (j.contains("scenario") && !j.at("scenario").is_null())
            cfg.scenario = j.at("scenario").get<std::string>();

        for (double m : j.at("storage_budgets_mbps").get<std::vector<double>>())
            cfg.storage_budgets.push_back(mbps_to_kbps(m));
        if (cfg.storage_budgets.empty()) throw ConfigInvalid("storage_budgets_mbps is empty");

        cfg.pa_spacings = j.value("pa_spacings", std::vector<std::int64_t>{8, 16});
        cfg.baselines = j.value("baselines", false);
        cfg.seed = j.value("seed", 1ULL);
        cfg.output_dir = j.value("output_dir", std::string("out"));
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            cfg.node_limit = s.value("node_limit", 10'000'000ULL);
            cfg.rep_guard = s.value("rep_guard", 12UL);
            cfg.set_guard = s.value("set_guard", 18UL);
        }
        if (j.contains("simulation")) {
            const auto& s = j.at("simulation");
            cfg.sim.users = s.value("users", 12);
            cfg.sim.slots = s.value("slots", 30);
            cfg.sim.repetitions = s.value("repetitions", 20);
            cfg.sim.nav_bias = s.value("nav_bias", 1.0);
            if (s.contains("channel")) cfg.sim.channel = parse_channel(s.at("channel"));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigInvalid(std::string("config error: ") + e.what());
    }

    // Fail fast on scenario/ladder problems before any run starts.
    cfg.scenario_videos();
    enumerate_candidates(cfg.videos, cfg.ladder);
    cfg.config_text = json::parse(json_text).dump();
    return cfg;
}

VideoMap RunConfig::scenario_videos() const {
    VideoMap v = videos;
    PopulationConfig p = population;
    if (scenario) apply_scenario(*scenario, v, p);
    return v;
}

PopulationConfig RunConfig::scenario_population() const {
    VideoMap v = videos;
    PopulationConfig p = population;
    if (scenario) apply_scenario(*scenario, v, p);
    return p;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string default_config_json() {
    json j;
    j["q_ticks"] = 4;
    j["navigation"] = {{"rho_views_per_second", 0.5}, {"chunk_seconds", 2.0}};
    j["videos"] = json::array({{{"preset", "Shark"}}, {{"preset", "Dancer"}}, {{"preset", "Hall"}}});
    j["ladder_mbps"] = {0.4, 0.8, 1.5, 3.0, 6.0};
    j["resolutions"] = {"1080p"};
    json connections = json::array();
    for (const auto& c : preset_connections())
        connections.push_back({{"name", c.name},
                               {"bmin_mbps", c.bmin_mbps},
                               {"bmax_mbps", c.bmax_mbps},
                               {"probability", c.probability}});
    j["population"] = {{"connections", connections},
                       {"percentiles", {0.25, 0.75}},
                       {"windows_per_class", 4},
                       {"resolution", "1080p"}};
    j["scenario"] = nullptr;
    j["storage_budgets_mbps"] = {1.0, 5.0, 12.0};
    j["pa_spacings"] = {8, 16};
    j["baselines"] = false;
    j["seed"] = 42;
    j["output_dir"] = "out";
    j["solver"] = {{"node_limit", 10000000}, {"rep_guard", 12}, {"set_guard", 18}};
    j["simulation"] = {{"users", 12},
                       {"slots", 30},
                       {"repetitions", 20},
                       {"nav_bias", 1.0},
                       {"channel", {{"kind", "staircase"}, {"levels_mbps", {2.0, 4.0, 6.0}}, {"dwell", 5}}}};
    return j.dump(2);
}

std::string manifest_json(const RunConfig& config, const std::string& command,
                          const std::vector<std::string>& outputs) {
    json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["seed"] = config.seed;
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.config_text)));
    j["config_hash"] = hex;
    j["outputs"] = outputs;
    return j.dump(2);
}

void save_set(const RepresentationSet& set, const VideoMap& videos, const std::string& name,
              const std::string& path) {
    json j;
    j["name"] = name;
    j["reps"] = json::array();
    for (const auto& r : set.reps) {
        const VideoModel& video = videos.at(r.video);
        j["reps"].push_back({{"video", r.video},
                             {"view_label", video.label_of(r.view)},
                             {"rate_kbps", r.rate},
                             {"resolution", r.resolution}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write set file " + path);
    out << j.dump(2) << "\n";
}

std::pair<std::string, RepresentationSet> load_set(const VideoMap& videos,
                                                   const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingSetFile("cannot read set file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw MissingSetFile("set file " + path + " is not valid JSON: " + e.what());
    }
    RepresentationSet set;
    for (const auto& r : j.at("reps")) {
        const std::string video_id = r.at("video").get<std::string>();
        auto it = videos.find(video_id);
        if (it == videos.end()) throw ConfigInvalid("set file references unknown video " + video_id);
        set.insert(make_representation(it->second,
                                       it->second.tick_of_label(r.at("view_label").get<std::int64_t>()),
                                       r.at("rate_kbps").get<Kbps>(),
                                       r.at("resolution").get<std::string>()));
    }
    return {j.value("name", path), set};
}

}  // namespace mvstream
