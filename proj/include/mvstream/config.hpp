#ifndef MVSTREAM_CONFIG_HPP
#define MVSTREAM_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/population.hpp"
#include "mvstream/simulate.hpp"

namespace mvstream {

struct SimulationConfig {
    int users = 12;
    int slots = 30;
    int repetitions = 20;
    double nav_bias = 1.0;
    ChannelProcess channel = ChannelProcess{ChannelKind::staircase, {2000, 4000, 6000}, 5, {}};
};

struct RunConfig {
    VideoMap videos;
    NavigationModel nav;
    CandidateLadder ladder;
    PopulationConfig population;
    std::optional<std::string> scenario;
    std::vector<Kbps> storage_budgets;  // per video, kbps
    std::vector<std::int64_t> pa_spacings{8, 16};
    bool baselines = false;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::uint64_t node_limit = 10'000'000;
    std::size_t rep_guard = 12;
    std::size_t set_guard = 18;
    SimulationConfig sim;
    std::string config_text;  // canonical JSON, hashed into the manifest

    // Videos and population with the scenario overrides applied.
    VideoMap scenario_videos() const;
    PopulationConfig scenario_population() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// The full worked example configuration (presets, connection table, desk
// ladder, staircase channel).
std::string default_config_json();

std::string manifest_json(const RunConfig& config, const std::string& command,
                          const std::vector<std::string>& outputs);

// Representation set files (JSON) used by simulate/compare.
void save_set(const RepresentationSet& set, const VideoMap& videos, const std::string& name,
              const std::string& path);
std::pair<std::string, RepresentationSet> load_set(const VideoMap& videos,
                                                   const std::string& path);

}  // namespace mvstream

#endif
