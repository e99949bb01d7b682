#ifndef MVSTREAM_POPULATION_HPP
#define MVSTREAM_POPULATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/model.hpp"

namespace mvstream {

struct ConnectionClass {
    std::string name;
    double bmin_mbps = 0;
    double bmax_mbps = 0;
    double probability = 0;
};

struct PopulationConfig {
    std::vector<ConnectionClass> connections;
    std::vector<double> percentiles{0.25, 0.75};
    int windows_per_class = 4;
    // Empty means uniform over the configured videos.
    std::map<std::string, double> video_probability;
    // When set, every class gets this single window (label units) with
    // probability 1 instead of sampled realizations.
    std::optional<std::pair<std::int64_t, std::int64_t>> fixed_window_labels;
    std::string resolution = "1080p";
};

struct UserClass {
    std::string name;
    std::string video;
    std::string resolution;
    std::string connection;
    double percentile = 0;
    Kbps budget = 0;  // per-chunk download budget
    std::vector<std::pair<NavigationWindow, double>> windows;
    double fraction = 0;  // portion of the population
};

// Focus-of-attention Gaussian evaluated on the viewpoint lattice, truncated
// to the camera range and renormalized.
std::vector<std::pair<ViewpointIndex, double>> start_view_distribution(const VideoModel& video);

// Converts a window given in camera-label units to lattice ticks; both
// endpoints must land on the lattice.
NavigationWindow window_from_labels(const VideoModel& video, std::int64_t lo_label,
                                    std::int64_t hi_label);

// One class per (video x connection x percentile). Budgets are the stated
// percentile of the per-chunk range [2*Bmin, 2*Bmax] (linear interpolation);
// fractions multiply the video probability, 1/#percentiles and the
// connection probability. Windows are sampled realizations of w(u) with u
// drawn from the focus distribution; duplicates merge their probability.
std::vector<UserClass> build_population(const VideoMap& videos, const PopulationConfig& config,
                                        const NavigationModel& nav, std::uint64_t seed);

// Named scenario overrides. "nw-homogeneous" pins one shared window for all
// classes; "bw-homogeneous" switches the population to Wi-Fi only and
// re-spreads the per-content focus variances. Mutates config and videos.
void apply_scenario(const std::string& name, VideoMap& videos, PopulationConfig& config);

// JSON manifest of a built population, for reproducibility records.
std::string population_manifest(const std::vector<UserClass>& classes, std::uint64_t seed);

}  // namespace mvstream

#endif
