#ifndef MVSTREAM_SIMULATE_HPP
#define MVSTREAM_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/population.hpp"

namespace mvstream {

enum class ChannelKind { staircase, markov, trace };

// Staircase cycles through its levels, holding each for `dwell` slots.
// Markov reads the current state's rate and then samples the next state.
// Trace is an explicit per-slot list and runs out.
struct ChannelProcess {
    ChannelKind kind = ChannelKind::staircase;
    std::vector<Kbps> levels;  // staircase levels or markov state rates or trace
    int dwell = 5;
    std::vector<std::vector<double>> transition;  // markov rows, sum to 1
};

ChannelProcess make_staircase(std::vector<Kbps> levels, int dwell);
ChannelProcess make_markov(std::vector<Kbps> states, std::vector<std::vector<double>> transition);
ChannelProcess make_trace(std::vector<Kbps> kbps);

// Three states at the connection-range midpoints with sticky transitions.
ChannelProcess default_markov(const std::vector<ConnectionClass>& connections);

struct ChannelState {
    std::int64_t slot = 0;
    std::size_t markov_state = 0;
};

Kbps channel_step(const ChannelProcess& process, ChannelState& state, std::mt19937_64& rng);

// Random walk over the lattice positions reachable within one chunk,
// restricted to the just-downloaded window and the camera range. Step
// weights are focus density raised to `bias`; bias 0 walks uniformly.
ViewpointIndex navigation_step(ViewpointIndex u, const NavigationWindow& window,
                               const NavigationModel& nav, const VideoModel& video,
                               const std::vector<std::pair<ViewpointIndex, double>>& focus,
                               double bias, std::mt19937_64& rng);

struct SlotRecord {
    int slot = 0;
    ViewpointIndex start_view;
    NavigationWindow window;
    Kbps channel_kbps = 0;
    Kbps cost_kbps = 0;
    double satisfaction = 0;
    bool infeasible = false;
    bool unspannable = false;
};

struct SessionTrace {
    std::string user_id;
    std::string video;
    std::string class_name;
    int repetition = 0;
    std::vector<SlotRecord> slots;

    double mean_satisfaction() const;
};

struct SessionParams {
    std::string user_id;
    std::string class_name;
    const VideoModel* video = nullptr;
    std::string resolution;
    NavigationModel nav;
    ChannelProcess channel;
    double nav_bias = 1.0;
    ViewpointIndex start_view;
    // Scenario-pinned window; otherwise w(u) is rebuilt every slot.
    std::optional<NavigationWindow> fixed_window;
    int repetition = 0;
};

// One user session: per slot, sample the channel, build the window, adapt
// with the chain solver under the slot's rate budget, then walk. The slot
// satisfaction is 1 minus the mean window distortion, or 0 when no chain
// fits (flagged).
SessionTrace run_session(const SessionParams& params, const RepresentationSet& stored,
                         int horizon_slots, std::uint64_t seed);

struct UserSummary {
    std::string user_id;
    std::string video;
    std::string class_name;
    double mean_satisfaction = 0;
};

struct AggregateStats {
    std::vector<UserSummary> per_user;           // ordered by requested video
    std::vector<std::pair<std::string, double>> per_video;
    std::vector<double> per_slot_mean;
    std::vector<double> per_repetition_mean;
    double population_mean = 0;
    double ci95_halfwidth = 0;  // across repetitions
};

AggregateStats aggregate(const std::vector<SessionTrace>& traces);

}  // namespace mvstream

#endif
