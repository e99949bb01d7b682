#include "mvstream/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mvstream/client.hpp"

namespace mvstream {

ChannelProcess make_staircase(std::vector<Kbps> levels, int dwell) {
    if (levels.empty() || dwell < 1) throw ConfigInvalid("staircase needs levels and dwell >= 1");
    for (Kbps l : levels)
        if (l <= 0) throw ConfigInvalid("channel levels must be > 0");
    ChannelProcess p;
    p.kind = ChannelKind::staircase;
    p.levels = std::move(levels);
    p.dwell = dwell;
    return p;
}

ChannelProcess make_markov(std::vector<Kbps> states, std::vector<std::vector<double>> transition) {
    if (states.empty() || transition.size() != states.size())
        throw ConfigInvalid("markov channel needs one transition row per state");
    for (Kbps l : states)
        if (l <= 0) throw ConfigInvalid("channel levels must be > 0");
    for (const auto& row : transition) {
        if (row.size() != states.size()) throw ConfigInvalid("markov transition matrix must be square");
        double sum = std::accumulate(row.begin(), row.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9) throw ConfigInvalid("markov rows must sum to 1");
        for (double p : row)
            if (p < 0) throw ConfigInvalid("markov probabilities must be >= 0");
    }
    ChannelProcess p;
    p.kind = ChannelKind::markov;
    p.levels = std::move(states);
    p.transition = std::move(transition);
    return p;
}

ChannelProcess make_trace(std::vector<Kbps> kbps) {
    ChannelProcess p;
    p.kind = ChannelKind::trace;
    p.levels = std::move(kbps);
    return p;
}

ChannelProcess default_markov(const std::vector<ConnectionClass>& connections) {
    std::vector<Kbps> states;
    for (const auto& c : connections)
        states.push_back(static_cast<Kbps>(std::llround((c.bmin_mbps + c.bmax_mbps) * 500.0 * 2.0)));
    std::sort(states.begin(), states.end());
    const std::size_t n = states.size();
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (n == 1) {
            t[i][i] = 1.0;
        } else if (i == 0) {
            t[i][i] = 0.8;
            t[i][i + 1] = 0.2;
        } else if (i + 1 == n) {
            t[i][i] = 0.8;
            t[i][i - 1] = 0.2;
        } else {
            t[i][i] = 0.8;
            t[i][i - 1] = 0.1;
            t[i][i + 1] = 0.1;
        }
    }
    return make_markov(std::move(states), std::move(t));
}

Kbps channel_step(const ChannelProcess& process, ChannelState& state, std::mt19937_64& rng) {
    switch (process.kind) {
        case ChannelKind::staircase: {
            std::size_t idx = static_cast<std::size_t>(state.slot / process.dwell) % process.levels.size();
            ++state.slot;
            return process.levels[idx];
        }
        case ChannelKind::markov: {
            Kbps rate = process.levels[state.markov_state];
            double x = uniform01(rng);
            double acc = 0.0;
            const auto& row = process.transition[state.markov_state];
            std::size_t next = row.size() - 1;
            for (std::size_t i = 0; i < row.size(); ++i) {
                acc += row[i];
                if (x < acc) {
                    next = i;
                    break;
                }
            }
            state.markov_state = next;
            ++state.slot;
            return rate;
        }
        case ChannelKind::trace: {
            if (state.slot >= static_cast<std::int64_t>(process.levels.size()))
                throw TraceExhausted("channel trace exhausted at slot " + std::to_string(state.slot));
            return process.levels[static_cast<std::size_t>(state.slot++)];
        }
    }
    throw Error("unreachable");
}

ViewpointIndex navigation_step(ViewpointIndex u, const NavigationWindow& window,
                               const NavigationModel& nav, const VideoModel& video,
                               const std::vector<std::pair<ViewpointIndex, double>>& focus,
                               double bias, std::mt19937_64& rng) {
    if (u < video.first_camera() || u > video.last_camera())
        throw Error("current view outside the camera range");
    std::int64_t delta =
        std::llround(nav.rho * nav.chunk_seconds * static_cast<double>(video.q_ticks));
    std::int64_t lo = std::max({video.first_camera().ticks, window.lo.ticks, u.ticks - delta});
    std::int64_t hi = std::min({video.last_camera().ticks, window.hi.ticks, u.ticks + delta});
    if (lo > hi) return u;  // pinned window that excludes u; stay put

    std::map<std::int64_t, double> density;
    for (const auto& [v, p] : focus) density[v.ticks] = p;
    std::vector<double> weights;
    double total = 0.0;
    for (std::int64_t t = lo; t <= hi; ++t) {
        auto it = density.find(t);
        double f = it == density.end() ? 0.0 : it->second;
        double w = bias == 0.0 ? 1.0 : std::pow(f, bias);
        weights.push_back(w);
        total += w;
    }
    if (total <= 0.0) {
        std::fill(weights.begin(), weights.end(), 1.0);
        total = static_cast<double>(weights.size());
    }
    double x = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (x < acc) return ViewpointIndex{lo + static_cast<std::int64_t>(i)};
    }
    return ViewpointIndex{hi};
}

double SessionTrace::mean_satisfaction() const {
    if (slots.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : slots) sum += s.satisfaction;
    return sum / static_cast<double>(slots.size());
}

SessionTrace run_session(const SessionParams& params, const RepresentationSet& stored,
                         int horizon_slots, std::uint64_t seed) {
    if (horizon_slots < 1) throw ConfigInvalid("horizon must be >= 1");
    if (params.video == nullptr) throw ConfigInvalid("session needs a video model");
    const VideoModel& video = *params.video;

    SessionTrace trace;
    trace.user_id = params.user_id;
    trace.video = video.id;
    trace.class_name = params.class_name;
    trace.repetition = params.repetition;

    std::mt19937_64 channel_rng(mix_seed(seed, 0x6368616eULL));
    std::mt19937_64 nav_rng(mix_seed(seed, 0x6e617669ULL));
    ChannelState channel_state;
    auto focus = start_view_distribution(video);
    ViewpointIndex u = params.start_view;

    for (int slot = 0; slot < horizon_slots; ++slot) {
        SlotRecord rec;
        rec.slot = slot;
        rec.start_view = u;
        rec.channel_kbps = channel_step(params.channel, channel_state, channel_rng);
        rec.window = params.fixed_window ? *params.fixed_window
                                         : navigation_window(u, params.nav, video);
        ChainOutcome out =
            solve_best_chain(rec.window, stored, rec.channel_kbps, video, params.resolution);
        if (out.ok()) {
            rec.satisfaction = 1.0 - out.result.distortion_mean;
            rec.cost_kbps = out.result.cost;
        } else {
            rec.satisfaction = 0.0;
            rec.infeasible = out.status == ChainStatus::infeasible;
            rec.unspannable = out.status == ChainStatus::unspannable;
        }
        trace.slots.push_back(rec);
        u = navigation_step(u, rec.window, params.nav, video, focus, params.nav_bias, nav_rng);
    }
    return trace;
}

AggregateStats aggregate(const std::vector<SessionTrace>& traces) {
    if (traces.empty()) throw ConfigInvalid("nothing to aggregate");
    AggregateStats stats;

    // Per-user means over every slot of every repetition, ordered by video.
    std::map<std::string, std::pair<std::string, std::vector<double>>> by_user;  // id -> (video, sats)
    std::map<std::string, std::string> class_of;
    std::map<std::string, std::vector<double>> by_video;
    std::map<int, std::vector<double>> by_rep;
    std::size_t horizon = 0;
    for (const auto& t : traces) horizon = std::max(horizon, t.slots.size());
    std::vector<double> slot_sum(horizon, 0.0);
    std::vector<std::size_t> slot_n(horizon, 0);

    double total = 0.0;
    std::size_t count = 0;
    for (const auto& t : traces) {
        auto& entry = by_user[t.user_id];
        entry.first = t.video;
        class_of[t.user_id] = t.class_name;
        for (const auto& s : t.slots) {
            entry.second.push_back(s.satisfaction);
            by_video[t.video].push_back(s.satisfaction);
            by_rep[t.repetition].push_back(s.satisfaction);
            slot_sum[static_cast<std::size_t>(s.slot)] += s.satisfaction;
            slot_n[static_cast<std::size_t>(s.slot)] += 1;
            total += s.satisfaction;
            ++count;
        }
    }

    auto mean = [](const std::vector<double>& v) {
        return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };

    for (const auto& [user, entry] : by_user)
        stats.per_user.push_back({user, entry.first, class_of[user], mean(entry.second)});
    std::stable_sort(stats.per_user.begin(), stats.per_user.end(),
                     [](const UserSummary& a, const UserSummary& b) { return a.video < b.video; });
    for (const auto& [video, sats] : by_video) stats.per_video.push_back({video, mean(sats)});
    for (std::size_t i = 0; i < horizon; ++i)
        stats.per_slot_mean.push_back(slot_n[i] ? slot_sum[i] / static_cast<double>(slot_n[i]) : 0.0);
    for (const auto& [rep, sats] : by_rep) stats.per_repetition_mean.push_back(mean(sats));
    stats.population_mean = count ? total / static_cast<double>(count) : 0.0;

    const std::size_t r = stats.per_repetition_mean.size();
    if (r >= 2) {
        double m = mean(stats.per_repetition_mean);
        double var = 0.0;
        for (double x : stats.per_repetition_mean) var += (x - m) * (x - m);
        var /= static_cast<double>(r - 1);
        stats.ci95_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(r));
    }
    return stats;
}

}  // namespace mvstream
