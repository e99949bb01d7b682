#include "mvstream/gap_study.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mvstream/client.hpp"
#include "mvstream/segments.hpp"

namespace mvstream {

SmallInstance random_small_instance(std::uint64_t seed, int max_cameras, int max_rates,
                                    int max_classes) {
    std::mt19937_64 rng(seed);
    SmallInstance inst;

    int cameras = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_cameras - 1)));
    std::int64_t q = 1 + static_cast<std::int64_t>(uniform_below(rng, 2));  // 1 or 2
    std::vector<std::int64_t> labels;
    for (int i = 0; i < cameras; ++i) labels.push_back(8 * i);

    // Content parameters drawn near the measured ranges; rates stay well
    // inside the fit domain.
    double a = 0.95 + 0.05 * uniform01(rng);
    double b = 40.0 + 360.0 * uniform01(rng);
    double e = 60.0 + 840.0 * uniform01(rng);
    double xi = 0.3 + 1.1 * uniform01(rng);
    double d_inpaint = 0.2 + 0.3 * uniform01(rng);
    double var_label = 40.0 + 400.0 * uniform01(rng);
    inst.videos.emplace("v0", make_video_model("v0", labels, q, a, b, e, xi, d_inpaint,
                                               4.0 * (cameras - 1), var_label));
    const VideoModel& video = inst.videos.at("v0");

    const std::vector<Kbps> pool = {400, 700, 1200, 2000, 3500, 6000};
    int n_rates = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_rates)));
    std::vector<Kbps> rates;
    while (static_cast<int>(rates.size()) < n_rates) {
        Kbps r = pool[uniform_below(rng, pool.size())];
        if (std::find(rates.begin(), rates.end(), r) == rates.end()) rates.push_back(r);
    }
    std::sort(rates.begin(), rates.end());
    inst.ladder.rates = rates;
    inst.ladder.resolutions = {"1080p"};

    int n_classes = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_classes)));
    NavigationModel nav;
    nav.q_ticks = q;
    nav.rho = 0.25 + 0.5 * uniform01(rng);
    for (int i = 0; i < n_classes; ++i) {
        UserClass cls;
        cls.name = "class" + std::to_string(i);
        cls.video = "v0";
        cls.resolution = "1080p";
        std::int64_t span = video.last_camera().ticks - video.first_camera().ticks;
        ViewpointIndex u{static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(span + 1)))};
        cls.windows.push_back({navigation_window(u, nav, video), 1.0});
        // Budget covers at least a cheap pair, sometimes a rich chain.
        cls.budget = 2 * rates.front() +
                     static_cast<Kbps>(uniform_below(rng, static_cast<std::uint64_t>(3 * rates.back())));
        cls.fraction = 1.0 / static_cast<double>(n_classes);
        inst.population.push_back(std::move(cls));
    }

    Kbps min_pair = 2 * rates.front();
    Kbps all = 0;
    for (Kbps r : rates) all += r * cameras;
    inst.storage_budget =
        min_pair + static_cast<Kbps>(uniform_below(rng, static_cast<std::uint64_t>(all)));
    return inst;
}

namespace {

// Population objective of one stored set under each adaptation rule.
struct SetObjectives {
    double chain = 0;
    double free = 0;
};

SetObjectives evaluate_set(const SmallInstance& inst, const RepresentationSet& set,
                           std::size_t rep_guard) {
    SetObjectives obj;
    const VideoModel& video = inst.videos.at("v0");
    for (const auto& cls : inst.population) {
        for (const auto& [window, prob] : cls.windows) {
            double w = cls.fraction * prob;
            ChainOutcome chain = solve_best_chain(window, set, cls.budget, video, cls.resolution);
            obj.chain += w * (chain.ok() ? 1.0 - chain.result.distortion_mean : 0.0);
            auto free = solve_free_pairing(window, set, cls.budget, video, cls.resolution, rep_guard);
            obj.free += w * (free ? 1.0 - free->distortion_mean : 0.0);
        }
    }
    return obj;
}

}  // namespace

GapStudyReport run_gap_study(const GapStudyParams& params) {
    GapStudyReport report;
    for (int i = 0; i < params.instances; ++i) {
        std::uint64_t seed = mix_seed(params.seed, static_cast<std::uint64_t>(i));
        GapInstanceResult row;
        row.id = i;
        row.seed = seed;

        SmallInstance inst =
            random_small_instance(seed, params.max_cameras, params.max_rates, params.max_classes);
        std::vector<Representation> candidates = enumerate_candidates(inst.videos, inst.ladder);
        if (candidates.size() > params.set_guard || candidates.size() > params.rep_guard ||
            candidates.size() >= 63) {
            row.skipped = true;
            report.rows.push_back(row);
            ++report.skipped;
            continue;
        }

        double best_chain = 0, best_free = 0;
        const std::size_t n = candidates.size();
        for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            RepresentationSet set;
            for (std::size_t k = 0; k < n; ++k)
                if (mask & (1ULL << k)) set.insert(candidates[k]);
            if (storage_cost_kbps(set, inst.videos) > inst.storage_budget) continue;
            SetObjectives obj = evaluate_set(inst, set, params.rep_guard);
            best_chain = std::max(best_chain, obj.chain);
            best_free = std::max(best_free, obj.free);
        }
        row.chain_objective = best_chain;
        row.free_objective = best_free;
        row.gap = best_free - best_chain;
        row.zero_gap = std::abs(row.gap) <= 1e-12;
        report.rows.push_back(row);
        ++report.evaluated;
        report.max_gap = std::max(report.max_gap, row.gap);
    }
    int zero = 0;
    for (const auto& row : report.rows)
        if (!row.skipped && row.zero_gap) ++zero;
    report.zero_fraction =
        report.evaluated ? static_cast<double>(zero) / static_cast<double>(report.evaluated) : 0.0;
    return report;
}

}  // namespace mvstream
