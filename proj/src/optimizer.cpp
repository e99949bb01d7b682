#include "mvstream/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <cmath>
#include <unordered_map>

namespace mvstream {

namespace {

// (video, resolution) slice of the candidate catalog; class masks are bit
// positions into `candidates`.
struct Group {
    std::string video;
    std::string resolution;
    std::vector<Representation> candidates;  // sorted
};

// One (class, window) evaluation unit with its precomputed segment cost
// table and a mask -> (satisfaction, chosen-chain mask) cache. The chain
// mask makes removals cheap: dropping a representation the optimal chain
// never used cannot change the optimum of a shrinking set.
struct ClassWindowEval {
    struct Entry {
        double sat = 0;
        std::uint64_t chain_mask = 0;
    };

    std::size_t group = 0;
    double weight = 0;
    Kbps budget = 0;
    std::string class_name;
    NavigationWindow window;
    SegmentCostTable table;
    mutable std::unordered_map<std::uint64_t, Entry> cache;

    ClassWindowEval(std::size_t g, double wgt, Kbps b, std::string name, NavigationWindow win,
                    SegmentCostTable tbl)
        : group(g), weight(wgt), budget(b), class_name(std::move(name)), window(win),
          table(std::move(tbl)) {}

    const Entry& entry(std::uint64_t mask) const {
        auto it = cache.find(mask);
        if (it != cache.end()) return it->second;
        std::vector<std::uint32_t> active;
        for (std::uint32_t i = 0; i < table.candidates().size(); ++i)
            if (mask & (1ULL << i)) active.push_back(i);
        ChainOutcome out = solve_best_chain_indexed(table, active, budget);
        Entry e;
        if (out.ok()) {
            e.sat = 1.0 - out.result.distortion_mean;
            for (const auto& seg : out.result.chain.segments) {
                e.chain_mask |= 1ULL << candidate_index(seg.left);
                e.chain_mask |= 1ULL << candidate_index(seg.right);
            }
        }
        return cache.emplace(mask, e).first->second;
    }

    double satisfaction(std::uint64_t mask) const { return entry(mask).sat; }

    // Satisfaction after dropping `bit` from `old_mask`, reusing the old
    // optimum when the dropped representation was not part of its chain.
    double satisfaction_after_drop(std::uint64_t old_mask, std::uint64_t bit) const {
        auto it = cache.find(old_mask);
        if (it != cache.end() && (it->second.chain_mask & bit) == 0) {
            return cache.emplace(old_mask & ~bit, it->second).first->second.sat;
        }
        return entry(old_mask & ~bit).sat;
    }

    std::uint32_t candidate_index(const Representation& rep) const {
        auto& cands = table.candidates();
        auto pos = std::lower_bound(cands.begin(), cands.end(), rep);
        return static_cast<std::uint32_t>(pos - cands.begin());
    }

    ChainOutcome solve(std::uint64_t mask) const {
        std::vector<std::uint32_t> active;
        for (std::uint32_t i = 0; i < table.candidates().size(); ++i)
            if (mask & (1ULL << i)) active.push_back(i);
        return solve_best_chain_indexed(table, active, budget);
    }
};

// The shared evaluation state for one optimization instance.
struct Instance {
    const VideoMap& videos;
    std::vector<Group> groups;
    std::vector<ClassWindowEval> evals;  // population order: class major, window minor

    Instance(const VideoMap& videos_, const CandidateLadder& ladder,
             const std::vector<UserClass>& population,
             Kbps chain_budget_cap = std::numeric_limits<Kbps>::max())
        : Instance(videos_, enumerate_candidates(videos_, ladder), population, chain_budget_cap) {}

    // chain_budget_cap tightens interior search bounds without changing any
    // leaf value: a chain drawn from a storage-feasible set can never cost
    // more than the whole storage budget.
    Instance(const VideoMap& videos_, const std::vector<Representation>& candidates,
             const std::vector<UserClass>& population,
             Kbps chain_budget_cap = std::numeric_limits<Kbps>::max())
        : videos(videos_) {
        for (const auto& rep : candidates) {
            if (groups.empty() || groups.back().video != rep.video ||
                groups.back().resolution != rep.resolution)
                groups.push_back({rep.video, rep.resolution, {}});
            groups.back().candidates.push_back(rep);
        }
        for (const auto& g : groups)
            if (g.candidates.size() > 64)
                throw InstanceTooLarge("more than 64 candidate representations for " + g.video +
                                       "/" + g.resolution);
        for (const auto& cls : population) {
            std::size_t gi = group_index(cls.video, cls.resolution);
            const VideoModel& video = videos_.at(cls.video);
            for (const auto& [window, prob] : cls.windows) {
                evals.emplace_back(gi, cls.fraction * prob, std::min(cls.budget, chain_budget_cap),
                                   cls.name, window,
                                   SegmentCostTable(video, groups[gi].candidates, window));
            }
        }
    }

    // A slice with no candidates still evaluates (to zero satisfaction).
    std::size_t group_index(const std::string& video, const std::string& resolution) {
        for (std::size_t i = 0; i < groups.size(); ++i)
            if (groups[i].video == video && groups[i].resolution == resolution) return i;
        groups.push_back({video, resolution, {}});
        return groups.size() - 1;
    }

    // Catalog-order candidate -> (group, bit). Candidates are globally sorted
    // and groups preserve that order.
    std::vector<std::pair<std::size_t, std::uint32_t>> global_index() const {
        std::vector<std::pair<std::size_t, std::uint32_t>> out;
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::uint32_t b = 0; b < groups[g].candidates.size(); ++b) out.push_back({g, b});
        return out;
    }

    double objective(const std::vector<std::uint64_t>& masks) const {
        double total = 0.0;
        for (const auto& ev : evals) total += ev.weight * ev.satisfaction(masks[ev.group]);
        return total;
    }

    RepresentationSet materialize(const std::vector<std::uint64_t>& masks) const {
        RepresentationSet set;
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::uint32_t b = 0; b < groups[g].candidates.size(); ++b)
                if (masks[g] & (1ULL << b)) set.insert(groups[g].candidates[b]);
        return set;
    }

    std::vector<ClassChainSummary> chain_summaries(const std::vector<std::uint64_t>& masks) const {
        std::vector<ClassChainSummary> out;
        for (const auto& ev : evals) {
            ClassChainSummary s;
            s.class_name = ev.class_name;
            s.window = ev.window;
            s.probability = ev.weight;
            ChainOutcome o = ev.solve(masks[ev.group]);
            s.status = o.status;
            if (o.ok()) {
                s.satisfaction = 1.0 - o.result.distortion_mean;
                s.cost = o.result.cost;
                for (const auto& seg : o.result.chain.segments) {
                    if (s.anchors.empty()) s.anchors.push_back(seg.left);
                    s.anchors.push_back(seg.right);
                }
            }
            out.push_back(std::move(s));
        }
        return out;
    }
};

}  // namespace

double expected_satisfaction(const RepresentationSet& set,
                             const std::vector<UserClass>& population, const VideoMap& videos) {
    double total = 0.0;
    for (const auto& cls : population) {
        auto it = videos.find(cls.video);
        if (it == videos.end()) throw ConfigInvalid("population references unknown video " + cls.video);
        const VideoModel& video = it->second;
        for (const auto& [window, prob] : cls.windows) {
            ChainOutcome out = solve_best_chain(window, set, cls.budget, video, cls.resolution);
            double sat = out.ok() ? 1.0 - out.result.distortion_mean : 0.0;
            total += cls.fraction * prob * sat;
        }
    }
    return total;
}

namespace {

struct Searcher {
    Instance& inst;
    const SolverOptions& options;
    Kbps budget;

    Searcher(Instance& i, const SolverOptions& o, Kbps b) : inst(i), options(o), budget(b) {}

    // Branch order: marginal quality per kbps, best first; greedy head-first
    // dives double as the incumbent heuristic.
    std::vector<std::size_t> order_group;   // per branch position
    std::vector<std::uint32_t> order_bit;
    std::vector<Representation> order_rep;
    std::vector<std::size_t> view_slot;     // distinct (video, view) id per position
    std::vector<int> view_count;            // included reps per view slot
    std::vector<Kbps> view_overhead;
    std::vector<std::vector<std::size_t>> evals_of_group;

    std::vector<std::uint64_t> included;
    std::vector<std::uint64_t> unionmask;
    std::vector<double> sat_by_eval;  // satisfaction under the union masks
    Kbps included_cost = 0;
    // Upper bound on the cost of including every candidate from `pos` on:
    // remaining rates plus the depth overhead of every view slot first seen
    // at or after `pos` (counted whether or not already included).
    std::vector<Kbps> suffix_cost;

    std::uint64_t nodes = 0;
    bool aborted = false;
    bool have_incumbent = false;
    double incumbent = 0;
    std::vector<std::uint64_t> best_masks;
    std::vector<std::pair<std::uint64_t, double>> trace;
    double root_bound = 0;

    double current_bound() const {
        double total = 0.0;
        for (std::size_t i = 0; i < inst.evals.size(); ++i)
            total += inst.evals[i].weight * sat_by_eval[i];
        return total;
    }

    void refresh_group(std::size_t g) {
        for (std::size_t i : evals_of_group[g])
            sat_by_eval[i] = inst.evals[i].satisfaction(unionmask[g]);
    }

    void search(std::size_t pos) {
        if (aborted) return;
        ++nodes;
        if (nodes > options.node_limit) {
            aborted = true;
            return;
        }
        double bound = current_bound();
        if (options.inspector) {
            NodeInfo info;
            info.bound = bound;
            for (std::size_t k = 0; k < order_rep.size(); ++k) {
                std::uint64_t bit = 1ULL << order_bit[k];
                if (included[order_group[k]] & bit)
                    info.included.push_back(order_rep[k]);
                else if (k >= pos && (unionmask[order_group[k]] & bit))
                    info.undecided.push_back(order_rep[k]);
            }
            options.inspector(info);
        }
        if (nodes == 1) root_bound = bound;
        if (have_incumbent && bound <= incumbent) return;

        if (pos == order_rep.size() || included_cost + suffix_cost[pos] <= budget) {
            // Either a leaf, or everything still undecided fits the budget;
            // including it all is optimal for the subtree (satisfaction is
            // monotone in the set) and its objective equals the bound.
            have_incumbent = true;
            incumbent = bound;
            best_masks = unionmask;
            trace.push_back({nodes, incumbent});
            return;
        }

        std::size_t g = order_group[pos];
        std::uint64_t bit = 1ULL << order_bit[pos];

        // include
        Kbps extra = order_rep[pos].rate;
        if (view_count[view_slot[pos]] == 0) extra += view_overhead[view_slot[pos]];
        if (included_cost + extra <= budget) {
            included[g] |= bit;
            included_cost += extra;
            ++view_count[view_slot[pos]];
            search(pos + 1);
            --view_count[view_slot[pos]];
            included_cost -= extra;
            included[g] &= ~bit;
        }

        // exclude; reuse cached chains that never used the dropped candidate
        std::vector<double> saved;
        saved.reserve(evals_of_group[g].size());
        std::uint64_t old_mask = unionmask[g];
        for (std::size_t i : evals_of_group[g]) {
            saved.push_back(sat_by_eval[i]);
            sat_by_eval[i] = inst.evals[i].satisfaction_after_drop(old_mask, bit);
        }
        unionmask[g] &= ~bit;
        search(pos + 1);
        unionmask[g] |= bit;
        std::size_t si = 0;
        for (std::size_t i : evals_of_group[g]) sat_by_eval[i] = saved[si++];
    }
};

}  // namespace

namespace {

// Exact branch-and-bound over one reduced candidate list (typically a single
// video's slice; multi-video calls go through the frontier decomposition).
OptimizationReport solve_reduced(const VideoMap& videos,
                                 const std::vector<Representation>& candidates,
                                 const std::vector<UserClass>& population, Kbps storage_budget,
                                 const SolverOptions& options) {
    auto t0 = std::chrono::steady_clock::now();

    Instance inst(videos, candidates, population, storage_budget);

    Searcher s(inst, options, storage_budget);
    auto glob = inst.global_index();

    // Rank candidates by coding quality per kbps, deterministic ties.
    std::vector<std::size_t> perm(glob.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::vector<double> score(glob.size());
    for (std::size_t i = 0; i < glob.size(); ++i) {
        const Group& g = inst.groups[glob[i].first];
        const Representation& rep = g.candidates[glob[i].second];
        score[i] = coding_quality(videos.at(rep.video), rep.rate) / static_cast<double>(rep.rate);
    }
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

    std::map<std::pair<std::string, std::int64_t>, std::size_t> slot_of;
    for (std::size_t i : perm) {
        const Group& g = inst.groups[glob[i].first];
        const Representation& rep = g.candidates[glob[i].second];
        s.order_group.push_back(glob[i].first);
        s.order_bit.push_back(glob[i].second);
        s.order_rep.push_back(rep);
        auto key = std::make_pair(rep.video, rep.view.ticks);
        auto it = slot_of.find(key);
        if (it == slot_of.end()) {
            it = slot_of.emplace(key, s.view_overhead.size()).first;
            s.view_overhead.push_back(videos.at(rep.video).depth_overhead_kbps);
            s.view_count.push_back(0);
        }
        s.view_slot.push_back(it->second);
    }

    s.suffix_cost.assign(s.order_rep.size() + 1, 0);
    {
        std::set<std::size_t> seen;
        for (std::size_t pos = s.order_rep.size(); pos-- > 0;) {
            Kbps extra = s.order_rep[pos].rate;
            if (seen.insert(s.view_slot[pos]).second) extra += s.view_overhead[s.view_slot[pos]];
            s.suffix_cost[pos] = s.suffix_cost[pos + 1] + extra;
        }
    }

    s.included.assign(inst.groups.size(), 0);
    s.unionmask.assign(inst.groups.size(), 0);
    for (std::size_t g = 0; g < inst.groups.size(); ++g)
        s.unionmask[g] = inst.groups[g].candidates.size() == 64
                             ? ~0ULL
                             : (1ULL << inst.groups[g].candidates.size()) - 1;
    s.evals_of_group.assign(inst.groups.size(), {});
    for (std::size_t i = 0; i < inst.evals.size(); ++i)
        s.evals_of_group[inst.evals[i].group].push_back(i);
    s.sat_by_eval.assign(inst.evals.size(), 0.0);
    for (std::size_t g = 0; g < inst.groups.size(); ++g) s.refresh_group(g);

    s.search(0);

    OptimizationReport report;
    report.nodes = s.nodes;
    report.proved_optimal = !s.aborted;
    report.bound_trace = s.trace;
    std::vector<std::uint64_t> masks =
        s.have_incumbent ? s.best_masks : std::vector<std::uint64_t>(inst.groups.size(), 0);
    // Keep only representations some chosen chain uses; every class's
    // optimum is unchanged on the pruned set, so the objective is intact.
    std::vector<std::uint64_t> pruned(inst.groups.size(), 0);
    for (const auto& ev : inst.evals) pruned[ev.group] |= ev.entry(masks[ev.group]).chain_mask;
    report.chosen = inst.materialize(pruned);
    report.objective = inst.objective(pruned);
    report.storage_cost = storage_cost_kbps(report.chosen, videos);
    report.class_chains = inst.chain_summaries(pruned);
    report.optimality_gap = s.aborted ? std::max(0.0, s.root_bound - report.objective) : 0.0;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// Candidates a chain can never contain are dropped up front: no same-video
// partner fits the pooled storage, no class of the video can afford the pair,
// or nobody watches the video. Anchors strictly outside the cameras
// bracketing every window of their video are dominated by the bracketing
// camera at the same rate whenever anchor distortions stay at or below the
// inpainting level, and are dropped too.
std::vector<Representation> reduce_candidates(const VideoMap& videos, const CandidateLadder& ladder,
                                              const std::vector<UserClass>& population,
                                              Kbps storage_budget) {
    std::map<std::pair<std::string, std::string>, Kbps> min_rate;
    std::map<std::pair<std::string, std::string>, Kbps> max_budget;
    std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, std::int64_t>> hull;
    std::vector<Representation> all = enumerate_candidates(videos, ladder);
    for (const auto& rep : all) {
        auto key = std::make_pair(rep.video, rep.resolution);
        auto it = min_rate.find(key);
        if (it == min_rate.end() || rep.rate < it->second) min_rate[key] = rep.rate;
    }
    for (const auto& cls : population) {
        auto key = std::make_pair(cls.video, cls.resolution);
        auto it = max_budget.find(key);
        if (it == max_budget.end() || cls.budget > it->second) max_budget[key] = cls.budget;
        for (const auto& [w, p] : cls.windows) {
            auto h = hull.find(key);
            if (h == hull.end())
                hull[key] = {w.lo.ticks, w.hi.ticks};
            else
                h->second = {std::min(h->second.first, w.lo.ticks),
                             std::max(h->second.second, w.hi.ticks)};
        }
    }
    std::vector<Representation> candidates;
    for (const auto& rep : all) {
        auto key = std::make_pair(rep.video, rep.resolution);
        auto watched = max_budget.find(key);
        if (watched == max_budget.end()) continue;
        Kbps partner = min_rate.at(key);
        if (rep.rate + partner > storage_budget) continue;
        if (rep.rate + partner > watched->second) continue;
        const VideoModel& video = videos.at(rep.video);
        if (coding_distortion(video, min_rate.at(key)) <= video.d_inpaint) {
            const auto& [lo, hi] = hull.at(key);
            ViewpointIndex bracket_lo = video.first_camera(), bracket_hi = video.last_camera();
            for (ViewpointIndex cam : video.cameras) {
                if (cam.ticks <= lo) bracket_lo = cam;
                if (cam.ticks >= hi) {
                    bracket_hi = cam;
                    break;
                }
            }
            if (rep.view < bracket_lo || rep.view > bracket_hi) continue;
        }
        candidates.push_back(rep);
    }
    return candidates;
}

struct FrontierPoint {
    Kbps storage = 0;
    double value = 0;
    RepresentationSet set;
};

}  // namespace

OptimizationReport optimize_set(const VideoMap& videos, const CandidateLadder& ladder,
                                const std::vector<UserClass>& population, Kbps storage_budget,
                                const SolverOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Representation> candidates =
        reduce_candidates(videos, ladder, population, storage_budget);

    std::vector<std::string> video_ids;
    for (const auto& rep : candidates)
        if (video_ids.empty() || video_ids.back() != rep.video) video_ids.push_back(rep.video);

    if (video_ids.size() <= 1) {
        OptimizationReport report =
            solve_reduced(videos, candidates, population, storage_budget, options);
        report.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }

    // The objective decomposes per video; only storage couples them. Build
    // each video's exact satisfaction-vs-storage frontier by re-solving at
    // the previous optimum's storage minus one, then combine the frontiers
    // with an exact knapsack sweep.
    OptimizationReport report;
    report.proved_optimal = true;
    std::vector<std::vector<FrontierPoint>> frontiers;
    SolverOptions sub_options = options;
    for (const auto& id : video_ids) {
        VideoMap one{{id, videos.at(id)}};
        std::vector<Representation> cand;
        for (const auto& rep : candidates)
            if (rep.video == id) cand.push_back(rep);
        std::vector<UserClass> classes;
        for (const auto& cls : population)
            if (cls.video == id) classes.push_back(cls);

        std::vector<FrontierPoint> frontier;
        Kbps budget = storage_budget;
        while (true) {
            sub_options.node_limit =
                options.node_limit > report.nodes ? options.node_limit - report.nodes : 0;
            OptimizationReport sub = solve_reduced(one, cand, classes, budget, sub_options);
            report.nodes += sub.nodes;
            if (!sub.proved_optimal) report.proved_optimal = false;
            report.optimality_gap += sub.optimality_gap;
            frontier.push_back({sub.storage_cost, sub.objective, sub.chosen});
            if (!sub.proved_optimal || sub.storage_cost == 0) break;
            budget = sub.storage_cost - 1;
        }
        frontier.push_back({0, 0.0, RepresentationSet{}});
        std::reverse(frontier.begin(), frontier.end());  // ascending storage
        frontiers.push_back(std::move(frontier));
    }

    // Sparse knapsack merge over the per-video frontiers, keeping only
    // undominated partial sums.
    std::vector<FrontierPoint> acc{{0, 0.0, RepresentationSet{}}};
    for (const auto& frontier : frontiers) {
        std::vector<FrontierPoint> next;
        for (const auto& a : acc) {
            for (const auto& f : frontier) {
                if (a.storage + f.storage > storage_budget) break;
                FrontierPoint p;
                p.storage = a.storage + f.storage;
                p.value = a.value + f.value;
                p.set = a.set;
                for (const auto& rep : f.set.reps) p.set.insert(rep);
                next.push_back(std::move(p));
            }
        }
        std::sort(next.begin(), next.end(), [](const FrontierPoint& x, const FrontierPoint& y) {
            return x.storage != y.storage ? x.storage < y.storage : x.value > y.value;
        });
        acc.clear();
        double best_value = -1.0;
        for (auto& p : next) {
            if (p.value > best_value) {
                best_value = p.value;
                acc.push_back(std::move(p));
            }
        }
    }
    const FrontierPoint* best = &acc.front();
    for (const auto& p : acc)
        if (p.value > best->value) best = &p;

    report.chosen = best->set;
    report.objective = expected_satisfaction(report.chosen, population, videos);
    report.storage_cost = storage_cost_kbps(report.chosen, videos);
    Instance inst(videos, report.chosen.reps, population, storage_budget);
    std::vector<std::uint64_t> full_masks;
    for (const auto& g : inst.groups)
        full_masks.push_back(g.candidates.size() >= 64 ? ~0ULL
                                                       : (1ULL << g.candidates.size()) - 1);
    report.class_chains = inst.chain_summaries(full_masks);
    report.bound_trace.push_back({report.nodes, report.objective});
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

OptimizationReport brute_force_set_selection(const VideoMap& videos, const CandidateLadder& ladder,
                                             const std::vector<UserClass>& population,
                                             Kbps storage_budget, std::size_t max_candidates) {
    auto t0 = std::chrono::steady_clock::now();
    Instance inst(videos, ladder, population, storage_budget);
    auto glob = inst.global_index();
    const std::size_t n = glob.size();
    if (n > max_candidates)
        throw InstanceTooLarge("set-selection guard: " + std::to_string(n) + " candidates");

    std::vector<Kbps> rate(n);
    std::vector<std::size_t> slot(n);
    std::vector<Kbps> slot_overhead;
    std::map<std::pair<std::string, std::int64_t>, std::size_t> slot_of;
    for (std::size_t i = 0; i < n; ++i) {
        const Representation& rep = inst.groups[glob[i].first].candidates[glob[i].second];
        rate[i] = rep.rate;
        auto key = std::make_pair(rep.video, rep.view.ticks);
        auto it = slot_of.find(key);
        if (it == slot_of.end()) {
            it = slot_of.emplace(key, slot_overhead.size()).first;
            slot_overhead.push_back(videos.at(rep.video).depth_overhead_kbps);
        }
        slot[i] = it->second;
    }

    bool found = false;
    double best_obj = 0;
    Kbps best_storage = 0;
    std::uint64_t best_mask = 0;
    std::vector<int> slot_count(slot_overhead.size(), 0);
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        Kbps storage = 0;
        std::fill(slot_count.begin(), slot_count.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1ULL << i))) continue;
            storage += rate[i];
            if (slot_count[slot[i]]++ == 0) storage += slot_overhead[slot[i]];
        }
        if (storage > storage_budget) continue;
        std::vector<std::uint64_t> masks(inst.groups.size(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ULL << i)) masks[glob[i].first] |= 1ULL << glob[i].second;
        double obj = inst.objective(masks);
        bool better = !found || obj > best_obj ||
                      (obj == best_obj && storage < best_storage) ||
                      (obj == best_obj && storage == best_storage && mask < best_mask);
        if (better) {
            found = true;
            best_obj = obj;
            best_storage = storage;
            best_mask = mask;
        }
    }

    std::vector<std::uint64_t> masks(inst.groups.size(), 0);
    for (std::size_t i = 0; i < n; ++i)
        if (best_mask & (1ULL << i)) masks[glob[i].first] |= 1ULL << glob[i].second;

    OptimizationReport report;
    report.nodes = 1ULL << n;
    report.proved_optimal = true;
    report.chosen = inst.materialize(masks);
    report.objective = inst.objective(masks);
    report.storage_cost = storage_cost_kbps(report.chosen, videos);
    report.class_chains = inst.chain_summaries(masks);
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

OptimizationReport pa_baseline(const VideoMap& videos, const CandidateLadder& ladder,
                               const std::vector<UserClass>& population, Kbps storage_budget,
                               std::int64_t spacing_label) {
    auto t0 = std::chrono::steady_clock::now();

    // Regularly subsampled camera views per video, lateral views always kept.
    std::map<std::string, std::vector<ViewpointIndex>> sampled;
    for (const auto& [id, video] : videos) {
        std::int64_t native = video.camera_labels[1] - video.camera_labels[0];
        if (spacing_label <= 0 || spacing_label % native != 0)
            throw SpacingInvalid("camera spacing " + std::to_string(spacing_label) +
                                 " is not a multiple of the native spacing " +
                                 std::to_string(native));
        std::size_t step = static_cast<std::size_t>(spacing_label / native);
        std::vector<ViewpointIndex> views;
        for (std::size_t i = 0; i < video.cameras.size(); i += step) views.push_back(video.cameras[i]);
        if (views.back() != video.last_camera()) views.push_back(video.last_camera());
        sampled[id] = std::move(views);
    }

    // One common rate per video (or skip the video), exhaustive over combos.
    std::vector<std::string> ids;
    for (const auto& [id, v] : videos) ids.push_back(id);
    std::vector<std::string> resolutions;
    for (const auto& cls : population)
        if (std::find(resolutions.begin(), resolutions.end(), cls.resolution) == resolutions.end())
            resolutions.push_back(cls.resolution);
    if (resolutions.empty()) resolutions = ladder.resolutions;

    const std::size_t options_per_video = ladder.rates.size() + 1;  // +1 = skip
    std::size_t combos = 1;
    for (std::size_t i = 0; i < ids.size(); ++i) combos *= options_per_video;

    bool found = false;
    double best_obj = 0;
    Kbps best_storage = 0;
    RepresentationSet best_set;
    for (std::size_t combo = 0; combo < combos; ++combo) {
        std::size_t c = combo;
        RepresentationSet set;
        for (const auto& id : ids) {
            std::size_t choice = c % options_per_video;
            c /= options_per_video;
            if (choice == ladder.rates.size()) continue;  // skip this video
            const VideoModel& video = videos.at(id);
            for (ViewpointIndex view : sampled[id])
                for (const auto& res : resolutions)
                    set.insert(make_representation(video, view, ladder.rates[choice], res));
        }
        Kbps storage = storage_cost_kbps(set, videos);
        if (storage > storage_budget) continue;
        double obj = expected_satisfaction(set, population, videos);
        bool better = !found || obj > best_obj || (obj == best_obj && storage < best_storage) ||
                      (obj == best_obj && storage == best_storage && set.reps < best_set.reps);
        if (better) {
            found = true;
            best_obj = obj;
            best_storage = storage;
            best_set = std::move(set);
        }
    }

    OptimizationReport report;
    report.proved_optimal = true;
    report.nodes = combos;
    report.chosen = best_set;
    report.objective = expected_satisfaction(best_set, population, videos);
    report.storage_cost = storage_cost_kbps(best_set, videos);
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

Provider provider_from_string(const std::string& name) {
    if (name == "apple") return Provider::apple;
    if (name == "netflix") return Provider::netflix;
    if (name == "youtube") return Provider::youtube;
    throw ConfigInvalid("unknown provider: " + name);
}

std::string provider_name(Provider provider) {
    switch (provider) {
        case Provider::apple: return "apple";
        case Provider::netflix: return "netflix";
        case Provider::youtube: return "youtube";
    }
    return "?";
}

std::vector<Kbps> provider_ladder(Provider provider) {
    switch (provider) {
        case Provider::apple: return {400, 11000, 24000, 39000};
        case Provider::netflix: return {400, 4300, 5800};
        case Provider::youtube: return {400, 4072};
    }
    return {};
}

RepresentationSet recommended_set(Provider provider, const VideoMap& videos,
                                  const std::vector<UserClass>& population) {
    std::vector<Kbps> rates = provider_ladder(provider);
    CandidateLadder ladder;
    ladder.rates = rates;
    for (const auto& cls : population)
        if (std::find(ladder.resolutions.begin(), ladder.resolutions.end(), cls.resolution) ==
            ladder.resolutions.end())
            ladder.resolutions.push_back(cls.resolution);
    if (ladder.resolutions.empty()) ladder.resolutions = {"1080p"};

    RepresentationSet result;
    for (const auto& [id, video] : videos) {
        if (video.cameras.size() > 16)
            throw InstanceTooLarge("recommended-set view search limited to 16 cameras");
        VideoMap one{{id, video}};
        std::vector<UserClass> classes;
        for (const auto& cls : population)
            if (cls.video == id) classes.push_back(cls);

        Instance inst(one, ladder, classes);
        const Group& group = inst.groups.at(0);
        const std::size_t n_views = video.cameras.size();

        bool found = false;
        double best_obj = -1;
        Kbps best_storage = 0;
        std::uint64_t best_view_mask = 0;
        for (std::uint64_t view_mask = 0; view_mask < (1ULL << n_views); ++view_mask) {
            std::uint64_t mask = 0;
            Kbps storage = 0;
            for (std::uint32_t b = 0; b < group.candidates.size(); ++b) {
                const Representation& rep = group.candidates[b];
                std::size_t vi = static_cast<std::size_t>(
                    std::lower_bound(video.cameras.begin(), video.cameras.end(), rep.view) -
                    video.cameras.begin());
                if (view_mask & (1ULL << vi)) {
                    mask |= 1ULL << b;
                    storage += rep.rate;
                }
            }
            for (std::size_t vi = 0; vi < n_views; ++vi)
                if (view_mask & (1ULL << vi)) storage += video.depth_overhead_kbps;
            std::vector<std::uint64_t> masks{mask};
            double obj = inst.objective(masks);
            bool better = !found || obj > best_obj || (obj == best_obj && storage < best_storage) ||
                          (obj == best_obj && storage == best_storage && view_mask < best_view_mask);
            if (better) {
                found = true;
                best_obj = obj;
                best_storage = storage;
                best_view_mask = view_mask;
            }
        }
        for (std::uint32_t b = 0; b < group.candidates.size(); ++b) {
            const Representation& rep = group.candidates[b];
            std::size_t vi = static_cast<std::size_t>(
                std::lower_bound(video.cameras.begin(), video.cameras.end(), rep.view) -
                video.cameras.begin());
            if (best_view_mask & (1ULL << vi)) result.insert(rep);
        }
    }
    return result;
}

JointIndependentReport joint_vs_independent(const VideoMap& videos, const CandidateLadder& ladder,
                                            const std::vector<UserClass>& population,
                                            Kbps per_video_budget, const SolverOptions& options) {
    JointIndependentReport report;
    Kbps pooled = per_video_budget * static_cast<Kbps>(videos.size());
    report.joint = optimize_set(videos, ladder, population, pooled, options);
    report.joint_objective = report.joint.objective;
    for (const auto& [id, video] : videos) {
        VideoMap one{{id, video}};
        std::vector<UserClass> classes;
        for (const auto& cls : population)
            if (cls.video == id) classes.push_back(cls);
        OptimizationReport r = optimize_set(one, ladder, classes, per_video_budget, options);
        report.independent_aggregate += r.objective;
        report.independent.emplace(id, std::move(r));
    }
    return report;
}

}  // namespace mvstream
