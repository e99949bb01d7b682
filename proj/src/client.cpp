#include "mvstream/client.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace mvstream {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();


// A chain is a strictly-increasing-view sequence of stored representations;
// consecutive anchors are shared as-is. A C1 chain that switches rates at a
// shared view is dominated: storing only the higher rate on both sides costs
// less and never increases any viewpoint's distortion, so this space loses
// no optima.
AdaptationResult chain_from_indices(const SegmentCostTable& table,
                                    const std::vector<std::uint32_t>& chain, double dist_sum) {
    AdaptationResult res;
    std::vector<MvNavigationSegment> segs;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        segs.push_back(MvNavigationSegment{table.candidates()[chain[k]],
                                           table.candidates()[chain[k + 1]]});
    res.chain = make_segment_set(std::move(segs));
    res.cost = res.chain.download_cost;
    res.distortion_sum = dist_sum;
    res.distortion_mean = dist_sum / static_cast<double>(table.window().lattice_count());
    return res;
}

}  // namespace

NavigationWindow navigation_window(ViewpointIndex u, const NavigationModel& nav,
                                   const VideoModel& video) {
    if (u < video.first_camera() || u > video.last_camera())
        throw Error("start view outside the camera range");
    std::int64_t delta =
        std::llround(nav.rho * nav.chunk_seconds * static_cast<double>(video.q_ticks));
    NavigationWindow w;
    w.lo = {std::max(video.first_camera().ticks, u.ticks - delta)};
    w.hi = {std::min(video.last_camera().ticks, u.ticks + delta)};
    return w;
}

SegmentCostTable::SegmentCostTable(const VideoModel& video, std::vector<Representation> candidates,
                                   NavigationWindow w)
    : candidates_(std::move(candidates)), w_(w) {
    std::sort(candidates_.begin(), candidates_.end());
    const std::size_t n = candidates_.size();
    table_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (candidates_[i].view >= candidates_[j].view) continue;
            std::int64_t lower = std::max(candidates_[i].view.ticks, w.lo.ticks);
            std::int64_t upper = candidates_[j].view.ticks >= w.hi.ticks
                                     ? w.hi.ticks
                                     : candidates_[j].view.ticks - 1;
            double sum = 0.0;
            for (std::int64_t t = lower; t <= upper; ++t)
                sum += synthesis_distortion(video, ViewpointIndex{t}, candidates_[i],
                                            candidates_[j]);
            table_[i * n + j] = sum;
        }
    }
}

double SegmentCostTable::contribution(std::size_t left, std::size_t right) const {
    return table_[left * candidates_.size() + right];
}

namespace {

struct DpEntry {
    double dist = kInf;
    Kbps cost = 0;        // rates of the suffix anchors (excluding the state's own)
    std::int32_t next = -1;
    bool feasible = false;
};

struct DpContext {
    const SegmentCostTable& table;
    const std::vector<std::uint32_t>& active;  // candidate indices, sorted
    std::int64_t hi_tick;
    std::unordered_map<std::uint64_t, DpEntry> memo;

    const Representation& rep(std::size_t pos) const {
        return table.candidates()[active[pos]];
    }

    // Minimum suffix distortion given the anchor at `pos` is downloaded and
    // `budget` remains for further anchors.
    DpEntry solve(std::size_t pos, Kbps budget) {
        std::uint64_t key = (static_cast<std::uint64_t>(pos) << 44) ^ static_cast<std::uint64_t>(budget);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        DpEntry best;
        for (std::size_t j = pos + 1; j < active.size(); ++j) {
            const Representation& cand = rep(j);
            if (cand.view <= rep(pos).view) continue;  // equal-view siblings
            if (cand.rate > budget) continue;
            double contrib = table.contribution(active[pos], active[j]);
            double dist;
            Kbps cost;
            if (cand.view.ticks >= hi_tick) {
                dist = contrib;
                cost = cand.rate;
            } else {
                DpEntry sub = solve(j, budget - cand.rate);
                if (!sub.feasible) continue;
                dist = contrib + sub.dist;
                cost = cand.rate + sub.cost;
            }
            if (!best.feasible || dist < best.dist ||
                (dist == best.dist && cost < best.cost)) {
                best = {dist, cost, static_cast<std::int32_t>(j), true};
            }
        }
        memo.emplace(key, best);
        return best;
    }
};

}  // namespace

ChainOutcome solve_best_chain_indexed(const SegmentCostTable& table,
                                      const std::vector<std::uint32_t>& active, Kbps budget) {
    ChainOutcome out;
    const NavigationWindow& w = table.window();
    if (active.size() < 2) {
        out.status = ChainStatus::unspannable;
        return out;
    }
    ViewpointIndex min_view = table.candidates()[active.front()].view;
    ViewpointIndex max_view = table.candidates()[active.back()].view;
    if (min_view > w.lo || max_view < w.hi || min_view == max_view) {
        out.status = ChainStatus::unspannable;
        return out;
    }

    DpContext ctx{table, active, w.hi.ticks, {}};
    double best_dist = kInf;
    Kbps best_cost = 0;
    std::size_t best_start = 0;
    bool found = false;
    for (std::size_t s = 0; s < active.size(); ++s) {
        const Representation& start = ctx.rep(s);
        if (start.view > w.lo) break;
        if (start.rate > budget) continue;
        DpEntry e = ctx.solve(s, budget - start.rate);
        if (!e.feasible) continue;
        Kbps total = start.rate + e.cost;
        if (!found || e.dist < best_dist || (e.dist == best_dist && total < best_cost)) {
            found = true;
            best_dist = e.dist;
            best_cost = total;
            best_start = s;
        }
    }
    if (!found) {
        out.status = ChainStatus::infeasible;
        return out;
    }

    // Walk the argmin pointers to materialize the chain. The start anchor
    // never terminates it, even when the window is a single viewpoint on it.
    std::vector<std::uint32_t> chain;
    std::size_t pos = best_start;
    Kbps remaining = budget - ctx.rep(best_start).rate;
    chain.push_back(active[pos]);
    bool first_hop = true;
    while (first_hop || ctx.rep(pos).view.ticks < w.hi.ticks) {
        first_hop = false;
        DpEntry e = ctx.solve(pos, remaining);
        std::size_t next = static_cast<std::size_t>(e.next);
        remaining -= ctx.rep(next).rate;
        chain.push_back(active[next]);
        pos = next;
    }
    out.status = ChainStatus::ok;
    out.result = chain_from_indices(table, chain, best_dist);
    return out;
}

ChainOutcome solve_best_chain(const NavigationWindow& w, const RepresentationSet& stored,
                              Kbps budget, const VideoModel& video,
                              const std::string& resolution) {
    SegmentCostTable table(video, stored.select(video.id, resolution), w);
    std::vector<std::uint32_t> active(table.candidates().size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = static_cast<std::uint32_t>(i);
    return solve_best_chain_indexed(table, active, budget);
}

namespace {

AdaptationResult unwrap(ChainOutcome outcome) {
    switch (outcome.status) {
        case ChainStatus::ok: return std::move(outcome.result);
        case ChainStatus::infeasible: throw Infeasible("no chain fits the budget");
        case ChainStatus::unspannable: throw UnspannableWindow("stored views cannot bracket the window");
    }
    throw Error("unreachable");
}

struct BruteState {
    const SegmentCostTable& table;
    std::int64_t hi_tick;
    bool found = false;

    BruteState(const SegmentCostTable& t, std::int64_t hi) : table(t), hi_tick(hi) {}

    double best_dist = kInf;
    Kbps best_cost = 0;
    std::vector<std::uint32_t> best_chain;
    std::vector<std::uint32_t> current;

    // Chain distortion folded tail-first so the expression tree matches the
    // DP's recursion exactly.
    double tail_fold() const {
        double total = 0.0;
        for (std::size_t k = current.size() - 1; k-- > 0;)
            total = table.contribution(current[k], current[k + 1]) + total;
        return total;
    }

    void consider() {
        double dist = tail_fold();
        Kbps cost = 0;
        for (std::uint32_t idx : current) cost += table.candidates()[idx].rate;
        if (!found || dist < best_dist || (dist == best_dist && cost < best_cost) ||
            (dist == best_dist && cost == best_cost && current < best_chain)) {
            found = true;
            best_dist = dist;
            best_cost = cost;
            best_chain = current;
        }
    }

    void extend(std::size_t n, Kbps remaining) {
        std::uint32_t last = current.back();
        for (std::uint32_t j = 0; j < n; ++j) {
            const Representation& cand = table.candidates()[j];
            if (cand.view <= table.candidates()[last].view) continue;
            if (cand.rate > remaining) continue;
            current.push_back(j);
            if (cand.view.ticks >= hi_tick)
                consider();
            else
                extend(n, remaining - cand.rate);
            current.pop_back();
        }
    }
};

}  // namespace

AdaptationResult best_chain_dp(const NavigationWindow& w, const RepresentationSet& stored,
                               Kbps budget, const VideoModel& video,
                               const std::string& resolution) {
    return unwrap(solve_best_chain(w, stored, budget, video, resolution));
}

ChainOutcome solve_best_chain_bruteforce(const NavigationWindow& w,
                                         const RepresentationSet& stored, Kbps budget,
                                         const VideoModel& video, const std::string& resolution,
                                         std::size_t max_reps) {
    std::vector<Representation> reps = stored.select(video.id, resolution);
    if (reps.size() > max_reps)
        throw InstanceTooLarge("brute-force guard: " + std::to_string(reps.size()) +
                               " candidate representations");
    ChainOutcome out;
    SegmentCostTable table(video, std::move(reps), w);
    const auto& cands = table.candidates();
    if (cands.size() < 2 || cands.front().view > w.lo || cands.back().view < w.hi ||
        cands.front().view == cands.back().view) {
        out.status = ChainStatus::unspannable;
        return out;
    }

    BruteState bs(table, w.hi.ticks);
    for (std::uint32_t s = 0; s < cands.size(); ++s) {
        if (cands[s].view > w.lo) break;
        if (cands[s].rate > budget) continue;
        bs.current.assign(1, s);
        bs.extend(cands.size(), budget - cands[s].rate);
    }
    if (!bs.found) {
        out.status = ChainStatus::infeasible;
        return out;
    }
    out.status = ChainStatus::ok;
    out.result = chain_from_indices(table, bs.best_chain, bs.best_dist);
    return out;
}

AdaptationResult best_chain_bruteforce(const NavigationWindow& w, const RepresentationSet& stored,
                                       Kbps budget, const VideoModel& video,
                                       const std::string& resolution, std::size_t max_reps) {
    return unwrap(solve_best_chain_bruteforce(w, stored, budget, video, resolution, max_reps));
}

std::optional<FreePairingResult> solve_free_pairing(const NavigationWindow& w,
                                                    const RepresentationSet& stored, Kbps budget,
                                                    const VideoModel& video,
                                                    const std::string& resolution,
                                                    std::size_t max_reps) {
    std::vector<Representation> reps = stored.select(video.id, resolution);
    const std::size_t n = reps.size();
    if (n > max_reps)
        throw InstanceTooLarge("free-pairing guard: " + std::to_string(n) +
                               " candidate representations");

    const std::int64_t width = w.lattice_count();
    // Per-pair distortion of every window viewpoint; pairs are proper
    // (left view < right view) and bracket u as v_L <= u <= v_R.
    struct Pair {
        std::uint32_t a, b;
        std::vector<double> d;  // indexed by window offset, +inf outside the bracket
    };
    std::vector<Pair> pairs;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (reps[i].view >= reps[j].view) continue;
            Pair p{i, j, std::vector<double>(static_cast<std::size_t>(width), kInf)};
            for (std::int64_t t = std::max(reps[i].view.ticks, w.lo.ticks);
                 t <= std::min(reps[j].view.ticks, w.hi.ticks); ++t)
                p.d[static_cast<std::size_t>(t - w.lo.ticks)] =
                    synthesis_distortion(video, ViewpointIndex{t}, reps[i], reps[j]);
            pairs.push_back(std::move(p));
        }
    }

    bool found = false;
    double best_sum = kInf;
    Kbps best_cost = 0;
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        Kbps cost = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask & (1ULL << i)) cost += reps[i].rate;
        if (cost > budget) continue;
        double sum = 0.0;
        bool covered = true;
        for (std::int64_t off = 0; off < width && covered; ++off) {
            double d = kInf;
            for (const Pair& p : pairs) {
                if ((mask & (1ULL << p.a)) && (mask & (1ULL << p.b)))
                    d = std::min(d, p.d[static_cast<std::size_t>(off)]);
            }
            if (d == kInf)
                covered = false;
            else
                sum += d;
        }
        if (!covered) continue;
        if (!found || sum < best_sum || (sum == best_sum && cost < best_cost) ||
            (sum == best_sum && cost == best_cost && mask < best_mask)) {
            found = true;
            best_sum = sum;
            best_cost = cost;
            best_mask = mask;
        }
    }
    if (!found) return std::nullopt;
    FreePairingResult res;
    res.distortion_sum = best_sum;
    res.distortion_mean = best_sum / static_cast<double>(width);
    res.cost = best_cost;
    return res;
}

FreePairingResult free_representation_bruteforce(const NavigationWindow& w,
                                                 const RepresentationSet& stored, Kbps budget,
                                                 const VideoModel& video,
                                                 const std::string& resolution,
                                                 std::size_t max_reps) {
    auto res = solve_free_pairing(w, stored, budget, video, resolution, max_reps);
    if (!res) throw Infeasible("no representation subset covers the window within budget");
    return *res;
}

}  // namespace mvstream
