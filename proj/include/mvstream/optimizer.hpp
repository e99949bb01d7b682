#ifndef MVSTREAM_OPTIMIZER_HPP
#define MVSTREAM_OPTIMIZER_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/client.hpp"
#include "mvstream/population.hpp"

namespace mvstream {

// Population-weighted expected satisfaction of a stored set: for every
// (class, window) weight * (1 - mean window distortion) of the class's best
// chain under its budget; windows without a feasible chain contribute 0.
double expected_satisfaction(const RepresentationSet& set,
                             const std::vector<UserClass>& population, const VideoMap& videos);

struct ClassChainSummary {
    std::string class_name;
    NavigationWindow window;
    double probability = 0;  // fraction * window probability
    ChainStatus status = ChainStatus::infeasible;
    double satisfaction = 0;
    Kbps cost = 0;
    std::vector<Representation> anchors;
};

struct OptimizationReport {
    RepresentationSet chosen;
    double objective = 0;
    Kbps storage_cost = 0;
    std::uint64_t nodes = 0;
    double runtime_seconds = 0;
    bool proved_optimal = true;
    double optimality_gap = 0;  // bound minus incumbent when the node limit hit
    // (node count, incumbent objective) at every incumbent improvement.
    std::vector<std::pair<std::uint64_t, double>> bound_trace;
    std::vector<ClassChainSummary> class_chains;
};

// Search diagnostics hook; invoked once per explored node. The bound is an
// upper bound on every completion of `included` using only `undecided`.
struct NodeInfo {
    std::vector<Representation> included;
    std::vector<Representation> undecided;
    double bound = 0;
};

struct SolverOptions {
    std::uint64_t node_limit = 10'000'000;
    std::function<void(const NodeInfo&)> inspector;
};

// Exact maximization of the expected satisfaction over subsets of the
// candidate catalog under the storage budget (rates plus per-view depth
// overhead). Depth-first branch and bound over per-representation storage
// decisions; each node's bound evaluates the population against everything
// not yet excluded, which is admissible because adding a representation
// never lowers any class's satisfaction.
OptimizationReport optimize_set(const VideoMap& videos, const CandidateLadder& ladder,
                                const std::vector<UserClass>& population, Kbps storage_budget,
                                const SolverOptions& options = {});

// Exhaustive subset enumeration; the oracle for optimize_set. Ties prefer
// smaller storage, then the lexicographically smaller representation list.
OptimizationReport brute_force_set_selection(const VideoMap& videos, const CandidateLadder& ladder,
                                             const std::vector<UserClass>& population,
                                             Kbps storage_budget, std::size_t max_candidates = 18);

// Partial adaptation: camera views fixed to a regular label-spacing
// subsample (lateral cameras always kept), one common rate per video chosen
// by exhaustive search; a video may also be skipped entirely when storage is
// too tight.
OptimizationReport pa_baseline(const VideoMap& videos, const CandidateLadder& ladder,
                               const std::vector<UserClass>& population, Kbps storage_budget,
                               std::int64_t spacing_label);

enum class Provider { apple, netflix, youtube };

Provider provider_from_string(const std::string& name);
std::string provider_name(Provider provider);

// Vendor-recommended 1080p rate ladders (kbps), each augmented with a 400
// kbps floor so poor connections can still fetch an anchor pair.
std::vector<Kbps> provider_ladder(Provider provider);

// The provider ladder applied to every camera view, with the stored view
// subset then optimized per video for the population (satisfaction first,
// storage as tie-break; no storage constraint).
RepresentationSet recommended_set(Provider provider, const VideoMap& videos,
                                  const std::vector<UserClass>& population);

struct JointIndependentReport {
    OptimizationReport joint;  // pooled budget = per-video budget * #videos
    std::map<std::string, OptimizationReport> independent;
    double joint_objective = 0;
    double independent_aggregate = 0;
};

JointIndependentReport joint_vs_independent(const VideoMap& videos, const CandidateLadder& ladder,
                                            const std::vector<UserClass>& population,
                                            Kbps per_video_budget,
                                            const SolverOptions& options = {});

}  // namespace mvstream

#endif
