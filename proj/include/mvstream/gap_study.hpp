#ifndef MVSTREAM_GAP_STUDY_HPP
#define MVSTREAM_GAP_STUDY_HPP

#include <cstdint>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/population.hpp"

namespace mvstream {

struct GapStudyParams {
    int instances = 500;
    std::uint64_t seed = 1;
    int max_cameras = 3;
    int max_rates = 2;
    int max_classes = 2;
    std::size_t set_guard = 18;
    std::size_t rep_guard = 12;
};

struct GapInstanceResult {
    int id = 0;
    std::uint64_t seed = 0;
    double free_objective = 0;   // best set under free per-viewpoint pairing
    double chain_objective = 0;  // best set under the segment-chain constraints
    double gap = 0;              // free - chain, >= 0
    bool zero_gap = false;
    bool skipped = false;  // instance beyond the brute-force guards
};

struct GapStudyReport {
    std::vector<GapInstanceResult> rows;
    int evaluated = 0;
    int skipped = 0;
    double zero_fraction = 0;
    double max_gap = 0;
};

// Randomized small-instance study: for each instance, enumerate all
// storage-feasible representation subsets and compare the population
// objective when clients pair anchors freely per viewpoint against the
// segment-chain-constrained objective. The free relaxation can never be
// worse; the study reports how often the chain constraints cost nothing.
GapStudyReport run_gap_study(const GapStudyParams& params);

// One random small instance, exposed for randomized tests.
struct SmallInstance {
    VideoMap videos;
    CandidateLadder ladder;
    std::vector<UserClass> population;
    Kbps storage_budget = 0;
};

SmallInstance random_small_instance(std::uint64_t seed, int max_cameras, int max_rates,
                                    int max_classes);

}  // namespace mvstream

#endif
