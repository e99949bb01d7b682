#ifndef MVSTREAM_CLIENT_HPP
#define MVSTREAM_CLIENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/segments.hpp"

namespace mvstream {

// Reachable range [u - rho*T, u + rho*T] in ticks, clamped to the camera
// range. u must lie within the camera range.
NavigationWindow navigation_window(ViewpointIndex u, const NavigationModel& nav,
                                   const VideoModel& video);

struct AdaptationResult {
    SegmentSet chain;            // C1+C2 valid over the window
    double distortion_sum = 0;   // summed over the window's lattice points
    double distortion_mean = 0;  // sum / lattice count
    Kbps cost = 0;
};

enum class ChainStatus { ok, infeasible, unspannable };

struct ChainOutcome {
    ChainStatus status = ChainStatus::infeasible;
    AdaptationResult result;  // meaningful only when status == ok

    bool ok() const { return status == ChainStatus::ok; }
};

// Precomputed per-segment window distortion contributions over a fixed,
// sorted candidate list. contribution(i,j) is the summed distortion of the
// window viewpoints assigned to the segment (candidate i, candidate j) in a
// chain: the half-open ticks intersected with the window, plus the window's
// right endpoint when candidate j's view equals it (the anchor itself is
// decodable) or lies beyond it.
class SegmentCostTable {
public:
    SegmentCostTable(const VideoModel& video, std::vector<Representation> candidates,
                     NavigationWindow w);

    double contribution(std::size_t left, std::size_t right) const;
    const std::vector<Representation>& candidates() const { return candidates_; }
    const NavigationWindow& window() const { return w_; }

private:
    std::vector<Representation> candidates_;
    NavigationWindow w_;
    std::vector<double> table_;  // n x n, row = left candidate
};

// Minimum-distortion C1+C2 chain over the window within the download budget,
// solved by dynamic programming over (anchor representation, remaining
// budget). active lists indices into table.candidates() that are stored.
ChainOutcome solve_best_chain_indexed(const SegmentCostTable& table,
                                      const std::vector<std::uint32_t>& active, Kbps budget);

// Convenience wrappers over the stored set for one (video, resolution).
ChainOutcome solve_best_chain(const NavigationWindow& w, const RepresentationSet& stored,
                              Kbps budget, const VideoModel& video, const std::string& resolution);

// Throwing variant: Infeasible / UnspannableWindow instead of a status.
AdaptationResult best_chain_dp(const NavigationWindow& w, const RepresentationSet& stored,
                               Kbps budget, const VideoModel& video,
                               const std::string& resolution);

// Exhaustive chain enumeration; the oracle for the DP. Ties break by lower
// distortion, then lower cost, then lexicographic anchor sequence.
ChainOutcome solve_best_chain_bruteforce(const NavigationWindow& w,
                                         const RepresentationSet& stored, Kbps budget,
                                         const VideoModel& video, const std::string& resolution,
                                         std::size_t max_reps = 12);

AdaptationResult best_chain_bruteforce(const NavigationWindow& w, const RepresentationSet& stored,
                                       Kbps budget, const VideoModel& video,
                                       const std::string& resolution, std::size_t max_reps = 12);

struct FreePairingResult {
    double distortion_sum = 0;
    double distortion_mean = 0;
    Kbps cost = 0;
};

// Download-set relaxation: enumerate subsets of the stored representations
// within budget and let every window viewpoint pick its best bracketing pair
// from the subset (no chain constraints). Oracle for the optimality-gap
// study.
std::optional<FreePairingResult> solve_free_pairing(const NavigationWindow& w,
                                                    const RepresentationSet& stored, Kbps budget,
                                                    const VideoModel& video,
                                                    const std::string& resolution,
                                                    std::size_t max_reps = 12);

FreePairingResult free_representation_bruteforce(const NavigationWindow& w,
                                                 const RepresentationSet& stored, Kbps budget,
                                                 const VideoModel& video,
                                                 const std::string& resolution,
                                                 std::size_t max_reps = 12);

}  // namespace mvstream

#endif
