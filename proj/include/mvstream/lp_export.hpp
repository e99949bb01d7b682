#ifndef MVSTREAM_LP_EXPORT_HPP
#define MVSTREAM_LP_EXPORT_HPP

#include <cstdint>
#include <string>

#include "mvstream/catalog.hpp"
#include "mvstream/population.hpp"

namespace mvstream {

// Variable and row counts of an exported model, used by the count audit.
struct LpExportInfo {
    std::uint64_t alpha_vars = 0;  // user picks segment:      alpha_i<j>_c<..>_s<..>_m<k>
    std::uint64_t gamma_vars = 0;  // user downloads rep:      gamma_i<j>_c<..>_s<..>_v<lbl>r<rate>
    std::uint64_t beta_vars = 0;   // rep stored at server:    beta_c<..>_s<..>_v<lbl>r<rate>
    std::uint64_t delta_vars = 0;  // view stored (depth row): delta_c<..>_v<lbl>
    std::uint64_t rows_link_segment_rep = 0;  // alpha <= gamma, two per (user, segment)
    std::uint64_t rows_link_rep_used = 0;     // gamma <= sum alpha, per (user, rep)
    std::uint64_t rows_link_rep_stored = 0;   // gamma <= beta, per (user, rep)
    std::uint64_t rows_link_stored_used = 0;  // beta <= sum gamma, per rep
    std::uint64_t rows_coverage = 0;          // partition of window viewpoints, per (user, u)
    std::uint64_t rows_bandwidth = 0;         // per user
    std::uint64_t rows_storage = 0;           // 1
    std::uint64_t rows_depth_link = 0;        // beta <= delta, per rep of depth-priced videos

    std::uint64_t total_rows() const {
        return rows_link_segment_rep + rows_link_rep_used + rows_link_rep_stored +
               rows_link_stored_used + rows_coverage + rows_bandwidth + rows_storage +
               rows_depth_link;
    }
    std::uint64_t total_vars() const {
        return alpha_vars + gamma_vars + beta_vars + delta_vars;
    }
};

// Writes the representation-set selection problem as a CPLEX-style LP text
// file. Users are the expanded (class, window) pairs; the objective
// minimizes the weighted per-window mean distortion of the selected
// segments, so the optimal satisfaction equals 1 minus the LP optimum.
// Every window must be coverable within its budget for the file to be
// feasible (the in-process optimizer instead scores such windows as zero
// satisfaction).
LpExportInfo export_ilp(const VideoMap& videos, const CandidateLadder& ladder,
                        const std::vector<UserClass>& population, Kbps storage_budget,
                        const std::string& path);

}  // namespace mvstream

#endif
