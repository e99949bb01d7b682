#ifndef MVSTREAM_MODEL_HPP
#define MVSTREAM_MODEL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mvstream/common.hpp"

namespace mvstream {

// Viewpoints live on an integer lattice: one camera-spacing unit equals
// q_ticks ticks, so camera i sits at tick i*q_ticks and the virtual
// viewpoints between two cameras are the ticks in between. All view
// arithmetic is integral; distances in view units are ticks / q_ticks.
struct ViewpointIndex {
    std::int64_t ticks = 0;

    auto operator<=>(const ViewpointIndex&) const = default;
};

// Closed interval of displayable viewpoints.
struct NavigationWindow {
    ViewpointIndex lo;
    ViewpointIndex hi;

    auto operator<=>(const NavigationWindow&) const = default;

    std::int64_t lattice_count() const { return hi.ticks - lo.ticks + 1; }
};

// rho is the maximum navigation speed in view units per second; a chunk of
// chunk_seconds bounds the reachable range to +-rho*T around the start view.
struct NavigationModel {
    double rho = 0.5;
    double chunk_seconds = 2.0;
    std::int64_t q_ticks = 4;
};

// Per-content model: camera layout on the lattice, the coding-quality fit
// q(r) = a - b/(r+e) with r in kbps, the synthesis decay xi (per view unit),
// the inpainting distortion, and the focus-of-attention Gaussian (view units).
struct VideoModel {
    std::string id;
    std::vector<ViewpointIndex> cameras;  // strictly increasing, >= 2 entries
    std::vector<std::int64_t> camera_labels;  // original labels, e.g. 0,8,..,72
    std::int64_t q_ticks = 4;
    double fit_a = 1.0;
    double fit_b = 0.0;
    double fit_e = 0.0;
    double xi = 0.0;
    double d_inpaint = 0.0;          // in [0,1]
    double focus_mean = 0.0;         // view units
    double focus_var = 1.0;          // view units squared, > 0
    Kbps depth_overhead_kbps = 0;    // per distinct stored camera view

    ViewpointIndex first_camera() const { return cameras.front(); }
    ViewpointIndex last_camera() const { return cameras.back(); }
    bool is_camera(ViewpointIndex u) const;
    double view_units(ViewpointIndex u) const {
        return static_cast<double>(u.ticks) / static_cast<double>(q_ticks);
    }
    // Label of a camera tick (labels parallel the camera list).
    std::int64_t label_of(ViewpointIndex camera) const;
    ViewpointIndex tick_of_label(std::int64_t label) const;
};

// Builds a VideoModel and validates its invariants. camera_labels must be
// strictly increasing with a common spacing; cameras land on consecutive
// multiples of q_ticks.
VideoModel make_video_model(std::string id, std::vector<std::int64_t> camera_labels,
                            std::int64_t q_ticks, double fit_a, double fit_b, double fit_e,
                            double xi, double d_inpaint, double focus_mean_label,
                            double focus_var_label, Kbps depth_overhead_kbps = 0);

// One encoding of one camera view at a given rate and resolution.
struct Representation {
    std::string video;
    ViewpointIndex view;  // must be a camera of the video
    Kbps rate = 0;
    std::string resolution;

    auto operator<=>(const Representation&) const = default;
};

Representation make_representation(const VideoModel& video, ViewpointIndex view, Kbps rate,
                                   std::string resolution);

// q(r) = a - b/(r+e), clamped to [0,1]; the clamp increments
// quality_clamp_count(). Throws RateOutOfDomain when r+e <= 0.
double coding_quality(const VideoModel& video, Kbps rate);

// 1 - coding_quality.
double coding_distortion(const VideoModel& video, Kbps rate);

// Synthesized distortion of viewpoint u from a left/right anchor pair:
//   d = w_near*D_min + w_far*D_max + w_hole*D_I
// with w_near = exp(-xi*|u-v_min|), w_far = (1-w_near)*exp(-xi*|u-v_max|)
// and w_hole the remainder; v_min is the anchor with the lower coding
// distortion (ties break to the left anchor), distances in view units.
// Requires left.view <= u <= right.view and left.view < right.view.
double synthesis_distortion(const VideoModel& video, ViewpointIndex u, const Representation& left,
                            const Representation& right);

}  // namespace mvstream

#endif
