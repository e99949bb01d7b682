#include "mvstream/model.hpp"

#include <algorithm>
#include <cmath>

namespace mvstream {

bool VideoModel::is_camera(ViewpointIndex u) const {
    return std::binary_search(cameras.begin(), cameras.end(), u);
}

std::int64_t VideoModel::label_of(ViewpointIndex camera) const {
    auto it = std::lower_bound(cameras.begin(), cameras.end(), camera);
    if (it == cameras.end() || *it != camera)
        throw Error("label_of: tick " + std::to_string(camera.ticks) + " is not a camera");
    return camera_labels[static_cast<std::size_t>(it - cameras.begin())];
}

ViewpointIndex VideoModel::tick_of_label(std::int64_t label) const {
    auto it = std::lower_bound(camera_labels.begin(), camera_labels.end(), label);
    if (it == camera_labels.end() || *it != label)
        throw Error("tick_of_label: " + std::to_string(label) + " is not a camera label");
    return cameras[static_cast<std::size_t>(it - camera_labels.begin())];
}

VideoModel make_video_model(std::string id, std::vector<std::int64_t> camera_labels,
                            std::int64_t q_ticks, double fit_a, double fit_b, double fit_e,
                            double xi, double d_inpaint, double focus_mean_label,
                            double focus_var_label, Kbps depth_overhead_kbps) {
    if (camera_labels.size() < 2) throw ConfigInvalid("video " + id + ": needs >= 2 cameras");
    if (q_ticks < 1) throw ConfigInvalid("q_ticks must be >= 1");
    std::int64_t spacing = camera_labels[1] - camera_labels[0];
    if (spacing <= 0) throw ConfigInvalid("camera labels must be strictly increasing");
    for (std::size_t i = 1; i < camera_labels.size(); ++i) {
        if (camera_labels[i] - camera_labels[i - 1] != spacing)
            throw ConfigInvalid("video " + id + ": camera labels must be evenly spaced");
    }
    if (xi < 0) throw ConfigInvalid("xi must be >= 0");
    if (d_inpaint < 0 || d_inpaint > 1) throw ConfigInvalid("d_inpaint must be in [0,1]");
    if (focus_var_label <= 0) throw ConfigInvalid("focus variance must be > 0");

    VideoModel v;
    v.id = std::move(id);
    v.q_ticks = q_ticks;
    v.camera_labels = std::move(camera_labels);
    v.cameras.reserve(v.camera_labels.size());
    for (std::size_t i = 0; i < v.camera_labels.size(); ++i)
        v.cameras.push_back({static_cast<std::int64_t>(i) * q_ticks});
    v.fit_a = fit_a;
    v.fit_b = fit_b;
    v.fit_e = fit_e;
    v.xi = xi;
    v.d_inpaint = d_inpaint;
    // Focus parameters are given against the label axis; rescale to view
    // units (one camera spacing = one view unit).
    double s = static_cast<double>(spacing);
    v.focus_mean = focus_mean_label / s;
    v.focus_var = focus_var_label / (s * s);
    v.depth_overhead_kbps = depth_overhead_kbps;
    return v;
}

Representation make_representation(const VideoModel& video, ViewpointIndex view, Kbps rate,
                                   std::string resolution) {
    if (!video.is_camera(view))
        throw ConfigInvalid("representation view tick " + std::to_string(view.ticks) +
                            " is not a camera of video " + video.id);
    if (rate <= 0) throw RateOutOfDomain("representation rate must be > 0");
    if (static_cast<double>(rate) + video.fit_e <= 0.0)
        throw RateOutOfDomain("rate " + std::to_string(rate) + " outside the fit domain of " +
                              video.id);
    return Representation{video.id, view, rate, std::move(resolution)};
}

double coding_quality(const VideoModel& video, Kbps rate) {
    double denom = static_cast<double>(rate) + video.fit_e;
    if (denom <= 0.0)
        throw RateOutOfDomain("rate " + std::to_string(rate) + " outside the fit domain of " +
                              video.id);
    double q = video.fit_a - video.fit_b / denom;
    if (q < 0.0 || q > 1.0) {
        quality_clamp_count().fetch_add(1, std::memory_order_relaxed);
        q = std::clamp(q, 0.0, 1.0);
    }
    return q;
}

double coding_distortion(const VideoModel& video, Kbps rate) {
    return 1.0 - coding_quality(video, rate);
}

double synthesis_distortion(const VideoModel& video, ViewpointIndex u, const Representation& left,
                            const Representation& right) {
    if (left.view >= right.view)
        throw ViewOrderViolation("anchor views must satisfy left < right");
    if (u < left.view || u > right.view)
        throw ViewOrderViolation("viewpoint outside the anchor interval");

    double d_left = coding_distortion(video, left.rate);
    double d_right = coding_distortion(video, right.rate);

    double d_min, d_max;
    ViewpointIndex v_min, v_max;
    if (d_left <= d_right) {  // ties break to the left anchor
        d_min = d_left;
        d_max = d_right;
        v_min = left.view;
        v_max = right.view;
    } else {
        d_min = d_right;
        d_max = d_left;
        v_min = right.view;
        v_max = left.view;
    }

    double q = static_cast<double>(video.q_ticks);
    double dist_min = static_cast<double>(std::abs(u.ticks - v_min.ticks)) / q;
    double dist_max = static_cast<double>(std::abs(u.ticks - v_max.ticks)) / q;
    double w_near = std::exp(-video.xi * dist_min);
    double w_far = (1.0 - w_near) * std::exp(-video.xi * dist_max);
    double w_hole = 1.0 - w_near - w_far;
    return w_near * d_min + w_far * d_max + w_hole * video.d_inpaint;
}

}  // namespace mvstream
