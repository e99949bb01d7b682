#include "mvstream/presets.hpp"

namespace mvstream {

namespace {

std::vector<std::int64_t> default_labels() {
    std::vector<std::int64_t> labels;
    for (std::int64_t l = 0; l <= 72; l += 8) labels.push_back(l);
    return labels;
}

}  // namespace

VideoModel preset_video(const std::string& name, std::int64_t q_ticks) {
    // (a, b, e) rate fits in kbps; xi per view unit after label rescaling;
    // focus mean at the camera-range midpoint.
    if (name == "Shark")
        return make_video_model("Shark", default_labels(), q_ticks, 1.0, 46.67, -95.40, 0.52, 0.35,
                                36.0, 250.0);
    if (name == "Dancer")
        return make_video_model("Dancer", default_labels(), q_ticks, 0.98, 364.45, 868.08, 0.35,
                                0.35, 36.0, 80.0);
    if (name == "Hall")
        return make_video_model("Hall", default_labels(), q_ticks, 0.98, 83.57, 67.35, 1.32, 0.35,
                                36.0, 3000.0);
    throw ConfigInvalid("unknown video preset: " + name);
}

std::vector<std::string> preset_video_names() { return {"Dancer", "Hall", "Shark"}; }

VideoMap preset_videos(std::int64_t q_ticks) {
    VideoMap videos;
    for (const auto& name : preset_video_names()) videos.emplace(name, preset_video(name, q_ticks));
    return videos;
}

std::vector<ConnectionClass> preset_connections() {
    return {
        {"wifi", 0.4, 4.0, 0.4},
        {"adsl", 0.7, 10.0, 0.3},
        {"ftth", 1.5, 25.0, 0.3},
    };
}

CandidateLadder desk_ladder() {
    CandidateLadder ladder;
    ladder.rates = {400, 800, 1500, 3000, 6000};
    ladder.resolutions = {"1080p"};
    return ladder;
}

}  // namespace mvstream
