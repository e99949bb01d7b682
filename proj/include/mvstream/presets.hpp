#ifndef MVSTREAM_PRESETS_HPP
#define MVSTREAM_PRESETS_HPP

#include <string>
#include <vector>

#include "mvstream/catalog.hpp"
#include "mvstream/population.hpp"

namespace mvstream {

// Shipped per-content models: "Shark", "Dancer", "Hall". Coding fits are for
// 1080p HEVC encodes; synthesis decay and inpainting level come from the same
// measurement campaign. Cameras are labeled 0,8,...,72; the focus of
// attention is centered with per-content variance (label units).
VideoModel preset_video(const std::string& name, std::int64_t q_ticks);

std::vector<std::string> preset_video_names();

VideoMap preset_videos(std::int64_t q_ticks);

// Wi-Fi / ADSL-fast / FTTH connection mix.
std::vector<ConnectionClass> preset_connections();

// Compact rate ladder for desk-scale studies (kbps).
CandidateLadder desk_ladder();

}  // namespace mvstream

#endif
