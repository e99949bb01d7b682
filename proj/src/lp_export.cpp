#include "mvstream/lp_export.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mvstream/client.hpp"
#include "mvstream/segments.hpp"

namespace mvstream {

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

struct Slice {
    std::string video;
    std::string resolution;
    std::string tag;  // c<video>_s<resolution>
    std::vector<Representation> reps;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> segments;  // rep index pairs
};

struct ExportUser {
    std::size_t slice = 0;
    double weight = 0;
    Kbps budget = 0;
    NavigationWindow window;
};

std::string rep_tag(const VideoModel& video, const Representation& rep) {
    return "v" + std::to_string(video.label_of(rep.view)) + "r" + std::to_string(rep.rate);
}

}  // namespace

LpExportInfo export_ilp(const VideoMap& videos, const CandidateLadder& ladder,
                        const std::vector<UserClass>& population, Kbps storage_budget,
                        const std::string& path) {
    std::vector<Representation> all = enumerate_candidates(videos, ladder);
    std::vector<Slice> slices;
    for (const auto& rep : all) {
        if (slices.empty() || slices.back().video != rep.video ||
            slices.back().resolution != rep.resolution) {
            Slice s;
            s.video = rep.video;
            s.resolution = rep.resolution;
            s.tag = "c" + sanitize(rep.video) + "_s" + sanitize(rep.resolution);
            slices.push_back(std::move(s));
        }
        slices.back().reps.push_back(rep);
    }
    for (auto& s : slices) {
        for (std::uint32_t i = 0; i < s.reps.size(); ++i)
            for (std::uint32_t j = 0; j < s.reps.size(); ++j)
                if (s.reps[i].view < s.reps[j].view) s.segments.push_back({i, j});
    }

    auto slice_index = [&](const std::string& video, const std::string& res) {
        for (std::size_t i = 0; i < slices.size(); ++i)
            if (slices[i].video == video && slices[i].resolution == res) return i;
        throw ConfigInvalid("population references unknown catalog slice " + video + "/" + res);
    };

    std::vector<ExportUser> users;
    for (const auto& cls : population) {
        for (const auto& [window, prob] : cls.windows)
            users.push_back({slice_index(cls.video, cls.resolution), cls.fraction * prob,
                             cls.budget, window});
    }

    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "\\ multi-view representation set selection\n";
    out << "\\ objective is the population-weighted mean window distortion of the\n";
    out << "\\ selected segments; optimal satisfaction = 1 - objective value\n";
    out << "\\ variables: alpha_i<user>_<slice>_m<segment>  user picks segment\n";
    out << "\\            gamma_i<user>_<slice>_v<label>r<kbps>  user downloads rep\n";
    out << "\\            beta_<slice>_v<label>r<kbps>  rep stored at server\n";
    out << "\\            delta_c<video>_v<label>  view stored (depth overhead)\n";

    LpExportInfo info;

    auto alpha_name = [&](std::size_t j, const Slice& s, std::size_t m) {
        return "alpha_i" + std::to_string(j) + "_" + s.tag + "_m" + std::to_string(m);
    };
    auto gamma_name = [&](std::size_t j, const Slice& s, std::uint32_t v) {
        return "gamma_i" + std::to_string(j) + "_" + s.tag + "_" +
               rep_tag(videos.at(s.video), s.reps[v]);
    };
    auto beta_name = [&](const Slice& s, std::uint32_t v) {
        return "beta_" + s.tag + "_" + rep_tag(videos.at(s.video), s.reps[v]);
    };

    // Objective: per-user segment distortion contributions normalized by the
    // window's lattice count.
    out << "Minimize\n obj:";
    bool first = true;
    std::size_t terms_on_line = 0;
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        const VideoModel& video = videos.at(s.video);
        SegmentCostTable table(video, s.reps, users[j].window);
        double denom = static_cast<double>(users[j].window.lattice_count());
        for (std::size_t m = 0; m < s.segments.size(); ++m) {
            double contrib = table.contribution(s.segments[m].first, s.segments[m].second);
            double coeff = users[j].weight * contrib / denom;
            if (coeff == 0.0) continue;
            out << (first ? " " : " + ") << num(coeff) << " " << alpha_name(j, s, m);
            first = false;
            if (++terms_on_line % 6 == 0) out << "\n     ";
        }
    }
    if (first) {
        // Degenerate model without users still needs an objective expression.
        if (!slices.empty() && !slices[0].reps.empty())
            out << " 0 " << beta_name(slices[0], 0);
        else
            out << " 0 dummy";
    }
    out << "\nSubject To\n";

    // alpha <= gamma for both reference views of the chosen segment
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        for (std::size_t m = 0; m < s.segments.size(); ++m) {
            for (std::uint32_t v : {s.segments[m].first, s.segments[m].second}) {
                out << " lseg_i" << j << "_m" << m << "_" << rep_tag(videos.at(s.video), s.reps[v])
                    << ": " << alpha_name(j, s, m) << " - " << gamma_name(j, s, v) << " <= 0\n";
                ++info.rows_link_segment_rep;
            }
        }
    }

    // gamma <= sum of the user's segments referencing the rep
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
            out << " luse_i" << j << "_" << rep_tag(videos.at(s.video), s.reps[v]) << ": "
                << gamma_name(j, s, v);
            for (std::size_t m = 0; m < s.segments.size(); ++m)
                if (s.segments[m].first == v || s.segments[m].second == v)
                    out << " - " << alpha_name(j, s, m);
            out << " <= 0\n";
            ++info.rows_link_rep_used;
        }
    }

    // gamma <= beta
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
            out << " lsto_i" << j << "_" << rep_tag(videos.at(s.video), s.reps[v]) << ": "
                << gamma_name(j, s, v) << " - " << beta_name(s, v) << " <= 0\n";
            ++info.rows_link_rep_stored;
        }
    }

    // beta <= sum of gammas (no unused storage)
    for (std::size_t si = 0; si < slices.size(); ++si) {
        const Slice& s = slices[si];
        for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
            out << " lact_" << s.tag << "_" << rep_tag(videos.at(s.video), s.reps[v]) << ": "
                << beta_name(s, v);
            for (std::size_t j = 0; j < users.size(); ++j)
                if (users[j].slice == si) out << " - " << gamma_name(j, s, v);
            out << " <= 0\n";
            ++info.rows_link_stored_used;
        }
    }

    // Exactly one selected segment covers every window viewpoint; the
    // window's right endpoint also counts as covered by a segment whose
    // right anchor sits on it.
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        const NavigationWindow& w = users[j].window;
        for (std::int64_t t = w.lo.ticks; t <= w.hi.ticks; ++t) {
            out << " cover_i" << j << "_u" << t << ":";
            bool any = false;
            for (std::size_t m = 0; m < s.segments.size(); ++m) {
                const Representation& left = s.reps[s.segments[m].first];
                const Representation& right = s.reps[s.segments[m].second];
                bool covers = left.view.ticks <= t && t < right.view.ticks;
                if (t == w.hi.ticks && right.view.ticks == t) covers = true;
                if (!covers) continue;
                out << (any ? " + " : " ") << alpha_name(j, s, m);
                any = true;
            }
            if (!any) out << " 0 dummy";  // uncoverable viewpoint; row is infeasible by design
            out << " = 1\n";
            ++info.rows_coverage;
        }
    }

    // per-user bandwidth
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        out << " bw_i" << j << ":";
        for (std::uint32_t v = 0; v < s.reps.size(); ++v)
            out << (v == 0 ? " " : " + ") << s.reps[v].rate << " " << gamma_name(j, s, v);
        out << " <= " << users[j].budget << "\n";
        ++info.rows_bandwidth;
    }

    // storage, with the per-view depth term when priced
    bool any_overhead = false;
    for (const auto& [id, v] : videos)
        if (v.depth_overhead_kbps > 0) any_overhead = true;
    out << " storage:";
    bool first_term = true;
    for (const auto& s : slices) {
        for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
            out << (first_term ? " " : " + ") << s.reps[v].rate << " " << beta_name(s, v);
            first_term = false;
            if (++terms_on_line % 8 == 0) out << "\n     ";
        }
    }
    if (any_overhead) {
        for (const auto& [id, video] : videos) {
            if (video.depth_overhead_kbps <= 0) continue;
            for (std::int64_t label : video.camera_labels) {
                out << " + " << video.depth_overhead_kbps << " delta_c" << sanitize(id) << "_v"
                    << label;
            }
        }
    }
    if (first_term) out << " 0 dummy";
    out << " <= " << storage_budget << "\n";
    info.rows_storage = 1;

    // beta <= delta for depth-priced videos
    if (any_overhead) {
        for (const auto& s : slices) {
            const VideoModel& video = videos.at(s.video);
            if (video.depth_overhead_kbps <= 0) continue;
            for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
                out << " ldep_" << s.tag << "_" << rep_tag(video, s.reps[v]) << ": "
                    << beta_name(s, v) << " - delta_c" << sanitize(s.video) << "_v"
                    << video.label_of(s.reps[v].view) << " <= 0\n";
                ++info.rows_depth_link;
            }
        }
    }

    // binary declarations
    out << "Binaries\n";
    std::size_t on_line = 0;
    auto emit = [&](const std::string& name) {
        out << " " << name;
        if (++on_line % 6 == 0) out << "\n";
    };
    for (std::size_t j = 0; j < users.size(); ++j) {
        const Slice& s = slices[users[j].slice];
        for (std::size_t m = 0; m < s.segments.size(); ++m) {
            emit(alpha_name(j, s, m));
            ++info.alpha_vars;
        }
        for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
            emit(gamma_name(j, s, v));
            ++info.gamma_vars;
        }
    }
    for (const auto& s : slices) {
        for (std::uint32_t v = 0; v < s.reps.size(); ++v) {
            emit(beta_name(s, v));
            ++info.beta_vars;
        }
    }
    if (any_overhead) {
        for (const auto& [id, video] : videos) {
            if (video.depth_overhead_kbps <= 0) continue;
            for (std::int64_t label : video.camera_labels) {
                emit("delta_c" + sanitize(id) + "_v" + std::to_string(label));
                ++info.delta_vars;
            }
        }
    }
    if (on_line % 6 != 0) out << "\n";
    out << "End\n";
    if (!out) throw IoError("write failed: " + path);
    return info;
}

}  // namespace mvstream
