#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mvstream/lp_export.hpp"
#include "mvstream/population.hpp"
#include "mvstream/presets.hpp"

using namespace mvstream;

namespace {

struct ParsedLp {
    std::map<std::string, std::size_t> vars_by_prefix;  // alpha/beta/gamma/delta
    std::size_t rows = 0;
    std::size_t equality_rows = 0;
    bool has_end = false;
    std::set<std::string> binaries;
};

ParsedLp parse_lp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    ParsedLp p;
    std::string line, section;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line == "Minimize" || line == "Subject To" || line == "Binaries" || line == "End") {
            section = line;
            if (line == "End") p.has_end = true;
            continue;
        }
        if (section == "Subject To") {
            // a row starts with " name:"; continuation lines are indented sums
            auto colon = line.find(':');
            if (colon != std::string::npos && line.find("  ") != 0) {
                ++p.rows;
                if (line.find(" = ") != std::string::npos) ++p.equality_rows;
            }
        } else if (section == "Binaries") {
            std::istringstream words(line);
            std::string w;
            while (words >> w) {
                p.binaries.insert(w);
                auto underscore = w.find('_');
                if (underscore != std::string::npos)
                    ++p.vars_by_prefix[w.substr(0, underscore)];
            }
        }
    }
    return p;
}

struct AuditInstance {
    VideoMap videos;
    CandidateLadder ladder;
    std::vector<UserClass> population;
    NavigationModel nav{0.5, 2.0, 2};
};

AuditInstance make_instance(int cameras, int rates, int classes, Kbps depth_overhead = 0) {
    AuditInstance a;
    std::vector<std::int64_t> labels;
    for (int i = 0; i < cameras; ++i) labels.push_back(8 * i);
    VideoModel v = make_video_model("v0", labels, a.nav.q_ticks, 1.0, 80.0, 0.0, 0.6, 0.35,
                                    4.0 * (cameras - 1), 40.0, depth_overhead);
    a.videos.emplace("v0", v);
    for (int r = 0; r < rates; ++r) a.ladder.rates.push_back(500 + 700 * r);
    a.ladder.resolutions = {"1080p"};
    const VideoModel& video = a.videos.at("v0");
    for (int i = 0; i < classes; ++i) {
        UserClass cls;
        cls.name = "c" + std::to_string(i);
        cls.video = "v0";
        cls.resolution = "1080p";
        cls.budget = 2000 + 500 * i;
        cls.fraction = 1.0 / classes;
        std::int64_t mid = video.last_camera().ticks / 2;
        cls.windows = {{NavigationWindow{{mid - 1}, {mid + 1}}, 0.5},
                       {NavigationWindow{{0}, {2}}, 0.5}};
        a.population.push_back(cls);
    }
    return a;
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

TEST_CASE("lp export counts match the closed-form tallies") {
    struct Dim {
        int cameras, rates, classes;
        Kbps overhead;
    };
    for (const Dim dim : {Dim{2, 1, 1, 0}, Dim{3, 2, 2, 0}, Dim{4, 2, 3, 50}}) {
        CAPTURE(dim.cameras);
        CAPTURE(dim.rates);
        CAPTURE(dim.classes);
        AuditInstance a = make_instance(dim.cameras, dim.rates, dim.classes, dim.overhead);
        std::string path = "audit_" + std::to_string(dim.cameras) + ".lp";
        LpExportInfo info = export_ilp(a.videos, a.ladder, a.population, 100'000, path);

        // closed forms from the instance dimensions
        const std::uint64_t V = static_cast<std::uint64_t>(dim.cameras) * dim.rates;
        const std::uint64_t M = choose2(static_cast<std::uint64_t>(dim.cameras)) * dim.rates * dim.rates;
        const std::uint64_t J = static_cast<std::uint64_t>(dim.classes) * 2;  // two windows each
        std::uint64_t window_points = 0;
        for (const auto& cls : a.population)
            for (const auto& [w, p] : cls.windows)
                window_points += static_cast<std::uint64_t>(w.lattice_count());

        CHECK(info.alpha_vars == J * M);
        CHECK(info.gamma_vars == J * V);
        CHECK(info.beta_vars == V);
        CHECK(info.delta_vars == (dim.overhead > 0 ? static_cast<std::uint64_t>(dim.cameras) : 0));
        CHECK(info.rows_link_segment_rep == 2 * J * M);
        CHECK(info.rows_link_rep_used == J * V);
        CHECK(info.rows_link_rep_stored == J * V);
        CHECK(info.rows_link_stored_used == V);
        CHECK(info.rows_coverage == window_points);
        CHECK(info.rows_bandwidth == J);
        CHECK(info.rows_storage == 1);
        CHECK(info.rows_depth_link == (dim.overhead > 0 ? V : 0));

        ParsedLp parsed = parse_lp(path);
        CHECK(parsed.has_end);
        CHECK(parsed.rows == info.total_rows());
        CHECK(parsed.equality_rows == info.rows_coverage);
        CHECK(parsed.vars_by_prefix["alpha"] == info.alpha_vars);
        CHECK(parsed.vars_by_prefix["gamma"] == info.gamma_vars);
        CHECK(parsed.vars_by_prefix["beta"] == info.beta_vars);
        CHECK(parsed.vars_by_prefix["delta"] == info.delta_vars);
        CHECK(parsed.binaries.size() == info.total_vars());
        std::remove(path.c_str());
    }
}

TEST_CASE("lp export with zero classes is still a valid file") {
    AuditInstance a = make_instance(2, 1, 1);
    a.population.clear();
    LpExportInfo info = export_ilp(a.videos, a.ladder, a.population, 5000, "audit_empty.lp");
    CHECK(info.alpha_vars == 0);
    CHECK(info.gamma_vars == 0);
    CHECK(info.beta_vars == 2);
    ParsedLp parsed = parse_lp("audit_empty.lp");
    CHECK(parsed.has_end);
    CHECK(parsed.rows == info.total_rows());
    std::remove("audit_empty.lp");
}

TEST_CASE("lp export naming is stable") {
    AuditInstance a = make_instance(2, 1, 1);
    export_ilp(a.videos, a.ladder, a.population, 5000, "audit_names.lp");
    std::ifstream in("audit_names.lp");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    CHECK(text.find("alpha_i0_cv0_s1080p_m0") != std::string::npos);
    CHECK(text.find("gamma_i0_cv0_s1080p_v0r500") != std::string::npos);
    CHECK(text.find("beta_cv0_s1080p_v8r500") != std::string::npos);
    CHECK(text.find("storage:") != std::string::npos);
    std::remove("audit_names.lp");
}
