#include "mvstream/commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mvstream/gap_study.hpp"
#include "mvstream/lp_export.hpp"
#include "mvstream/optimizer.hpp"
#include "mvstream/presets.hpp"

namespace mvstream {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
        if (!out_) throw IoError("cannot write " + path.string());
        out_ << header << "\n";
    }
    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

struct RunContext {
    VideoMap videos;
    PopulationConfig pop_config;
    std::vector<UserClass> population;
    fs::path out_dir;

    explicit RunContext(const RunConfig& config)
        : videos(config.scenario_videos()), pop_config(config.scenario_population()),
          out_dir(config.output_dir) {
        population = build_population(videos, pop_config, config.nav, config.seed);
        fs::create_directories(out_dir);
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text << "\n";
}

void write_set_outputs(const RunContext& ctx, const OptimizationReport& report,
                       const std::string& tag, std::vector<std::string>& outputs) {
    fs::path set_csv = ctx.out_dir / ("set_" + tag + ".csv");
    CsvWriter w(set_csv, "video,view_label,view_tick,rate_kbps,resolution");
    for (const auto& r : report.chosen.reps) {
        const VideoModel& video = ctx.videos.at(r.video);
        w.row({r.video, std::to_string(video.label_of(r.view)), std::to_string(r.view.ticks),
               std::to_string(r.rate), r.resolution});
    }
    outputs.push_back(set_csv.filename().string());

    // Cumulative rate by camera view, one curve per video.
    fs::path cum_csv = ctx.out_dir / ("cumulative_" + tag + ".csv");
    CsvWriter c(cum_csv, "video,view_label,rate_kbps,cumulative_kbps");
    std::string current;
    Kbps acc = 0;
    for (const auto& r : report.chosen.reps) {
        if (r.video != current) {
            current = r.video;
            acc = 0;
        }
        acc += r.rate;
        c.row({r.video, std::to_string(ctx.videos.at(r.video).label_of(r.view)),
               std::to_string(r.rate), std::to_string(acc)});
    }
    outputs.push_back(cum_csv.filename().string());

    fs::path set_json = ctx.out_dir / ("set_" + tag + ".json");
    save_set(report.chosen, ctx.videos, tag, set_json.string());
    outputs.push_back(set_json.filename().string());
}

std::string budget_tag(Kbps budget) {
    std::ostringstream os;
    os << "C" << budget;
    return os.str();
}

SessionParams make_session(const RunContext& ctx, const RunConfig& config, const UserClass& cls,
                           int user, int repetition) {
    SessionParams p;
    p.user_id = "u" + std::to_string(user);
    p.class_name = cls.name;
    p.video = &ctx.videos.at(cls.video);
    p.resolution = cls.resolution;
    p.nav = config.nav;
    p.channel = config.sim.channel;
    p.nav_bias = config.sim.nav_bias;
    p.repetition = repetition;
    if (ctx.pop_config.fixed_window_labels) {
        p.fixed_window = window_from_labels(*p.video, ctx.pop_config.fixed_window_labels->first,
                                            ctx.pop_config.fixed_window_labels->second);
    }
    return p;
}

// Deterministic user-to-class assignment and per-repetition start views; all
// draws depend only on (seed, user[, repetition]) so different sets share
// identical realizations.
std::vector<std::size_t> assign_classes(const std::vector<UserClass>& population, int users,
                                        std::uint64_t seed) {
    std::vector<std::size_t> assignment;
    for (int u = 0; u < users; ++u) {
        std::mt19937_64 rng(mix_seed(seed, 0xa5510000ULL + static_cast<std::uint64_t>(u)));
        double x = uniform01(rng);
        double acc = 0.0;
        std::size_t pick = population.size() - 1;
        for (std::size_t i = 0; i < population.size(); ++i) {
            acc += population[i].fraction;
            if (x < acc) {
                pick = i;
                break;
            }
        }
        assignment.push_back(pick);
    }
    return assignment;
}

ViewpointIndex sample_start_view(const VideoModel& video, std::uint64_t seed, int user, int rep) {
    std::mt19937_64 rng(mix_seed(seed, 0x57a87000ULL + 1000003ULL * static_cast<std::uint64_t>(user) +
                                           static_cast<std::uint64_t>(rep)));
    auto focus = start_view_distribution(video);
    double x = uniform01(rng);
    double acc = 0.0;
    for (const auto& [v, p] : focus) {
        acc += p;
        if (x < acc) return v;
    }
    return focus.back().first;
}

std::vector<SessionTrace> run_all_sessions(const RunContext& ctx, const RunConfig& config,
                                           const RepresentationSet& set) {
    std::vector<std::size_t> assignment =
        assign_classes(ctx.population, config.sim.users, config.seed);
    std::vector<SessionTrace> traces;
    for (int rep = 0; rep < config.sim.repetitions; ++rep) {
        for (int user = 0; user < config.sim.users; ++user) {
            const UserClass& cls = ctx.population[assignment[static_cast<std::size_t>(user)]];
            SessionParams p = make_session(ctx, config, cls, user, rep);
            p.start_view = sample_start_view(*p.video, config.seed, user, rep);
            std::uint64_t session_seed =
                mix_seed(config.seed, 0x5e5510ULL + 7919ULL * static_cast<std::uint64_t>(user) +
                                          static_cast<std::uint64_t>(rep));
            // The slot budget is the chain-solver budget; session cost stays
            // within the experienced channel rate by construction.
            traces.push_back(run_session(p, set, config.sim.slots, session_seed));
        }
    }
    return traces;
}

void write_traces(const RunContext& ctx, const std::vector<SessionTrace>& traces,
                  const std::string& tag, std::vector<std::string>& outputs) {
    fs::path slots_csv = ctx.out_dir / ("slots_" + tag + ".csv");
    CsvWriter w(slots_csv,
                "repetition,user,class,video,slot,channel_kbps,start_view_tick,window_lo_tick,"
                "window_hi_tick,cost_kbps,satisfaction,infeasible,unspannable");
    for (const auto& t : traces) {
        for (const auto& s : t.slots) {
            w.row({std::to_string(t.repetition), t.user_id, t.class_name, t.video,
                   std::to_string(s.slot), std::to_string(s.channel_kbps),
                   std::to_string(s.start_view.ticks), std::to_string(s.window.lo.ticks),
                   std::to_string(s.window.hi.ticks), std::to_string(s.cost_kbps),
                   fmt(s.satisfaction), s.infeasible ? "1" : "0", s.unspannable ? "1" : "0"});
        }
    }
    outputs.push_back(slots_csv.filename().string());

    AggregateStats stats = aggregate(traces);
    fs::path summary_csv = ctx.out_dir / ("summary_" + tag + ".csv");
    CsvWriter s(summary_csv, "scope,id,video,mean_satisfaction,ci95_halfwidth");
    for (const auto& u : stats.per_user) s.row({"user", u.user_id, u.video, fmt(u.mean_satisfaction), ""});
    for (const auto& [video, m] : stats.per_video) s.row({"video", video, video, fmt(m), ""});
    for (std::size_t i = 0; i < stats.per_slot_mean.size(); ++i)
        s.row({"slot", std::to_string(i), "", fmt(stats.per_slot_mean[i]), ""});
    s.row({"population", "all", "", fmt(stats.population_mean), fmt(stats.ci95_halfwidth)});
    outputs.push_back(summary_csv.filename().string());
}

void finish(const RunConfig& config, const std::string& command,
            std::vector<std::string>& outputs) {
    fs::path dir(config.output_dir);
    write_text(dir / "manifest.json", manifest_json(config, command, outputs));
    outputs.push_back("manifest.json");
}

}  // namespace

std::vector<std::string> cmd_optimize(const RunConfig& config, bool joint_vs_independent_report) {
    RunContext ctx(config);
    std::vector<std::string> outputs;

    write_text(ctx.out_dir / "population.json", population_manifest(ctx.population, config.seed));
    outputs.push_back("population.json");

    SolverOptions options;
    options.node_limit = config.node_limit;

    CsvWriter sweep(ctx.out_dir / "sweep.csv",
                    "budget_mbps_per_video,algorithm,objective,storage_kbps,proved_optimal,nodes,"
                    "runtime_s");
    outputs.push_back("sweep.csv");
    const Kbps n_videos = static_cast<Kbps>(ctx.videos.size());
    for (Kbps budget : config.storage_budgets) {
        double budget_mbps = static_cast<double>(budget) / 1000.0;
        OptimizationReport opt =
            optimize_set(ctx.videos, config.ladder, ctx.population, budget * n_videos, options);
        sweep.row({fmt(budget_mbps), "optimal", fmt(opt.objective), std::to_string(opt.storage_cost),
                   opt.proved_optimal ? "1" : "0", std::to_string(opt.nodes),
                   fmt(opt.runtime_seconds)});
        write_set_outputs(ctx, opt, "optimal_" + budget_tag(budget), outputs);

        if (config.baselines) {
            for (std::int64_t spacing : config.pa_spacings) {
                OptimizationReport pa = pa_baseline(ctx.videos, config.ladder, ctx.population,
                                                    budget * n_videos, spacing);
                sweep.row({fmt(budget_mbps), "pa" + std::to_string(spacing), fmt(pa.objective),
                           std::to_string(pa.storage_cost), "1", std::to_string(pa.nodes),
                           fmt(pa.runtime_seconds)});
            }
        }
    }
    if (config.baselines) {
        for (Provider provider : {Provider::apple, Provider::netflix, Provider::youtube}) {
            RepresentationSet rec = recommended_set(provider, ctx.videos, ctx.population);
            double obj = expected_satisfaction(rec, ctx.population, ctx.videos);
            sweep.row({"", provider_name(provider), fmt(obj),
                       std::to_string(storage_cost_kbps(rec, ctx.videos)), "1", "0", "0"});
            OptimizationReport rec_report;
            rec_report.chosen = rec;
            write_set_outputs(ctx, rec_report, provider_name(provider), outputs);
        }
    }

    if (joint_vs_independent_report) {
        CsvWriter jvi(ctx.out_dir / "joint_vs_independent.csv",
                      "budget_mbps_per_video,scope,objective");
        for (Kbps budget : config.storage_budgets) {
            JointIndependentReport r =
                joint_vs_independent(ctx.videos, config.ladder, ctx.population, budget, options);
            double budget_mbps = static_cast<double>(budget) / 1000.0;
            jvi.row({fmt(budget_mbps), "joint", fmt(r.joint_objective)});
            jvi.row({fmt(budget_mbps), "independent", fmt(r.independent_aggregate)});
            for (const auto& [video, rep] : r.independent)
                jvi.row({fmt(budget_mbps), "independent:" + video, fmt(rep.objective)});
        }
        outputs.push_back("joint_vs_independent.csv");
    }

    finish(config, "optimize", outputs);
    return outputs;
}

std::vector<std::string> cmd_simulate(const RunConfig& config,
                                      const std::vector<std::string>& set_files) {
    if (set_files.empty()) throw MissingSetFile("simulate needs at least one --set file");
    RunContext ctx(config);
    std::vector<std::string> outputs;
    for (const auto& path : set_files) {
        auto [name, set] = load_set(ctx.videos, path);
        auto traces = run_all_sessions(ctx, config, set);
        write_traces(ctx, traces, name, outputs);
    }
    finish(config, "simulate", outputs);
    return outputs;
}

std::vector<std::string> cmd_compare(const RunConfig& config,
                                     const std::vector<std::string>& set_files) {
    if (set_files.size() < 2) throw MissingSetFile("compare needs at least two --set files");
    RunContext ctx(config);
    std::vector<std::string> outputs;

    std::vector<std::string> names;
    std::vector<AggregateStats> stats;
    for (const auto& path : set_files) {
        auto [name, set] = load_set(ctx.videos, path);
        auto traces = run_all_sessions(ctx, config, set);
        write_traces(ctx, traces, name, outputs);
        names.push_back(name);
        stats.push_back(aggregate(traces));
    }

    std::string header = "user,video";
    for (const auto& n : names) header += ",mean_" + n;
    CsvWriter cmp(ctx.out_dir / "compare.csv", header);
    for (std::size_t u = 0; u < stats[0].per_user.size(); ++u) {
        std::vector<std::string> row{stats[0].per_user[u].user_id, stats[0].per_user[u].video};
        for (const auto& s : stats) {
            auto it = std::find_if(s.per_user.begin(), s.per_user.end(), [&](const UserSummary& x) {
                return x.user_id == stats[0].per_user[u].user_id;
            });
            row.push_back(fmt(it->mean_satisfaction));
        }
        cmp.row(row);
    }
    std::vector<std::string> mean_row{"population", "all"};
    for (const auto& s : stats) mean_row.push_back(fmt(s.population_mean));
    cmp.row(mean_row);
    outputs.push_back("compare.csv");

    // Paired per-repetition differences against the first set.
    CsvWriter diff(ctx.out_dir / "compare_diff.csv",
                   "set,mean_diff_vs_first,ci95_halfwidth,significant_at_95");
    for (std::size_t k = 1; k < stats.size(); ++k) {
        const auto& a = stats[k].per_repetition_mean;
        const auto& b = stats[0].per_repetition_mean;
        std::size_t n = std::min(a.size(), b.size());
        double mean = 0;
        for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
        mean /= static_cast<double>(n);
        double var = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = a[i] - b[i] - mean;
            var += d * d;
        }
        var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
        double half = 1.96 * std::sqrt(var / static_cast<double>(n));
        diff.row({names[k], fmt(mean), fmt(half), std::abs(mean) > half ? "1" : "0"});
    }
    outputs.push_back("compare_diff.csv");

    finish(config, "compare", outputs);
    return outputs;
}

std::vector<std::string> cmd_export_ilp(const RunConfig& config, const std::string& lp_path) {
    RunContext ctx(config);
    std::vector<std::string> outputs;
    Kbps total = 0;
    for (Kbps b : config.storage_budgets) total = std::max(total, b);
    total *= static_cast<Kbps>(ctx.videos.size());
    LpExportInfo info =
        export_ilp(ctx.videos, config.ladder, ctx.population, total, lp_path);
    log_info("exported " + std::to_string(info.total_vars()) + " binaries / " +
             std::to_string(info.total_rows()) + " rows to " + lp_path);
    outputs.push_back(lp_path);
    finish(config, "export-ilp", outputs);
    return outputs;
}

std::vector<std::string> cmd_gap_study(const RunConfig& config, int instances) {
    RunContext ctx(config);
    std::vector<std::string> outputs;

    GapStudyParams params;
    params.instances = instances;
    params.seed = config.seed;
    params.set_guard = config.set_guard;
    params.rep_guard = config.rep_guard;
    GapStudyReport report = run_gap_study(params);

    CsvWriter rows(ctx.out_dir / "gap.csv",
                   "instance,seed,free_objective,chain_objective,gap,zero_gap,skipped");
    for (const auto& r : report.rows)
        rows.row({std::to_string(r.id), std::to_string(r.seed), fmt(r.free_objective),
                  fmt(r.chain_objective), fmt(r.gap), r.zero_gap ? "1" : "0",
                  r.skipped ? "1" : "0"});
    outputs.push_back("gap.csv");

    CsvWriter summary(ctx.out_dir / "gap_summary.csv", "instances,evaluated,skipped,zero_fraction,max_gap");
    summary.row({std::to_string(report.rows.size()), std::to_string(report.evaluated),
                 std::to_string(report.skipped), fmt(report.zero_fraction), fmt(report.max_gap)});
    outputs.push_back("gap_summary.csv");

    finish(config, "gap-study", outputs);
    return outputs;
}

}  // namespace mvstream
