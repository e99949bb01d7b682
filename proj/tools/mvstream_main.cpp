#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvstream/commands.hpp"
#include "mvstream/config.hpp"

namespace {

mvstream::RunConfig load(const std::string& config_path, const std::string& out_dir,
                         std::uint64_t seed, bool seed_set, const std::string& budget_sweep,
                         bool baselines, const std::string& scenario, std::uint64_t node_limit) {
    mvstream::RunConfig cfg = config_path.empty() ? mvstream::parse_config(mvstream::default_config_json())
                                                  : mvstream::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    if (!budget_sweep.empty()) {
        cfg.storage_budgets.clear();
        std::size_t pos = 0;
        while (pos < budget_sweep.size()) {
            std::size_t next = budget_sweep.find(',', pos);
            std::string tok = budget_sweep.substr(pos, next == std::string::npos ? next : next - pos);
            cfg.storage_budgets.push_back(
                static_cast<mvstream::Kbps>(std::llround(std::stod(tok) * 1000.0)));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (cfg.storage_budgets.empty())
            throw mvstream::ConfigInvalid("--budget-sweep produced no budgets");
    }
    if (baselines) cfg.baselines = true;
    if (!scenario.empty()) cfg.scenario = scenario;
    if (node_limit != 0) cfg.node_limit = node_limit;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimizer and simulator for interactive multi-view adaptive streaming"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, budget_sweep, scenario, lp_path = "model.lp";
    std::uint64_t seed = 0, node_limit = 0;
    bool seed_set = false, baselines = false, jvi = false;
    int gap_instances = 500;
    std::vector<std::string> set_files;

    app.add_option("--config", config_path, "configuration file (JSON); omit for the built-in example");
    app.add_option("--out", out_dir, "output directory override");
    app.add_option("--seed", seed, "seed override")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--budget-sweep", budget_sweep, "comma-separated per-video budgets in Mbps");
    app.add_flag("--baselines", baselines, "also evaluate PA and provider baselines");
    app.add_option("--scenario", scenario, "population scenario preset override");
    app.add_option("--node-limit", node_limit, "branch-and-bound node limit override");

    auto* optimize = app.add_subcommand("optimize", "select optimal representation sets per budget");
    optimize->fallthrough();
    optimize->add_flag("--joint-vs-independent", jvi, "also compare joint vs per-video optimization");

    auto* simulate = app.add_subcommand("simulate", "run per-user sessions against one or more sets");
    simulate->fallthrough();
    simulate->add_option("--set", set_files, "representation set file(s) from optimize")->required();

    auto* compare = app.add_subcommand("compare", "simulate several sets with shared seeds");
    compare->fallthrough();
    compare->add_option("--set", set_files, "representation set files (two or more)")->required();

    auto* export_ilp = app.add_subcommand("export-ilp", "write the selection problem as an LP file");
    export_ilp->fallthrough();
    export_ilp->add_option("--lp", lp_path, "output LP path");

    auto* gap = app.add_subcommand("gap-study", "randomized chain-constraint optimality-gap study");
    gap->fallthrough();
    gap->add_option("--instances", gap_instances, "number of random instances");

    auto* dump = app.add_subcommand("default-config", "print the built-in example configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dump->parsed()) {
            std::cout << mvstream::default_config_json() << "\n";
            return 0;
        }
        mvstream::RunConfig cfg =
            load(config_path, out_dir, seed, seed_set, budget_sweep, baselines, scenario, node_limit);
        std::vector<std::string> outputs;
        if (optimize->parsed()) outputs = mvstream::cmd_optimize(cfg, jvi);
        if (simulate->parsed()) outputs = mvstream::cmd_simulate(cfg, set_files);
        if (compare->parsed()) outputs = mvstream::cmd_compare(cfg, set_files);
        if (export_ilp->parsed()) outputs = mvstream::cmd_export_ilp(cfg, lp_path);
        if (gap->parsed()) outputs = mvstream::cmd_gap_study(cfg, gap_instances);
        for (const auto& f : outputs) std::cout << f << "\n";
    } catch (const mvstream::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
