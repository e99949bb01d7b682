#ifndef MVSTREAM_COMMANDS_HPP
#define MVSTREAM_COMMANDS_HPP

#include <string>
#include <vector>

#include "mvstream/config.hpp"

namespace mvstream {

// Orchestration behind the CLI subcommands. Each writes CSV outputs plus a
// run manifest into config.output_dir and returns the written file names.

std::vector<std::string> cmd_optimize(const RunConfig& config, bool joint_vs_independent_report = false);

std::vector<std::string> cmd_simulate(const RunConfig& config,
                                      const std::vector<std::string>& set_files);

std::vector<std::string> cmd_compare(const RunConfig& config,
                                     const std::vector<std::string>& set_files);

std::vector<std::string> cmd_export_ilp(const RunConfig& config, const std::string& lp_path);

std::vector<std::string> cmd_gap_study(const RunConfig& config, int instances);

}  // namespace mvstream

#endif
