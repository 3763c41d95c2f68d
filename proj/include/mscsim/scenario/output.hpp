#pragma once

// Line-delimited JSON records. Every record carries the schema tag, run id,
// scenario hash, seed and the full canonical config, so any single line is
// enough to reproduce its run.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscsim/scenario/runner.hpp"

namespace mscsim::scenario {

inline constexpr std::string_view kRecordSchema = "mscsim.metrics/1";

std::vector<std::string> render_run(const Scenario& s, const RunResult& r);

/// Human-readable digest of a run for the terminal.
std::string summary_table(const RunResult& r);

/// Writes to "<path>.tmp" and renames over path, so readers never see a
/// partial file. Throws std::runtime_error on I/O failure.
void write_lines_atomic(const std::filesystem::path& path, std::span<const std::string> lines);

/// MSC_SIM_OUT_DIR if set, else the current directory.
std::filesystem::path output_dir();

}  // namespace mscsim::scenario
