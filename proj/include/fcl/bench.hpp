#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcl/env.hpp"
#include "fcl/value.hpp"

namespace fcl {

/// Per-strategy timing statistics for a pipeline applied `iterations` times.
struct BenchReport {
    std::string strategy;
    std::int64_t iterations = 0;
    std::int64_t warmup = 0;
    double mean_ns = 0;
    double stderr_ns = 0;
    double median_ns = 0;
    double min_ns = 0;
};

enum class Strategy { Fc, List, Nested };

const char* strategy_name(Strategy s);

/// Parses "fc" / "list" / "nested"; DomainError otherwise.
Strategy parse_strategy(const std::string& name);

/// Builds the strategy's callable from the pipeline (composition for fc,
/// wrapped function list for list, nested body for nested).
Value build_strategy(Strategy s, const Pipeline& pipeline, const EnvPtr& env);

/// For each strategy: build the callable once, run `warmup` unmeasured
/// applications, then time `iterations` applications individually on the
/// monotonic clock. Construction cost is excluded from the samples.
std::vector<BenchReport> run_bench(const Pipeline& pipeline, const Value& input,
                                   const EnvPtr& env, const std::vector<Strategy>& strategies,
                                   std::int64_t iterations, std::int64_t warmup);

/// Aligned human-readable table of the reports.
std::string render_table(const std::vector<BenchReport>& reports);

/// One JSON object per line per strategy, fields exactly as in BenchReport.
std::string render_json_lines(const std::vector<BenchReport>& reports);

/// Result of evaluating a pipeline declaration file: the `stages` pipeline,
/// the `input` value, and the environment the file was evaluated in.
struct PipelineFile {
    Pipeline pipeline;
    Value input;
    EnvPtr env;
};

/// Parses and evaluates an `.fcl` file that defines `stages` (via
/// stage_list) and `input`.
PipelineFile load_pipeline_file(const std::string& path);

} // namespace fcl
