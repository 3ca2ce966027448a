#include "fcl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fcl/builtins.hpp"
#include "fcl/eval.hpp"
#include "fcl/parser.hpp"
#include "fcl/strategies.hpp"

namespace fcl {

namespace {

inline void do_not_optimize(const Value& v) {
    const void* p = v.identity();
    asm volatile("" : : "g"(p) : "memory");
}

double now_ns() {
    return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                   std::chrono::steady_clock::now().time_since_epoch())
                                   .count());
}

BenchReport summarize(std::string strategy, std::vector<double> samples, std::int64_t warmup) {
    BenchReport report;
    report.strategy = std::move(strategy);
    report.iterations = static_cast<std::int64_t>(samples.size());
    report.warmup = warmup;

    double sum = 0;
    for (double s : samples) sum += s;
    report.mean_ns = sum / static_cast<double>(samples.size());

    if (samples.size() > 1) {
        double ss = 0;
        for (double s : samples) ss += (s - report.mean_ns) * (s - report.mean_ns);
        double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
        report.stderr_ns = sd / std::sqrt(static_cast<double>(samples.size()));
    }

    std::sort(samples.begin(), samples.end());
    std::size_t n = samples.size();
    report.median_ns = n % 2 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2.0;
    report.min_ns = samples.front();
    return report;
}

} // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Fc: return "fc";
    case Strategy::List: return "list";
    case Strategy::Nested: return "nested";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "fc") return Strategy::Fc;
    if (name == "list") return Strategy::List;
    if (name == "nested") return Strategy::Nested;
    throw FclError(ErrorKind::Domain,
                   "unknown strategy '" + name + "' (expected fc, list or nested)");
}

Value build_strategy(Strategy s, const Pipeline& pipeline, const EnvPtr& env) {
    switch (s) {
    case Strategy::Fc: return compose_pipeline(pipeline, env);
    case Strategy::List: return chain_value(pipeline);
    case Strategy::Nested: return nest(pipeline, env);
    }
    throw FclError(ErrorKind::Domain, "unknown strategy");
}

std::vector<BenchReport> run_bench(const Pipeline& pipeline, const Value& input,
                                   const EnvPtr& env, const std::vector<Strategy>& strategies,
                                   std::int64_t iterations, std::int64_t warmup) {
    if (iterations < 1)
        throw FclError(ErrorKind::Domain, "iterations must be at least 1");
    if (warmup < 0)
        throw FclError(ErrorKind::Domain, "warmup must be non-negative");

    std::vector<BenchReport> reports;
    reports.reserve(strategies.size());
    for (Strategy s : strategies) {
        Value callable = build_strategy(s, pipeline, env); // built exactly once
        Args args = {{std::nullopt, input}};

        for (std::int64_t i = 0; i < warmup; ++i)
            do_not_optimize(fcl::apply(callable, args));

        std::vector<double> samples(static_cast<std::size_t>(iterations));
        for (std::int64_t i = 0; i < iterations; ++i) {
            double t0 = now_ns();
            Value result = fcl::apply(callable, args);
            double t1 = now_ns();
            do_not_optimize(result);
            samples[static_cast<std::size_t>(i)] = t1 - t0;
        }
        reports.push_back(summarize(strategy_name(s), std::move(samples), warmup));
    }
    return reports;
}

std::string render_table(const std::vector<BenchReport>& reports) {
    const std::vector<std::string> headers = {"strategy", "iterations", "warmup",
                                              "mean_ns",  "stderr_ns",  "median_ns", "min_ns"};
    std::vector<std::vector<std::string>> rows;
    for (const BenchReport& r : reports) {
        char buf[64];
        auto fmt = [&buf](double v) {
            std::snprintf(buf, sizeof(buf), "%.1f", v);
            return std::string(buf);
        };
        rows.push_back({r.strategy, std::to_string(r.iterations), std::to_string(r.warmup),
                        fmt(r.mean_ns), fmt(r.stderr_ns), fmt(r.median_ns), fmt(r.min_ns)});
    }

    std::vector<std::size_t> widths(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
        widths[c] = headers[c].size();
        for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
    }

    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << "  ";
            out << std::string(widths[c] - row[c].size(), ' ') << row[c];
        }
        out << '\n';
    };
    emit_row(headers);
    for (const auto& row : rows) emit_row(row);
    return out.str();
}

std::string render_json_lines(const std::vector<BenchReport>& reports) {
    std::string out;
    for (const BenchReport& r : reports) {
        nlohmann::ordered_json j;
        j["strategy"] = r.strategy;
        j["iterations"] = r.iterations;
        j["warmup"] = r.warmup;
        j["mean_ns"] = r.mean_ns;
        j["stderr_ns"] = r.stderr_ns;
        j["median_ns"] = r.median_ns;
        j["min_ns"] = r.min_ns;
        out += j.dump();
        out += '\n';
    }
    return out;
}

PipelineFile load_pipeline_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FclError(ErrorKind::Domain, "cannot open pipeline file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();

    PipelineFile result;
    result.env = Environment::make(base_environment());
    eval(parse(buffer.str()), result.env);

    const Value* stages = result.env->lookup("stages");
    if (!stages || stages->kind() != ValueKind::Pipeline)
        throw FclError(ErrorKind::Domain,
                       "pipeline file must define 'stages' with stage_list(...)");
    const Value* input = result.env->lookup("input");
    if (!input)
        throw FclError(ErrorKind::Domain, "pipeline file must define 'input'");
    result.pipeline = stages->pipeline_ref();
    result.input = *input;
    return result;
}

} // namespace fcl
