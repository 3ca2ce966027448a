#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fcl/bench.hpp"
#include "fcl/builtins.hpp"
#include "fcl/deparse.hpp"
#include "fcl/eval.hpp"
#include "fcl/parser.hpp"
#include "fcl/print.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLanguageError = 1;
constexpr int kExitUsageError = 2;

void report_error(const fcl::FclError& e) {
    std::cerr << "error: " << e.what() << std::endl;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

// Assignments evaluate but are not echoed, as in R.
bool should_print(const fcl::ExprPtr& program) {
    const fcl::BlockExpr* block = program->get<fcl::BlockExpr>();
    if (!block || block->exprs.empty()) return false;
    return !block->exprs.back()->is<fcl::AssignExpr>();
}

int run_source(const std::string& source) {
    try {
        fcl::ExprPtr program = fcl::parse(source);
        fcl::EnvPtr env = fcl::Environment::make(fcl::base_environment());
        fcl::Value result = fcl::eval(program, env);
        if (should_print(program) && !result.is_null())
            std::cout << fcl::format_value(result) << std::endl;
        return kExitOk;
    } catch (const fcl::FclError& e) {
        report_error(e);
        return kExitLanguageError;
    }
}

int cmd_run(const std::string& path) {
    std::string source;
    if (!read_file(path, source)) {
        std::cerr << "error: cannot open file '" << path << "'" << std::endl;
        return kExitUsageError;
    }
    return run_source(source);
}

int cmd_ast(const std::string& expr) {
    try {
        std::cout << fcl::ast_dump(fcl::parse(expr));
        return kExitOk;
    } catch (const fcl::FclError& e) {
        report_error(e);
        return kExitLanguageError;
    }
}

int cmd_deparse(const std::string& expr) {
    try {
        std::cout << fcl::deparse(fcl::parse(expr)) << std::endl;
        return kExitOk;
    } catch (const fcl::FclError& e) {
        report_error(e);
        return kExitLanguageError;
    }
}

void repl_env_dump(const fcl::EnvPtr& env, const std::string& name) {
    const fcl::Value* found = env->lookup(name);
    if (!found) {
        std::cout << "error: object '" << name << "' not found" << std::endl;
        return;
    }
    if (!found->is_function() || !found->function_ref().closure()) {
        std::cout << "error: '" << name << "' is not a composed function" << std::endl;
        return;
    }
    const fcl::Closure* closure = found->function_ref().closure();
    if (!closure->env || !closure->env->fc_generated || closure->env->bindings.empty()) {
        std::cout << "<no internal bindings>" << std::endl;
        return;
    }
    std::vector<std::string> names;
    for (const auto& [key, value] : closure->env->bindings) names.push_back(key);
    std::sort(names.begin(), names.end());
    for (const std::string& key : names)
        std::cout << key << ": " << fcl::format_value(closure->env->bindings.at(key))
                  << std::endl;
}

int cmd_repl() {
    fcl::EnvPtr env = fcl::Environment::make(fcl::base_environment());
    std::string line;
    while (true) {
        std::cout << "> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line.empty()) continue;
        if (line == ":quit" || line == ":q") break;
        try {
            if (line.rfind(":ast ", 0) == 0) {
                std::cout << fcl::ast_dump(fcl::parse(line.substr(5)));
                continue;
            }
            if (line.rfind(":env ", 0) == 0) {
                std::string name = line.substr(5);
                name.erase(0, name.find_first_not_of(" \t"));
                name.erase(name.find_last_not_of(" \t") + 1);
                repl_env_dump(env, name);
                continue;
            }
            if (!line.empty() && line[0] == ':') {
                std::cout << "unknown command '" << line
                          << "' (commands: :ast <expr>, :env <fn>, :quit)" << std::endl;
                continue;
            }
            fcl::ExprPtr program = fcl::parse(line);
            fcl::Value result = fcl::eval(program, env);
            if (should_print(program) && !result.is_null())
                std::cout << fcl::format_value(result) << std::endl;
        } catch (const fcl::FclError& e) {
            std::cout << "error: " << e.what() << std::endl;
        }
    }
    return kExitOk;
}

int cmd_bench(const std::string& path, std::int64_t iters, std::int64_t warmup,
              const std::string& strategies_csv, bool json) {
    std::vector<fcl::Strategy> strategies;
    try {
        std::stringstream ss(strategies_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) strategies.push_back(fcl::parse_strategy(item));
        if (strategies.empty())
            throw fcl::FclError(fcl::ErrorKind::Domain, "no strategies selected");
    } catch (const fcl::FclError& e) {
        report_error(e);
        return kExitUsageError;
    }

    try {
        fcl::PipelineFile file = fcl::load_pipeline_file(path);
        std::vector<fcl::BenchReport> reports =
            fcl::run_bench(file.pipeline, file.input, file.env, strategies, iters, warmup);
        if (json)
            std::cout << fcl::render_json_lines(reports);
        else
            std::cout << fcl::render_table(reports);
        return kExitOk;
    } catch (const fcl::FclError& e) {
        report_error(e);
        return kExitLanguageError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fcl - a small expression language built around fc() composition"};
    app.require_subcommand(1);

    std::string run_path;
    CLI::App* run = app.add_subcommand("run", "run a script file");
    run->add_option("file", run_path, "script to run")->required();

    std::string eval_expr;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
    eval_cmd->add_option("-e,--expr", eval_expr, "expression to evaluate")->required();

    CLI::App* repl = app.add_subcommand("repl", "interactive session");

    std::string ast_expr;
    CLI::App* ast = app.add_subcommand("ast", "print the syntax tree of an expression");
    ast->add_option("-e,--expr", ast_expr, "expression to parse")->required();

    std::string deparse_expr;
    CLI::App* deparse = app.add_subcommand("deparse", "parse and render canonical source");
    deparse->add_option("-e,--expr", deparse_expr, "expression to parse")->required();

    std::string bench_path;
    std::int64_t iters = 10000;
    std::int64_t warmup = 100;
    std::string strategies = "fc,list,nested";
    bool json = false;
    CLI::App* bench = app.add_subcommand("bench", "time a pipeline under each strategy");
    bench->add_option("file", bench_path, "pipeline declaration file")->required();
    bench->add_option("--iters", iters, "measured iterations (default 10000)");
    bench->add_option("--warmup", warmup, "unmeasured warmup applications (default 100)");
    bench->add_option("--strategies", strategies, "comma-separated subset of fc,list,nested");
    bench->add_flag("--json", json, "emit one JSON object per strategy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    if (run->parsed()) return cmd_run(run_path);
    if (eval_cmd->parsed()) return run_source(eval_expr);
    if (repl->parsed()) return cmd_repl();
    if (ast->parsed()) return cmd_ast(ast_expr);
    if (deparse->parsed()) return cmd_deparse(deparse_expr);
    if (bench->parsed()) return cmd_bench(bench_path, iters, warmup, strategies, json);
    return kExitUsageError;
}
