#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "obforge/obforge.hpp"

namespace fs = std::filesystem;
using namespace obforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitChecks = 3;
constexpr int kExitBudget = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_atomic(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

struct Options {
    std::string input;
    std::vector<std::string> emit;
    int rv_budget = 3;
    std::string handle_side = "standard";
    bool no_checks = false;
    std::string out_dir = ".";
    unsigned threads = std::thread::hardware_concurrency();
};

int run(const Options& o, bool render_only) {
    std::string text;
    try {
        text = read_file(o.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    ParsedInput parsed;
    try {
        parsed = parse(text);
    } catch (const ParseError& e) {
        std::cerr << o.input << ":" << e.line << ": " << e.what() << "\n";
        return kExitParse;
    }

    PipelineOptions popt;
    popt.flip_handle_side = o.handle_side == "flipped";
    CompileResult result;
    RVReport rv;
    SelfCheckReport checks;
    try {
        result = compile_input(parsed, popt);
        if (!render_only) {
            rv = right_veering_certificate(result.ob, o.rv_budget, popt.limits, o.threads);
            if (!o.no_checks) checks = self_check(result.ob, popt.limits);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const LoweringError& e) {
        std::cerr << o.input << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    fs::path stem = fs::path(o.input).stem();
    fs::path outdir(o.out_dir);
    std::set<std::string> targets(o.emit.begin(), o.emit.end());
    if (targets.empty()) targets.insert(render_only ? "svg" : "text");

    try {
        if (targets.count("json"))
            write_atomic(outdir / (stem.string() + ".json"), json_report(result, rv, checks).dump(2) + "\n");
        if (targets.count("svg")) write_atomic(outdir / (stem.string() + ".svg"), svg_report(result));
        if (targets.count("text")) std::cout << text_report(result, rv, checks);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitChecks;
    }

    if (rv.budget_exceeded) {
        std::cerr << "warning: certificate search hit the work ceiling\n";
        return kExitBudget;
    }
    if (!render_only && !o.no_checks && !checks.all_pass) {
        std::cerr << "self-check failures:\n";
        for (const auto& e : checks.entries)
            if (!e.pass) std::cerr << "  " << e.name << ": " << e.detail << "\n";
        return kExitChecks;
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "surgery description file")->required();
    cmd->add_option("--emit", o.emit, "output formats (json, svg, text); repeatable")
        ->check(CLI::IsMember({"json", "svg", "text"}));
    cmd->add_option("--rv-budget", o.rv_budget, "monodromy iterates per probe arc")->check(CLI::PositiveNumber);
    cmd->add_option("--handle-side", o.handle_side, "stabilization handle side convention")
        ->check(CLI::IsMember({"standard", "flipped"}));
    cmd->add_flag("--no-checks", o.no_checks, "skip the self-check gate");
    cmd->add_option("-o,--out-dir", o.out_dir, "directory for emitted files");
    cmd->add_option("--threads", o.threads, "worker threads for the certificate search");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"obforge: open books from rational contact surgery presentations"};
    app.require_subcommand(1);

    Options oc, oa, orr;
    auto* compile = app.add_subcommand("compile", "run the full pipeline and emit artifacts");
    add_common(compile, oc);
    auto* analyze = app.add_subcommand("analyze", "pipeline plus a text analysis to stdout");
    add_common(analyze, oa);
    auto* render = app.add_subcommand("render", "emit the page picture only");
    render->add_option("input", orr.input, "surgery description file")->required();
    render->add_option("-o,--out-dir", orr.out_dir, "directory for emitted files");

    CLI11_PARSE(app, argc, argv);

    if (compile->parsed()) return run(oc, false);
    if (analyze->parsed()) {
        if (oa.emit.empty()) oa.emit.push_back("text");
        return run(oa, false);
    }
    return run(orr, true);
}
