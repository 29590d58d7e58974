#include "dvrqc/cli.hpp"
#include "dvrqc/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int cmd_run(const std::string& config_path, const std::string& methods, const std::string& out_path,
            const std::string& format, bool parallel) {
    dvrqc::RunConfig cfg;
    std::vector<dvrqc::Method> chosen;
    try {
        cfg = dvrqc::load_config(config_path);
        chosen = dvrqc::parse_methods(methods);
    } catch (const dvrqc::ConfigError& e) {
        std::cerr << "config: " << e.what() << '\n';
        return 2;
    }
    dvrqc::OutputFormat fmt = cfg.format;
    if (format == "table") {
        fmt = dvrqc::OutputFormat::table;
    } else if (format == "json") {
        fmt = dvrqc::OutputFormat::json;
    } else if (format == "csv") {
        fmt = dvrqc::OutputFormat::csv;
    }
    const std::string path = !out_path.empty() ? out_path : cfg.output_path.value_or("");

    dvrqc::Report report;
    try {
        report = dvrqc::run(cfg, chosen, {parallel});
    } catch (const std::invalid_argument& e) {
        std::cerr << "setup: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "setup: " << e.what() << '\n';
        return 3;
    }
    const std::string text = dvrqc::format_report(report, fmt);
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "output: cannot write " << path << '\n';
            return 2;
        }
        out << text;
    }
    for (const auto& row : report.rows) {
        if (row.error) {
            std::cerr << *row.error << '\n';
        }
    }
    return report.exit_code;
}

int cmd_selftest() {
    bool ok = true;
    for (const auto& c : dvrqc::selftest()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.detail << ")\n";
        ok = ok && c.passed;
    }
    return ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DVR electronic structure for 1D chains: HF, CASCI, Jordan-Wigner CI and DMRG"};
    app.require_subcommand(1);

    std::string config_path;
    std::string methods = "all";
    std::string out_path;
    std::string format;
    bool parallel = false;
    CLI::App* run = app.add_subcommand("run", "Run methods on a JSON config");
    run->add_option("--config", config_path, "JSON config")->required();
    run->add_option("--methods", methods, "Comma list of hf,casci,jwci,dmrg or all; empty validates only")
        ->expected(0, 1);
    run->add_option("--out", out_path, "Report file (stdout when omitted)");
    run->add_option("--format", format, "table, json or csv (default from the config)")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    run->add_flag("--parallel", parallel, "Run dmrg next to the hf chain");

    app.add_subcommand("selftest", "Small oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (run->parsed()) {
            return cmd_run(config_path, methods, out_path, format, parallel);
        }
        return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
