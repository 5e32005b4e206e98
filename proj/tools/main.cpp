#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pdmsusy/cli/config.hpp"
#include "pdmsusy/cli/runner.hpp"
#include "pdmsusy/error.hpp"

namespace {

using namespace pdmsusy;
using nlohmann::json;

struct Options {
    std::string config_path;
    std::vector<std::string> tolerances;
    std::string report_path;
    bool quiet = false;
    int refinements = 2;
};

cli::RunConfig load(const Options& opt) {
    cli::RunConfig cfg = cli::load_config(opt.config_path);
    for (const auto& t : opt.tolerances) cli::apply_tolerance_override(cfg, t);
    if (!opt.report_path.empty()) cfg.report_path = opt.report_path;
    return cfg;
}

void write_report(const json& report, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write report to '" + path + "'");
    out << report.dump(2) << '\n';
}

void print_summary(const json& report, std::ostream& os) {
    if (report.contains("checks")) {
        for (const auto& c : report["checks"]) {
            os << c["status"].get<std::string>() << "  " << c["name"].get<std::string>();
            if (c.contains("value")) os << "  value=" << c["value"].dump();
            if (c.contains("tolerance")) os << "  tol=" << c["tolerance"].dump();
            if (c.contains("reason")) os << "  (" << c["reason"].get<std::string>() << ")";
            os << '\n';
        }
    }
    if (report.contains("examples")) {
        for (const auto& e : report["examples"]) {
            os << (e["pass"].get<bool>() ? "pass" : "fail") << "  " << e["name"].get<std::string>();
            if (e.contains("residual")) os << "  residual=" << e["residual"].dump();
            os << '\n';
        }
        os << "max identity residual: " << report["max_identity_residual"].dump() << '\n';
    }
    if (report.contains("spectrum")) {
        const auto& s = report["spectrum"];
        os << "eigenvalues: " << s["count"].dump() << ", conjugate closure " << s["conjugate_closure"].dump() << '\n';
        const auto& ev = s["eigenvalues"];
        for (std::size_t k = 0; k < std::min<std::size_t>(ev.size(), 10); ++k) {
            os << "  " << ev[k]["re"].dump() << " " << ev[k]["im"].dump() << "i\n";
        }
    }
}

int finish(const cli::RunResult& result, const std::string& report_path, const Options& opt) {
    write_report(result.report, report_path);
    if (!opt.quiet) {
        if (report_path.empty()) {
            std::cout << result.report.dump(2) << '\n';
        } else {
            print_summary(result.report, std::cout);
        }
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification of CPT-conserved position-dependent-mass SUSY Hamiltonians"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", opt.tolerances, "Override a tolerance, name=value (repeatable)");
        sub->add_option("--report", opt.report_path, "Write the JSON report to this path");
        sub->add_flag("--quiet", opt.quiet, "Suppress console output");
    };

    auto* check = app.add_subcommand("check", "Run the checks listed in a config");
    check->add_option("config", opt.config_path, "Config file")->required();
    add_common(check);

    auto* spectrum = app.add_subcommand("spectrum", "Discrete spectrum of the Hamiltonian");
    spectrum->add_option("config", opt.config_path, "Config file")->required();
    add_common(spectrum);

    auto* curves = app.add_subcommand("curves", "Write plot-ready CSV curves");
    curves->add_option("config", opt.config_path, "Config file")->required();
    add_common(curves);

    auto* examples = app.add_subcommand("paper-examples", "Reproduce the built-in examples");
    add_common(examples);

    auto* convergence = app.add_subcommand("convergence", "Grid-refinement study of the constraint residuals");
    convergence->add_option("config", opt.config_path, "Config file")->required();
    convergence->add_option("--refinements", opt.refinements, "Number of grid halvings")->capture_default_str();
    add_common(convergence);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitConfigError;
    }

    try {
        if (*examples) {
            return finish(cli::paper_examples(), opt.report_path, opt);
        }
        cli::RunConfig cfg = load(opt);
        if (*check) return finish(cli::run(cfg), cfg.report_path, opt);
        if (*spectrum) return finish(cli::run_spectrum(cfg), cfg.report_path, opt);
        if (*convergence) return finish(cli::run_convergence(cfg, opt.refinements), cfg.report_path, opt);
        if (*curves) {
            const std::string path = cfg.curves_path.empty() ? "curves.csv" : cfg.curves_path;
            cli::emit_curves(cfg, path);
            if (!opt.quiet) std::cout << "wrote " << path << '\n';
            return cli::kExitPass;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return cli::kExitConfigError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return cli::kExitNumericalError;
    }
    return cli::kExitConfigError;
}
