#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "mzi/figures.hpp"
#include "mzi/sweep.hpp"
#include "mzi/verify.hpp"
#include "mzi/version.hpp"

namespace {

namespace fs = std::filesystem;

std::string file_tag(std::string label) {
    if (label.empty()) return "sweep";
    for (char& c : label)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
    return label;
}

int run_sweep(const std::string& config_path, const std::string& out_dir, bool force_verify,
              const std::string& variant_override) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config file: " << config_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    mzi::SweepConfig cfg;
    try {
        cfg = mzi::parse_sweep_config(buf.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (force_verify) cfg.verify = true;
    if (variant_override == "literal") cfg.variant = mzi::Variant::Literal;
    if (variant_override == "series") cfg.variant = mzi::Variant::SeriesConsistent;

    mzi::SweepResult result;
    try {
        result = mzi::run_scenario_sweep(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    fs::create_directories(out_dir);
    const std::string tag = file_tag(cfg.label);
    fs::path csv_path = fs::path(out_dir) / (tag + ".csv");
    fs::path manifest_path = fs::path(out_dir) / (tag + "_manifest.json");
    {
        std::ofstream csv(csv_path);
        csv << mzi::to_csv(result);
        std::ofstream man(manifest_path);
        man << mzi::to_manifest_json(result);
        if (!csv || !man) {
            std::cerr << "error: failed writing results under " << out_dir << "\n";
            return 2;
        }
    }

    int bad_rows = 0;
    for (const auto& row : result.rows)
        if (!row.error.empty()) ++bad_rows;
    std::cout << "wrote " << csv_path.string() << " (" << result.rows.size() << " rows";
    if (bad_rows) std::cout << ", " << bad_rows << " with errors";
    std::cout << ") and " << manifest_path.string() << "\n";
    if (cfg.verify)
        std::cout << "max residuals: parity " << result.max_parity_residual << ", qfi "
                  << result.max_qfi_residual << "\n";
    if (!result.ok) {
        std::cerr << "sweep finished with failures\n";
        return 1;
    }
    return 0;
}

int run_figure(const std::string& id, const std::string& out_dir, bool gnuplot) {
    std::vector<std::string> paths;
    try {
        paths = mzi::reproduce_figure(id, out_dir, gnuplot);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\nvalid ids:";
        for (const std::string& known : mzi::figure_ids()) std::cerr << ' ' << known;
        std::cerr << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& p : paths) std::cout << "wrote " << p << "\n";
    return 0;
}

int run_verify(const std::string& suite, const std::string& json_path) {
    mzi::VerifyReport report;
    try {
        report = mzi::verify_consistency(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string json = mzi::report_to_json(report);
    std::cout << json;
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << json;
        if (!out) {
            std::cerr << "error: cannot write " << json_path << "\n";
            return 2;
        }
    }
    return report.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mach-Zehnder parity-detection phase estimation toolkit"};
    app.set_version_flag("--version", std::string(mzi::kVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", variant_override, figure_id, suite = "quick",
                json_path;
    bool force_verify = false, gnuplot = false;

    CLI::App* sweep = app.add_subcommand("sweep", "run a sweep from a key=value config file");
    sweep->add_option("config", config_path, "config file path")->required();
    sweep->add_option("--out", out_dir, "output directory (default .)");
    sweep->add_flag("--verify", force_verify, "run the brute-force simulator alongside");
    sweep->add_option("--variant", variant_override, "closed-form flavor")
        ->check(CLI::IsMember({"literal", "series"}));

    CLI::App* figure = app.add_subcommand("figure", "write the data set behind a known figure");
    figure->add_option("id", figure_id, "figure id, e.g. fig2a")->required();
    figure->add_option("--out", out_dir, "output directory (default .)");
    figure->add_flag("--gnuplot", gnuplot, "also emit a gnuplot script");

    CLI::App* verify = app.add_subcommand("verify", "cross-check closed forms vs the simulator");
    verify->add_option("--suite", suite, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--json", json_path, "also write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    if (sweep->parsed()) return run_sweep(config_path, out_dir, force_verify, variant_override);
    if (figure->parsed()) return run_figure(figure_id, out_dir, gnuplot);
    return run_verify(suite, json_path);
}
