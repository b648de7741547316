// su11-mzi: parameter sweeps, oracle cross-checks and SVG plots for
// Mach-Zehnder phase estimation with SU(1,1) coherent inputs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "su11/sweep.hpp"

namespace {

using su11::StateSpec;
using namespace su11::sweep;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    bool oracle = false;
    int cutoff = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON sweep configuration");
    cmd->add_option("--out", opts.out_path, "output path (overrides the config)");
    cmd->add_flag("--oracle", opts.oracle, "also evaluate the Fock-space oracle");
    cmd->add_option("--cutoff", opts.cutoff, "Fock cutoff override")->check(CLI::PositiveNumber);
}

SweepConfig load_config(const CommonOpts& opts, bool ratio_defaults) {
    SweepConfig config;
    if (!opts.config_path.empty()) {
        config = SweepConfig::from_json_text(slurp(opts.config_path));
    } else {
        config = SweepConfig::defaults();
        if (ratio_defaults)
            config.states.push_back(StateSpec::barut_girardello(1.0, std::tanh(0.5)));
    }
    if (opts.oracle) config.oracle = true;
    if (opts.cutoff > 0) config.cutoff_override = opts.cutoff;
    if (!opts.out_path.empty()) config.out_csv = opts.out_path;
    if (config.out_csv.empty()) config.out_csv = "sweep.csv";
    return config;
}

void emit(const SweepConfig& config, const Table& table, const PlotSpec& plot) {
    write_file(config.out_csv, to_csv(table));
    std::cout << "wrote " << config.out_csv << " (" << table.cells.size() << " rows)\n";
    if (!config.out_svg.empty()) {
        write_file(config.out_svg, render_plot(table, plot));
        std::cout << "wrote " << config.out_svg << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mach-Zehnder phase-estimation sweeps for SU(1,1) coherent inputs"};
    app.require_subcommand(1);

    CommonOpts qfi_opts, curve_opts, ratio_opts, oracle_opts;
    auto* qfi_cmd =
        app.add_subcommand("qfi-sweep", "QFIs and bounds versus the BS1 transmission");
    add_common(qfi_cmd, qfi_opts);
    auto* curve_cmd =
        app.add_subcommand("sensitivity-curve", "detection-scheme sensitivities versus theta");
    add_common(curve_cmd, curve_opts);
    auto* ratio_cmd =
        app.add_subcommand("ratio-sweep", "Perelomov / Barut-Girardello performance ratio");
    add_common(ratio_cmd, ratio_opts);
    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "closed forms versus the truncated-Fock oracle");
    add_common(oracle_cmd, oracle_opts);

    std::string plot_csv, plot_x = "theta", plot_y, plot_out = "plot.svg";
    bool plot_log_y = false;
    auto* plot_cmd = app.add_subcommand("plot", "render a sweep CSV as a standalone SVG");
    plot_cmd->add_option("csv", plot_csv, "input CSV")->required();
    plot_cmd->add_option("--x", plot_x, "x column name");
    plot_cmd->add_option("--y", plot_y, "comma-separated y column names (default: all)");
    plot_cmd->add_flag("--log-y", plot_log_y, "logarithmic y axis");
    plot_cmd->add_option("--out", plot_out, "output SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (qfi_cmd->parsed()) {
            const SweepConfig config = load_config(qfi_opts, false);
            emit(config, run_qfi_sweep(config),
                 {"alpha_sq", {"h_a", "h_b", "h_c"}, false});
        } else if (curve_cmd->parsed()) {
            const SweepConfig config = load_config(curve_opts, false);
            emit(config, run_sensitivity_curve(config),
                 {"theta",
                  {"dtheta_dif", "dtheta_sing", "dtheta_hom_b", "dtheta_hom_c", "qcrb_a", "qcrb_b",
                   "qcrb_c"},
                  true});
        } else if (ratio_cmd->parsed()) {
            const SweepConfig config = load_config(ratio_opts, true);
            emit(config, run_ratio_sweep(config),
                 {"theta", {"r_dif", "r_sing", "r_hom_b", "r_hom_c"}, false});
        } else if (oracle_cmd->parsed()) {
            const SweepConfig config = load_config(oracle_opts, true);
            const OracleReport report = run_oracle_check(config);
            std::cout << report.text();
            if (!oracle_opts.out_path.empty()) write_file(oracle_opts.out_path, report.json());
            if (!report.pass) return 2;
        } else if (plot_cmd->parsed()) {
            const Table table = read_csv_text(slurp(plot_csv));
            PlotSpec spec;
            spec.x = plot_x;
            spec.log_y = plot_log_y;
            if (plot_y.empty()) {
                for (const auto& c : table.columns)
                    if (c != plot_x) spec.y.push_back(c);
            } else {
                std::stringstream ss(plot_y);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) spec.y.push_back(item);
            }
            write_file(plot_out, render_plot(table, spec));
            std::cout << "wrote " << plot_out << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
