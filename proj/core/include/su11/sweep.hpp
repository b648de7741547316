#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "su11/detection.hpp"
#include "su11/qfi.hpp"
#include "su11/states.hpp"

namespace su11::sweep {

// How a Barut-Girardello state is parametrized in configuration files:
// either |xi| directly, or through the hyperbolic angle as |xi| = tanh(v/2)
// (the convention the sensitivity figures use).
enum class BgcsParametrization { DirectXi, XiEqualsTanhHalfV };

// Half-open uniform grid [start + epsilon, stop), count points. The epsilon
// offset keeps exact singular endpoints (theta = 0, pi) off the grid.
struct ThetaGrid {
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    double epsilon = 1e-6;

    std::vector<double> points() const;
    void validate() const;
};

struct Tolerances {
    double qfi_rel = 1e-8;          // closed form vs oracle, QFIs
    double sensitivity_rel = 1e-5;  // closed form vs finite-difference oracle
    double qcrb_slack = 1e-9;       // emitted Delta theta >= QCRB - slack
    specfun::SeriesTolerance series;
};

struct SweepConfig {
    std::vector<StateSpec> states;  // one (curves) or two (ratio)
    std::vector<detection::Scheme> schemes = {
        detection::Scheme::IntensityDifference, detection::Scheme::SingleMode,
        detection::Scheme::HomodyneB, detection::Scheme::HomodyneC};
    BgcsParametrization bgcs_parametrization = BgcsParametrization::XiEqualsTanhHalfV;
    double t1 = 1.0 / std::numbers::sqrt2;      // dif/sing splitters
    double t2 = 1.0 / std::numbers::sqrt2;
    double hom_t1 = 1.0;                         // homodyne splitters
    double hom_t2 = 0.0;
    ThetaGrid theta;
    int alpha_sq_count = 101;                    // qfi sweep grid over |alpha|^2
    bool oracle = false;
    std::optional<int> cutoff_override;
    Tolerances tolerances;
    std::string out_csv;
    std::string out_svg;

    static SweepConfig defaults();
    // Throws std::invalid_argument with a dotted field path on bad input.
    static SweepConfig from_json_text(const std::string& text);
    void validate() const;
};

// Column-oriented sweep output; empty cells mark points where a quantity is
// divergent or degenerate, and the row status records which.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> cells;  // per row
    std::vector<std::string> status;                        // per row
    bool has_status = true;

    int column_index(const std::string& name) const;  // -1 when absent
};

Table run_qfi_sweep(const SweepConfig& config);
Table run_sensitivity_curve(const SweepConfig& config);
Table run_ratio_sweep(const SweepConfig& config);

struct OracleCheckItem {
    std::string quantity;
    double max_rel_dev = 0.0;
    double tolerance = 0.0;
    int points = 0;
    int skipped = 0;
    bool pass = true;
};

struct OracleReport {
    std::vector<OracleCheckItem> items;
    bool pass = true;

    std::string text() const;
    std::string json() const;
};

OracleReport run_oracle_check(const SweepConfig& config);

// CSV: UTF-8, comma-separated, '\n' line endings, mandatory header,
// numbers with 12 significant digits, empty cell for absent values.
void write_csv(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);
Table read_csv(std::istream& in);
Table read_csv_text(const std::string& text);

struct PlotSpec {
    std::string x;
    std::vector<std::string> y;
    bool log_y = false;
    int width = 960;
    int height = 600;
};

// Deterministic standalone SVG: one polyline per y column, no timestamps,
// no external resources. Throws on missing columns or an empty table.
std::string render_plot(const Table& table, const PlotSpec& plot);

}  // namespace su11::sweep
