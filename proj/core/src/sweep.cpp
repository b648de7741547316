#include "su11/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "su11/errors.hpp"
#include "su11/fock_oracle.hpp"

namespace su11::sweep {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::optional<double> positive_bound(double h) {
    if (h > 0.0) return 1.0 / std::sqrt(h);
    return std::nullopt;
}

StateSpec parse_state(const json& j, BgcsParametrization mode, const std::string& path) {
    if (!j.is_object()) throw std::invalid_argument(path + ": expected an object");
    const std::string kind = j.value("kind", "");
    try {
        if (kind == "vacuum") return StateSpec::vacuum();
        if (kind == "perelomov")
            return StateSpec::perelomov(j.at("a").get<double>(), j.at("v").get<double>(),
                                        j.value("phi", 0.0));
        if (kind == "barut_girardello") {
            const double a = j.at("a").get<double>();
            const double phase = j.value("xi_phase", 0.0);
            if (j.contains("xi")) return StateSpec::barut_girardello(a, j.at("xi").get<double>(), phase);
            if (j.contains("v")) {
                if (mode != BgcsParametrization::XiEqualsTanhHalfV)
                    throw std::invalid_argument(
                        path + ".v: requires bgcs_parametrization = xi_equals_tanh_half_v");
                return StateSpec::barut_girardello(a, std::tanh(0.5 * j.at("v").get<double>()),
                                                   phase);
            }
            throw std::invalid_argument(path + ": barut_girardello needs 'xi' or 'v'");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    throw std::invalid_argument(path + ".kind: expected vacuum | perelomov | barut_girardello");
}

struct SchemeColumns {
    detection::Scheme scheme;
    std::string column;
    std::string qcrb_column;
    std::string oracle_column;
};

const std::vector<SchemeColumns>& scheme_catalog() {
    static const std::vector<SchemeColumns> cols = {
        {detection::Scheme::IntensityDifference, "dtheta_dif", "qcrb_a", "oracle_dif"},
        {detection::Scheme::SingleMode, "dtheta_sing", "qcrb_a", "oracle_sing"},
        {detection::Scheme::HomodyneB, "dtheta_hom_b", "qcrb_b", "oracle_hom_b"},
        {detection::Scheme::HomodyneC, "dtheta_hom_c", "qcrb_c", "oracle_hom_c"},
    };
    return cols;
}

// Catalog entries for the configured scheme set, in canonical order.
std::vector<SchemeColumns> scheme_columns(const SweepConfig& config) {
    std::vector<SchemeColumns> out;
    for (const auto& sc : scheme_catalog())
        if (std::find(config.schemes.begin(), config.schemes.end(), sc.scheme) !=
            config.schemes.end())
            out.push_back(sc);
    return out;
}

detection::Scheme parse_scheme(const std::string& name) {
    if (name == "intensity_difference") return detection::Scheme::IntensityDifference;
    if (name == "single_mode") return detection::Scheme::SingleMode;
    if (name == "homodyne_b") return detection::Scheme::HomodyneB;
    if (name == "homodyne_c") return detection::Scheme::HomodyneC;
    throw std::invalid_argument(
        "schemes: expected intensity_difference | single_mode | homodyne_b | homodyne_c");
}

// Closed-form sensitivity for one scheme at the scheme's splitter pair.
detection::SensitivityPoint closed_point(const SweepConfig& c, const StateSpec& s,
                                         detection::Scheme scheme, double theta) {
    switch (scheme) {
        case detection::Scheme::IntensityDifference:
            return detection::sensitivity_dif(s, c.t1, c.t2, theta);
        case detection::Scheme::SingleMode:
            return detection::sensitivity_sing(s, c.t1, c.t2, theta);
        case detection::Scheme::HomodyneB:
            return detection::sensitivity_hom(s, c.hom_t1, c.hom_t2, theta,
                                              qfi::Scenario::Asymmetric, std::nullopt,
                                              c.tolerances.series);
        case detection::Scheme::HomodyneC:
            return detection::sensitivity_hom(s, c.hom_t1, c.hom_t2, theta,
                                              qfi::Scenario::Symmetric, std::nullopt,
                                              c.tolerances.series);
    }
    throw std::logic_error("unreachable");
}

double oracle_point(const SweepConfig& c, const StateSpec& s, detection::Scheme scheme,
                    double theta) {
    using oracle::Observable;
    using oracle::ObservableKind;
    switch (scheme) {
        case detection::Scheme::IntensityDifference:
            return oracle::numeric_sensitivity(s, {c.t1, c.t2},
                                               {ObservableKind::IntensityDifference},
                                               qfi::Scenario::Asymmetric, theta, 1e-4,
                                               c.cutoff_override);
        case detection::Scheme::SingleMode:
            return oracle::numeric_sensitivity(s, {c.t1, c.t2},
                                               {ObservableKind::SingleModeIntensity},
                                               qfi::Scenario::Asymmetric, theta, 1e-4,
                                               c.cutoff_override);
        case detection::Scheme::HomodyneB:
            return oracle::numeric_sensitivity(s, {c.hom_t1, c.hom_t2},
                                               {ObservableKind::Homodyne, s.phase_phi},
                                               qfi::Scenario::Asymmetric, theta, 1e-4,
                                               c.cutoff_override);
        case detection::Scheme::HomodyneC:
            return oracle::numeric_sensitivity(s, {c.hom_t1, c.hom_t2},
                                               {ObservableKind::Homodyne, s.phase_phi},
                                               qfi::Scenario::Symmetric, theta, 1e-4,
                                               c.cutoff_override);
    }
    throw std::logic_error("unreachable");
}

void add_flag(std::string& status, const std::string& flag) {
    if (status == "ok") {
        status = flag;
    } else if (status.find(flag) == std::string::npos) {
        status += "," + flag;
    }
}

}  // namespace

std::vector<double> ThetaGrid::points() const {
    validate();
    std::vector<double> pts(count);
    const double lo = start + epsilon;
    const double step = (stop - lo) / count;
    for (int k = 0; k < count; ++k) pts[k] = lo + k * step;
    return pts;
}

void ThetaGrid::validate() const {
    if (count < 2) throw std::invalid_argument("theta_grid.count: must be >= 2");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("theta_grid.epsilon: must be >= 0");
    if (!(stop > start + epsilon))
        throw std::invalid_argument("theta_grid: stop must exceed start + epsilon");
}

SweepConfig SweepConfig::defaults() {
    SweepConfig c;
    c.states = {StateSpec::perelomov(1.0, 1.0)};
    c.theta = {0.01 * std::numbers::pi, 0.99 * std::numbers::pi, 199, 1e-6};
    return c;
}

void SweepConfig::validate() const {
    if (states.empty() || states.size() > 2)
        throw std::invalid_argument("states: expected one or two state specs");
    if (schemes.empty()) throw std::invalid_argument("schemes: at least one scheme required");
    for (const auto& s : states) s.validate();
    if (!(t1 >= 0.0 && t1 <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0) ||
        !(hom_t1 >= 0.0 && hom_t1 <= 1.0) || !(hom_t2 >= 0.0 && hom_t2 <= 1.0))
        throw std::invalid_argument("splitters: magnitudes must lie in [0, 1]");
    theta.validate();
    if (alpha_sq_count < 2) throw std::invalid_argument("alpha_sq_count: must be >= 2");
    if (cutoff_override && *cutoff_override < 1)
        throw std::invalid_argument("cutoff: must be >= 1");
    if (!(tolerances.qfi_rel > 0.0) || !(tolerances.sensitivity_rel > 0.0) ||
        !(tolerances.qcrb_slack >= 0.0))
        throw std::invalid_argument("tolerances: must be positive");
    tolerances.series.validate();
}

SweepConfig SweepConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    SweepConfig c = defaults();
    try {
        if (j.contains("bgcs_parametrization")) {
            const std::string mode = j.at("bgcs_parametrization").get<std::string>();
            if (mode == "direct_xi")
                c.bgcs_parametrization = BgcsParametrization::DirectXi;
            else if (mode == "xi_equals_tanh_half_v")
                c.bgcs_parametrization = BgcsParametrization::XiEqualsTanhHalfV;
            else
                throw std::invalid_argument(
                    "bgcs_parametrization: expected direct_xi | xi_equals_tanh_half_v");
        }
        if (j.contains("states")) {
            c.states.clear();
            int i = 0;
            for (const auto& js : j.at("states"))
                c.states.push_back(
                    parse_state(js, c.bgcs_parametrization, "states[" + std::to_string(i++) + "]"));
        }
        if (j.contains("splitters")) {
            const auto& sp = j.at("splitters");
            c.t1 = sp.value("t1", c.t1);
            c.t2 = sp.value("t2", c.t2);
            c.hom_t1 = sp.value("hom_t1", c.hom_t1);
            c.hom_t2 = sp.value("hom_t2", c.hom_t2);
        }
        if (j.contains("theta_grid")) {
            const auto& tg = j.at("theta_grid");
            c.theta.start = tg.value("start", c.theta.start);
            c.theta.stop = tg.value("stop", c.theta.stop);
            c.theta.count = tg.value("count", c.theta.count);
            c.theta.epsilon = tg.value("epsilon", c.theta.epsilon);
        }
        if (j.contains("schemes")) {
            c.schemes.clear();
            for (const auto& js : j.at("schemes"))
                c.schemes.push_back(parse_scheme(js.get<std::string>()));
        }
        c.alpha_sq_count = j.value("alpha_sq_count", c.alpha_sq_count);
        c.oracle = j.value("oracle", c.oracle);
        if (j.contains("cutoff") && !j.at("cutoff").is_null())
            c.cutoff_override = j.at("cutoff").get<int>();
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            c.tolerances.qfi_rel = t.value("qfi_rel", c.tolerances.qfi_rel);
            c.tolerances.sensitivity_rel = t.value("sensitivity_rel", c.tolerances.sensitivity_rel);
            c.tolerances.qcrb_slack = t.value("qcrb_slack", c.tolerances.qcrb_slack);
            c.tolerances.series.rel_tol = t.value("series_rel", c.tolerances.series.rel_tol);
            c.tolerances.series.max_terms =
                t.value("series_max_terms", c.tolerances.series.max_terms);
        }
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            c.out_csv = o.value("csv", c.out_csv);
            c.out_svg = o.value("svg", c.out_svg);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

int Table::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

Table run_qfi_sweep(const SweepConfig& config) {
    config.validate();
    const StateSpec& spec = config.states.front();

    Table table;
    table.columns = {"alpha_sq", "h_a", "h_b", "h_c", "qcrb_a", "qcrb_b", "qcrb_c"};
    if (config.oracle)
        table.columns.insert(table.columns.end(), {"oracle_h_a", "oracle_h_b", "oracle_h_c"});

    std::optional<oracle::TwoModeState> input;
    int cutoff = 0;
    if (config.oracle) {
        cutoff = config.cutoff_override.value_or(auto_cutoff(spec) + 2);
        input = oracle::build_input(spec, cutoff);
    }

    for (int k = 0; k < config.alpha_sq_count; ++k) {
        const double alpha_sq = static_cast<double>(k) / (config.alpha_sq_count - 1);
        const double t = std::sqrt(alpha_sq);
        const double h_a = qfi::qfi_closed_form(spec, t, qfi::Scenario::TwoParam);
        const double h_b = qfi::qfi_closed_form(spec, t, qfi::Scenario::Asymmetric);
        const double h_c = qfi::qfi_closed_form(spec, t, qfi::Scenario::Symmetric);
        std::vector<std::optional<double>> row = {alpha_sq, h_a,
                                                  h_b,      h_c,
                                                  positive_bound(h_a), positive_bound(h_b),
                                                  positive_bound(h_c)};
        if (config.oracle) {
            const auto r = oracle::generator_covariance(
                oracle::BeamSplitterUnitary(cutoff, t).apply(*input));
            row.push_back(r.h_a);
            row.push_back(r.h_b);
            row.push_back(r.h_c);
        }
        table.cells.push_back(std::move(row));
        table.status.push_back("ok");
    }
    return table;
}

Table run_sensitivity_curve(const SweepConfig& config) {
    config.validate();
    if (config.states.size() != 1)
        throw std::invalid_argument("sensitivity curve: expected exactly one state spec");
    const StateSpec& spec = config.states.front();

    const auto schemes = scheme_columns(config);
    Table table;
    table.columns = {"theta"};
    for (const auto& sc : schemes) table.columns.push_back(sc.column);
    table.columns.insert(table.columns.end(), {"qcrb_a", "qcrb_b", "qcrb_c", "snl"});
    if (config.oracle)
        for (const auto& sc : schemes) table.columns.push_back(sc.oracle_column);

    // Scenario bounds at each scheme's own splitter setting; constants in theta.
    const double h_a = qfi::qfi_closed_form(spec, config.t1, qfi::Scenario::TwoParam);
    const double h_b = qfi::qfi_closed_form(spec, config.hom_t1, qfi::Scenario::Asymmetric);
    const double h_c = qfi::qfi_closed_form(spec, config.hom_t1, qfi::Scenario::Symmetric);
    const auto qcrb_a = positive_bound(h_a);
    const auto qcrb_b = positive_bound(h_b);
    const auto qcrb_c = positive_bound(h_c);
    const PhotonStatistics stats = closed_form_stats(spec);
    const auto snl_value =
        stats.mean > 0.0 ? std::optional<double>(qfi::snl(stats.mean)) : std::nullopt;
    const std::vector<std::optional<double>> bounds = {qcrb_a, qcrb_b, qcrb_c, snl_value};

    for (const double theta : config.theta.points()) {
        std::vector<std::optional<double>> row = {theta};
        std::string status = "ok";
        std::vector<std::optional<double>> oracle_cells;
        for (const auto& sc : schemes) {
            std::optional<double> value;
            try {
                value = closed_point(config, spec, sc.scheme, theta).delta_theta;
            } catch (const DerivativeVanishes&) {
                add_flag(status, "divergent");
            } catch (const ConfigurationDegenerate&) {
                add_flag(status, "degenerate");
            }
            row.push_back(value);
            if (config.oracle) {
                std::optional<double> ov;
                if (value) {
                    try {
                        ov = oracle_point(config, spec, sc.scheme, theta);
                    } catch (const DerivativeVanishes&) {
                        add_flag(status, "divergent");
                    }
                }
                oracle_cells.push_back(ov);
            }
        }
        row.insert(row.end(), bounds.begin(), bounds.end());
        row.insert(row.end(), oracle_cells.begin(), oracle_cells.end());
        table.cells.push_back(std::move(row));
        table.status.push_back(status);
    }

    // Emission-time re-check of the bound each scheme must respect.
    for (const auto& row : table.cells) {
        for (size_t i = 0; i < schemes.size(); ++i) {
            const auto& value = row[1 + i];
            const int qi = table.column_index(schemes[i].qcrb_column);
            const auto& bound = row[qi];
            if (value && bound && *value < *bound - config.tolerances.qcrb_slack)
                throw std::logic_error("sensitivity curve: emitted point violates its QCRB");
        }
    }
    return table;
}

Table run_ratio_sweep(const SweepConfig& config) {
    config.validate();
    if (config.states.size() != 2)
        throw std::invalid_argument("ratio sweep: expected exactly two state specs");
    const StateSpec& sp = config.states[0];
    const StateSpec& sb = config.states[1];

    const auto schemes = scheme_columns(config);
    Table table;
    table.columns = {"theta"};
    for (const auto& sc : schemes)
        table.columns.push_back("r_" + std::string(sc.column).substr(7));
    for (const double theta : config.theta.points()) {
        std::vector<std::optional<double>> row = {theta};
        std::string status = "ok";
        for (const auto& sc : schemes) {
            std::optional<double> value;
            try {
                value = closed_point(config, sp, sc.scheme, theta).delta_theta /
                        closed_point(config, sb, sc.scheme, theta).delta_theta;
            } catch (const DerivativeVanishes&) {
                add_flag(status, "divergent");
            } catch (const ConfigurationDegenerate&) {
                add_flag(status, "degenerate");
            }
            row.push_back(value);
        }
        table.cells.push_back(std::move(row));
        table.status.push_back(status);
    }
    return table;
}

std::string OracleReport::text() const {
    std::ostringstream out;
    for (const auto& item : items) {
        out << (item.pass ? "PASS" : "FAIL") << "  " << item.quantity << "  max_rel_dev="
            << fmt12(item.max_rel_dev) << "  tol=" << fmt12(item.tolerance)
            << "  points=" << item.points;
        if (item.skipped > 0) out << "  skipped=" << item.skipped;
        out << "\n";
    }
    out << (pass ? "PASS" : "FAIL") << "  overall\n";
    return out.str();
}

std::string OracleReport::json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["checks"] = nlohmann::json::array();
    for (const auto& item : items) {
        j["checks"].push_back({{"quantity", item.quantity},
                               {"max_rel_dev", item.max_rel_dev},
                               {"tolerance", item.tolerance},
                               {"points", item.points},
                               {"skipped", item.skipped},
                               {"pass", item.pass}});
    }
    return j.dump(2);
}

OracleReport run_oracle_check(const SweepConfig& config) {
    config.validate();
    OracleReport report;

    const std::array<double, 3> alpha_sq = {0.1, 0.5, 0.9};
    const std::array<double, 5> theta_difsing = {0.20 * std::numbers::pi, 0.35 * std::numbers::pi,
                                                 0.50 * std::numbers::pi, 0.65 * std::numbers::pi,
                                                 0.80 * std::numbers::pi};
    const std::array<double, 5> theta_hom = {-0.30 * std::numbers::pi, -0.15 * std::numbers::pi,
                                             0.01 * std::numbers::pi, 0.15 * std::numbers::pi,
                                             0.30 * std::numbers::pi};

    // QFI closed forms against the generator covariance.
    for (const char* name : {"h_a", "h_b", "h_c"}) {
        OracleCheckItem item;
        item.quantity = name;
        item.tolerance = config.tolerances.qfi_rel;
        for (const auto& spec : config.states) {
            int cutoff;
            try {
                cutoff = config.cutoff_override.value_or(auto_cutoff(spec) + 2);
            } catch (const std::invalid_argument&) {
                ++item.skipped;
                continue;
            }
            const auto input = oracle::build_input(spec, cutoff);
            for (const double asq : alpha_sq) {
                const double t = std::sqrt(asq);
                const auto r = oracle::generator_covariance(
                    oracle::BeamSplitterUnitary(cutoff, t).apply(input));
                const std::string n = name;
                const double closed = qfi::qfi_closed_form(
                    spec, t,
                    n == "h_a" ? qfi::Scenario::TwoParam
                               : (n == "h_b" ? qfi::Scenario::Asymmetric
                                             : qfi::Scenario::Symmetric));
                const double numeric =
                    n == "h_a" ? r.h_a.value_or(0.0) : (n == "h_b" ? r.h_b : r.h_c);
                if (closed == 0.0 && std::abs(numeric) < 1e-12) {
                    ++item.points;  // trivial agreement (vacuum)
                    continue;
                }
                if (closed == 0.0) continue;
                item.max_rel_dev =
                    std::max(item.max_rel_dev, std::abs(numeric - closed) / std::abs(closed));
                ++item.points;
            }
        }
        item.pass = item.max_rel_dev <= item.tolerance;
        report.items.push_back(item);
    }

    // Detection closed forms against the finite-difference oracle.
    for (const auto& sc : scheme_columns(config)) {
        OracleCheckItem item;
        item.quantity = sc.column;
        item.tolerance = config.tolerances.sensitivity_rel;
        const bool homodyne = sc.scheme == detection::Scheme::HomodyneB ||
                              sc.scheme == detection::Scheme::HomodyneC;
        for (const auto& spec : config.states) {
            try {
                auto_cutoff(spec);
            } catch (const std::invalid_argument&) {
                ++item.skipped;
                continue;
            }
            for (const double theta : homodyne ? theta_hom : theta_difsing) {
                double closed, numeric;
                try {
                    closed = closed_point(config, spec, sc.scheme, theta).delta_theta;
                    numeric = oracle_point(config, spec, sc.scheme, theta);
                } catch (const DerivativeVanishes&) {
                    ++item.skipped;
                    continue;
                } catch (const ConfigurationDegenerate&) {
                    ++item.skipped;
                    continue;
                }
                item.max_rel_dev =
                    std::max(item.max_rel_dev, std::abs(numeric - closed) / std::abs(closed));
                ++item.points;
            }
        }
        item.pass = item.max_rel_dev <= item.tolerance;
        report.items.push_back(item);
    }

    report.pass = std::all_of(report.items.begin(), report.items.end(),
                              [](const OracleCheckItem& i) { return i.pass; });
    return report;
}

void write_csv(const Table& table, std::ostream& out) {
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    if (table.has_status) {
        if (!table.columns.empty()) out << ',';
        out << "status";
    }
    out << '\n';
    for (size_t r = 0; r < table.cells.size(); ++r) {
        const auto& row = table.cells[r];
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i]) out << fmt12(*row[i]);
        }
        if (table.has_status) {
            if (!row.empty()) out << ',';
            out << (r < table.status.size() ? table.status[r] : "ok");
        }
        out << '\n';
    }
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

}  // namespace

Table read_csv(std::istream& in) {
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header row");
    auto header = split_line(line);
    if (header.empty() || (header.size() == 1 && header[0].empty()))
        throw std::invalid_argument("csv: empty header row");
    table.has_status = header.back() == "status";
    if (table.has_status) header.pop_back();
    table.columns = header;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_line(line);
        const size_t expected = table.columns.size() + (table.has_status ? 1 : 0);
        if (fields.size() != expected)
            throw std::invalid_argument("csv: row has " + std::to_string(fields.size()) +
                                        " fields, expected " + std::to_string(expected));
        if (table.has_status) {
            table.status.push_back(fields.back());
            fields.pop_back();
        } else {
            table.status.push_back("ok");
        }
        std::vector<std::optional<double>> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            if (f.empty()) {
                row.push_back(std::nullopt);
                continue;
            }
            size_t pos = 0;
            double v;
            try {
                v = std::stod(f, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("csv: unparseable number '" + f + "'");
            }
            if (pos != f.size())
                throw std::invalid_argument("csv: unparseable number '" + f + "'");
            row.push_back(v);
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

Table read_csv_text(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

namespace {

const char* kPalette[] = {"#4363d8", "#e6194b", "#3cb44b", "#f58231", "#911eb4",
                          "#42d4f4", "#808000", "#000075", "#9a6324", "#469990"};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string render_plot(const Table& table, const PlotSpec& plot) {
    if (table.cells.empty()) throw std::invalid_argument("plot: table has no rows");
    const int xi = table.column_index(plot.x);
    if (xi < 0) throw std::invalid_argument("plot: missing x column '" + plot.x + "'");
    std::vector<int> yi;
    for (const auto& name : plot.y) {
        const int idx = table.column_index(name);
        if (idx < 0) throw std::invalid_argument("plot: missing y column '" + name + "'");
        yi.push_back(idx);
    }
    if (yi.empty()) throw std::invalid_argument("plot: no y columns requested");

    const auto usable = [&](double v) { return !plot.log_y || v > 0.0; };
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    bool any = false;
    for (const auto& row : table.cells) {
        if (!row[xi]) continue;
        for (const int c : yi) {
            if (!row[c] || !std::isfinite(*row[c]) || !usable(*row[c])) continue;
            const double yv = plot.log_y ? std::log10(*row[c]) : *row[c];
            if (!any) {
                x_lo = x_hi = *row[xi];
                y_lo = y_hi = yv;
                any = true;
            } else {
                x_lo = std::min(x_lo, *row[xi]);
                x_hi = std::max(x_hi, *row[xi]);
                y_lo = std::min(y_lo, yv);
                y_hi = std::max(y_hi, yv);
            }
        }
    }
    if (!any) throw std::invalid_argument("plot: no finite data points");
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double ml = 70, mr = 20, mt = 20, mb = 45;
    const double pw = plot.width - ml - mr;
    const double ph = plot.height - mt - mb;
    const auto px = [&](double x) { return ml + pw * (x - x_lo) / (x_hi - x_lo); };
    const auto py = [&](double yv) { return mt + ph * (1.0 - (yv - y_lo) / (y_hi - y_lo)); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
        << plot.height << "\" viewBox=\"0 0 " << plot.width << " " << plot.height << "\">\n";
    svg << "<rect width=\"" << plot.width << "\" height=\"" << plot.height
        << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(mt) << "\" width=\"" << fmt2(pw)
        << "\" height=\"" << fmt2(ph) << "\" fill=\"none\" stroke=\"#444444\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double fx = x_lo + k * (x_hi - x_lo) / 4.0;
        svg << "<text x=\"" << fmt2(px(fx)) << "\" y=\"" << fmt2(mt + ph + 18)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">"
            << fmt_tick(fx) << "</text>\n";
        const double fy = y_lo + k * (y_hi - y_lo) / 4.0;
        svg << "<text x=\"" << fmt2(ml - 6) << "\" y=\"" << fmt2(py(fy) + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">"
            << fmt_tick(plot.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    svg << "<text x=\"" << fmt2(ml + pw / 2) << "\" y=\"" << fmt2(mt + ph + 36)
        << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" << plot.x
        << "</text>\n";

    for (size_t s = 0; s < yi.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& row : table.cells) {
            if (!row[xi] || !row[yi[s]] || !std::isfinite(*row[yi[s]]) || !usable(*row[yi[s]]))
                continue;
            const double yv = plot.log_y ? std::log10(*row[yi[s]]) : *row[yi[s]];
            if (!first) svg << ' ';
            svg << fmt2(px(*row[xi])) << ',' << fmt2(py(yv));
            first = false;
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << fmt2(ml + pw - 8) << "\" y=\"" << fmt2(mt + 16 + 14.0 * s)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color
            << "\">" << plot.y[s] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace su11::sweep
