#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "su11/sweep.hpp"
#include "support/test_oracles.hpp"

using namespace su11;
using namespace su11::sweep;

namespace {

SweepConfig pcs_defaults() { return SweepConfig::defaults(); }

SweepConfig ratio_defaults() {
    auto c = SweepConfig::defaults();
    c.states.push_back(StateSpec::barut_girardello(1.0, std::tanh(0.5)));
    return c;
}

int count_polylines(const std::string& svg) {
    int n = 0;
    for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("theta grid validation and half-open structure") {
    CHECK_THROWS_AS((ThetaGrid{0.0, 1.0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ThetaGrid{1.0, 1.0, 10}.validate()), std::invalid_argument);
    const ThetaGrid grid{0.0, 1.0, 10, 1e-6};
    const auto pts = grid.points();
    REQUIRE(pts.size() == 10);
    CHECK(pts.front() == doctest::Approx(1e-6).epsilon(1e-9));
    CHECK(pts.back() < 1.0);  // stop excluded
}

TEST_CASE("config json parsing") {
    const std::string text = R"({
      "states": [{"kind": "perelomov", "a": 1.0, "v": 0.5, "phi": 0.1},
                 {"kind": "barut_girardello", "a": 1.0, "v": 1.0}],
      "bgcs_parametrization": "xi_equals_tanh_half_v",
      "splitters": {"t1": 0.6, "t2": 0.8, "hom_t1": 1.0, "hom_t2": 0.0},
      "theta_grid": {"start": 0.1, "stop": 3.0, "count": 7},
      "alpha_sq_count": 11,
      "oracle": true,
      "cutoff": 64,
      "tolerances": {"qfi_rel": 1e-7},
      "outputs": {"csv": "x.csv", "svg": "x.svg"}
    })";
    const auto c = SweepConfig::from_json_text(text);
    CHECK(c.states.size() == 2);
    CHECK(c.states[1].kind == StateKind::BarutGirardello);
    CHECK(c.states[1].xi_mag == doctest::Approx(std::tanh(0.5)).epsilon(1e-15));
    CHECK(c.t1 == 0.6);
    CHECK(c.theta.count == 7);
    CHECK(c.oracle);
    REQUIRE(c.cutoff_override.has_value());
    CHECK(*c.cutoff_override == 64);
    CHECK(c.tolerances.qfi_rel == 1e-7);
    CHECK(c.out_csv == "x.csv");
}

TEST_CASE("config validation errors carry field paths") {
    CHECK_THROWS_WITH_AS(SweepConfig::from_json_text(R"({"states":[{"kind":"nope"}]})"),
                         doctest::Contains("states[0]"), std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::from_json_text("{not json"), std::invalid_argument);
    // direct_xi mode refuses the v-parametrized form
    CHECK_THROWS_WITH_AS(
        SweepConfig::from_json_text(
            R"({"bgcs_parametrization":"direct_xi",
                "states":[{"kind":"barut_girardello","a":1.0,"v":1.0}]})"),
        doctest::Contains("xi_equals_tanh_half_v"), std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::from_json_text(R"({"theta_grid":{"count":1}})"),
                    std::invalid_argument);
}

TEST_CASE("qfi sweep structure") {
    auto config = pcs_defaults();
    config.alpha_sq_count = 101;
    const auto table = run_qfi_sweep(config);
    REQUIRE(table.cells.size() == 101);
    const int ia = table.column_index("h_a");
    REQUIRE(ia >= 0);

    // endpoints vanish exactly, the balanced point is the column maximum
    CHECK(*table.cells.front()[ia] == 0.0);
    CHECK(*table.cells.back()[ia] == 0.0);
    size_t argmax = 0;
    for (size_t r = 0; r < table.cells.size(); ++r)
        if (*table.cells[r][ia] > *table.cells[argmax][ia]) argmax = r;
    CHECK(*table.cells[argmax][0] == doctest::Approx(0.5).epsilon(1e-12));

    const int ib = table.column_index("h_b");
    CHECK(*table.cells.back()[ib] ==
          doctest::Approx(2.0 * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
    // qcrb_a is empty at the endpoints where h_a = 0
    CHECK(!table.cells.front()[table.column_index("qcrb_a")].has_value());
    CHECK(table.status.front() == "ok");
}

TEST_CASE("sensitivity curve: columns, flags and bound re-check") {
    auto config = pcs_defaults();
    config.theta = {0.0, std::numbers::pi, 40, 0.0};  // hits theta = 0 exactly
    const auto table = run_sensitivity_curve(config);
    REQUIRE(table.columns.size() == 9);
    CHECK(table.column_index("dtheta_dif") == 1);
    CHECK(table.column_index("snl") == 8);

    // theta = 0: dif and sing diverge, the row is flagged and the cells empty
    CHECK(table.status.front() == "divergent");
    CHECK(!table.cells.front()[1].has_value());
    CHECK(!table.cells.front()[2].has_value());

    int finite = 0;
    for (size_t r = 0; r < table.cells.size(); ++r) {
        const auto& row = table.cells[r];
        for (const auto& [scheme_col, bound_col] :
             {std::pair{"dtheta_dif", "qcrb_a"}, {"dtheta_sing", "qcrb_a"},
              {"dtheta_hom_b", "qcrb_b"}, {"dtheta_hom_c", "qcrb_c"}}) {
            const auto& v = row[table.column_index(scheme_col)];
            const auto& b = row[table.column_index(bound_col)];
            if (v && b) {
                CHECK(*v >= *b - 1e-9);
                ++finite;
            }
        }
    }
    CHECK(finite > 100);
}

TEST_CASE("sensitivity curve wants exactly one state") {
    CHECK_THROWS_AS(run_sensitivity_curve(ratio_defaults()), std::invalid_argument);
}

TEST_CASE("scheme set restricts the emitted columns") {
    auto config = pcs_defaults();
    config.theta.count = 12;
    config.schemes = {detection::Scheme::IntensityDifference, detection::Scheme::HomodyneB};
    const auto table = run_sensitivity_curve(config);
    CHECK(table.column_index("dtheta_dif") == 1);
    CHECK(table.column_index("dtheta_hom_b") == 2);
    CHECK(table.column_index("dtheta_sing") == -1);
    CHECK(table.column_index("dtheta_hom_c") == -1);

    const auto parsed = SweepConfig::from_json_text(R"({"schemes": ["single_mode"]})");
    REQUIRE(parsed.schemes.size() == 1);
    CHECK(parsed.schemes[0] == detection::Scheme::SingleMode);
    CHECK_THROWS_AS(SweepConfig::from_json_text(R"({"schemes": ["parity"]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::from_json_text(R"({"schemes": []})"), std::invalid_argument);

    auto ratio = ratio_defaults();
    ratio.theta.count = 8;
    ratio.schemes = {detection::Scheme::SingleMode};
    const auto rt = run_ratio_sweep(ratio);
    CHECK(rt.columns.size() == 2);
    CHECK(rt.column_index("r_sing") == 1);
}

TEST_CASE("default-grid minimum of the dif column touches the two-parameter bound") {
    const auto table = run_sensitivity_curve(pcs_defaults());
    const int id = table.column_index("dtheta_dif");
    const int iq = table.column_index("qcrb_a");
    double best = 1e300;
    for (const auto& row : table.cells)
        if (row[id]) best = std::min(best, *row[id]);
    const double bound = *table.cells.front()[iq];
    CHECK(std::abs(best - bound) / bound <= 1e-4);
}

TEST_CASE("ratio sweep") {
    SUBCASE("identical specs give R = 1") {
        auto config = pcs_defaults();
        config.states.push_back(config.states.front());
        const auto table = run_ratio_sweep(config);
        for (const auto& row : table.cells)
            for (size_t c = 1; c < row.size(); ++c)
                if (row[c]) CHECK(*row[c] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("Perelomov beats Barut-Girardello on the default grid") {
        const auto table = run_ratio_sweep(ratio_defaults());
        const int id = table.column_index("r_dif");
        const int is = table.column_index("r_sing");
        for (const auto& row : table.cells) {
            if (row[id]) CHECK(*row[id] < 1.0);
            if (row[is]) CHECK(*row[is] < 1.0);
        }
    }
}

TEST_CASE("csv round trip is byte-stable") {
    auto config = pcs_defaults();
    config.theta.count = 25;
    const auto table = run_sensitivity_curve(config);
    const std::string once = to_csv(table);
    CHECK(once.find("theta,dtheta_dif") == 0);
    const std::string twice = to_csv(read_csv_text(once));
    CHECK(once == twice);
}

TEST_CASE("csv uses 12 significant digits") {
    Table t;
    t.columns = {"x"};
    t.cells = {{std::optional<double>(std::numbers::pi)}};
    t.status = {"ok"};
    CHECK(to_csv(t) == "x,status\n3.14159265359,ok\n");
}

TEST_CASE("csv error paths") {
    CHECK_THROWS_AS(read_csv_text(""), std::invalid_argument);
    CHECK_THROWS_AS(read_csv_text("a,b\n1,2,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(read_csv_text("a,b\n1,zzz\n"), std::invalid_argument);
}

TEST_CASE("svg rendering") {
    SUBCASE("one polyline per y column") {
        Table t;
        t.columns = {"x", "y"};
        t.cells = {{0.0, 1.0}, {1.0, 2.0}, {2.0, 1.5}};
        t.status = {"ok", "ok", "ok"};
        const auto svg = render_plot(t, {"x", {"y"}, false});
        CHECK(count_polylines(svg) == 1);
        CHECK(svg.find("<svg") == 0);
    }
    SUBCASE("the sensitivity-curve figure carries seven polylines") {
        auto config = pcs_defaults();
        config.theta.count = 30;
        const auto table = run_sensitivity_curve(config);
        const auto svg = render_plot(
            table, {"theta",
                    {"dtheta_dif", "dtheta_sing", "dtheta_hom_b", "dtheta_hom_c", "qcrb_a",
                     "qcrb_b", "qcrb_c"},
                    true});
        CHECK(count_polylines(svg) == 7);
    }
    SUBCASE("errors") {
        Table empty;
        empty.columns = {"x", "y"};
        CHECK_THROWS_AS(render_plot(empty, {"x", {"y"}, false}), std::invalid_argument);
        Table t;
        t.columns = {"x", "y"};
        t.cells = {{0.0, 1.0}};
        t.status = {"ok"};
        CHECK_THROWS_AS(render_plot(t, {"x", {"missing"}, false}), std::invalid_argument);
        CHECK_THROWS_AS(render_plot(t, {"missing", {"y"}, false}), std::invalid_argument);
    }
}

TEST_CASE("determinism: identical config, identical bytes") {
    auto config = pcs_defaults();
    config.theta.count = 20;
    const auto t1 = run_sensitivity_curve(config);
    const auto t2 = run_sensitivity_curve(config);
    CHECK(to_csv(t1) == to_csv(t2));
    const PlotSpec plot{"theta", {"dtheta_dif", "qcrb_a"}, true};
    CHECK(render_plot(t1, plot) == render_plot(t2, plot));
}

TEST_CASE("oracle check report") {
    auto config = ratio_defaults();
    const auto report = run_oracle_check(config);
    CHECK(report.pass);
    CHECK(report.items.size() == 7);
    for (const auto& item : report.items) {
        CHECK(item.pass);
        CHECK(item.points > 0);
    }
    CHECK(report.text().find("PASS  overall") != std::string::npos);
    CHECK(report.json().find("\"pass\": true") != std::string::npos);

    SUBCASE("vacuum input degenerates to a trivial pass") {
        SweepConfig vac = SweepConfig::defaults();
        vac.states = {StateSpec::vacuum()};
        const auto r = run_oracle_check(vac);
        CHECK(r.pass);
    }

    SUBCASE("an impossible tolerance turns the report red") {
        auto strict = ratio_defaults();
        strict.tolerances.qfi_rel = 1e-18;
        const auto r = run_oracle_check(strict);
        CHECK(!r.pass);
        CHECK(r.text().find("FAIL") != std::string::npos);
    }

    SUBCASE("cutoff-infeasible states are reported as skipped") {
        SweepConfig hot = SweepConfig::defaults();
        hot.states = {StateSpec::perelomov(0.5, 12.0)};
        const auto r = run_oracle_check(hot);
        CHECK(r.pass);  // nothing comparable, nothing violated
        for (const auto& item : r.items) {
            CHECK(item.points == 0);
            CHECK(item.skipped > 0);
        }
    }
}
