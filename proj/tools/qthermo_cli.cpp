// qthermo_cli.cpp: command-line front end (examples, ledger, audit, plot)

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/audit.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/io.hpp"
#include "qthermo/models.hpp"
#include "qthermo/svg.hpp"
#include "qthermo/thermo.hpp"

namespace {

using namespace qthermo;
using io::json;

enum Exit : int { ok = 0, validation = 2, numeric = 3, property = 4 };

// Raised when a computed result breaks an asserted property.
struct PropertyViolation : std::runtime_error {
    json extra;
    PropertyViolation(const std::string& what, json extra_ = json::object())
        : std::runtime_error(what), extra(std::move(extra_)) {}
};

int report(const std::string& code, const std::string& detail, int status, const json& extra = json::object()) {
    json j = {{"error", code}, {"detail", detail}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    std::cerr << j.dump() << '\n';
    return status;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read \"" + path + "\"");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ValidationError("\"" + path + "\" is not valid JSON");
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write \"" + path + "\"");
    out << contents;
    if (!out) throw ValidationError("write to \"" + path + "\" failed");
}

// stdout when no path is given
void emit(const std::optional<std::string>& path, const std::string& contents) {
    if (path) write_file(*path, contents);
    else std::cout << contents;
}

struct Common {
    std::string config;
    std::vector<std::string> overrides;
    std::string out;
    std::string svg;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "JSON configuration file");
    sub->add_option("--override", c.overrides, "key=value, beats the config file")->take_all()->allow_extra_args(false);
    sub->add_option("--out", c.out, "output file (default stdout)");
}

std::optional<std::string> out_path(const Common& c, const std::optional<std::string>& from_config = {}) {
    if (!c.out.empty()) return c.out;
    return from_config;
}

std::string svg_plot(const measures::MeasureSeries& s, const std::vector<std::string>& columns, const std::string& title) {
    std::vector<svg::Series> lines;
    for (const auto& name : columns) lines.push_back({name, s.t, s.column(name)});
    svg::PlotOptions o;
    o.title = title;
    o.y_label = columns.size() == 1 ? columns.front() : std::string{};
    return svg::line_plot(lines, o);
}

int cmd_example(int example, const Common& c, const std::optional<double>& R, const std::optional<int>& case_id) {
    const json file = c.config.empty() ? json() : read_json_file(c.config);
    std::vector<std::string> overrides = c.overrides;
    if (R) overrides.push_back("R=" + io::format_number(*R));
    if (case_id) overrides.push_back("case=" + std::to_string(*case_id));
    const io::RunConfig rc = io::resolve_config(example, file, overrides);

    const models::RunResult run =
        example == 1 ? models::run_example1(rc.example1) : models::run_example2(rc.example2);

    std::ostringstream csv;
    io::write_csv(csv, run.series, rc.effective.dump());
    emit(out_path(c, rc.out), csv.str());

    if (!c.svg.empty()) {
        if (example == 1) {
            write_file(c.svg, svg_plot(run.series, {"P"}, "charging power"));
        } else {
            write_file(c.svg, svg_plot(run.series, {"C_r", "P_c", "P"}, "coherence and power"));
        }
    }
    return Exit::ok;
}

constexpr double ledger_residual_tolerance = 1e-9;

int cmd_ledger(const Common& c) {
    if (c.config.empty()) throw ValidationError("ledger: --config FILE with rho0, H0, beta and rho_tau or channel is required");
    json j = read_json_file(c.config);
    if (!j.is_object()) throw ValidationError("ledger: input must be a JSON object");
    for (const auto& o : c.overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("override \"" + o + "\" is not key=value");
        json v = json::parse(o.substr(eq + 1), nullptr, false);
        if (v.is_discarded()) throw ValidationError("override \"" + o + "\": value is not JSON");
        j[o.substr(0, eq)] = v;
    }
    const io::LedgerInput in = io::parse_ledger_input(j);
    const auto ledger = thermo::first_law_ledger(in.rho0, in.h0, in.rhotau, in.htau, in.beta);
    emit(out_path(c), io::ledger_to_json(ledger).dump(2) + "\n");

    if (!(std::abs(ledger.residual_first_law) <= ledger_residual_tolerance) ||
        !(std::abs(ledger.residual_fundamental) <= ledger_residual_tolerance))
        throw PropertyViolation("ledger residual above 1e-9",
                                {{"residual_eq2", ledger.residual_first_law}, {"residual_eq7", ledger.residual_fundamental}});
    return Exit::ok;
}

int cmd_audit(const Common& c, std::uint64_t seed, std::size_t count, bool expect_violation) {
    if (!c.config.empty()) {
        const json j = read_json_file(c.config);
        if (!j.is_object()) throw ValidationError("audit: configuration must be a JSON object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "seed" && it->is_number_unsigned()) seed = it->get<std::uint64_t>();
            else if (it.key() == "count" && it->is_number_unsigned()) count = it->get<std::size_t>();
            else throw ValidationError("audit: unsupported config key \"" + it.key() + "\"");
        }
    }
    audit::Options opts;
    opts.seed = seed;
    opts.count = count;
    opts.expect_violation = expect_violation;
    const audit::Report r = audit::run(opts);

    if (!c.out.empty()) {
        std::ostringstream csv;
        audit::write_csv(csv, r);
        write_file(c.out, csv.str());
    }
    std::cout << audit::summary(r);
    if (!r.ok()) {
        json seeds = json::array();
        for (auto s : r.failing_seeds) seeds.push_back(s);
        const std::string what = expect_violation && r.failing_seeds.empty()
                                     ? "no negative delta_S_ir case found"
                                     : std::to_string(r.failing_seeds.size()) + " audit failures";
        throw PropertyViolation(what, {{"seeds", seeds}});
    }
    return Exit::ok;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, const std::vector<std::string>& columns) {
    std::ifstream in(csv_path);
    if (!in) throw ValidationError("cannot read \"" + csv_path + "\"");
    const auto series = io::read_csv(in);
    write_file(svg_path, svg_plot(series, columns, csv_path));
    return Exit::ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermodynamic ledger, charging power and coherence of open quantum systems"};
    app.require_subcommand(1);

    Common c1, c2, cl, ca;
    std::optional<double> R;
    std::optional<int> case_id;
    std::uint64_t seed = 42;
    std::size_t count = 1000;
    bool expect_violation = false;
    std::string plot_in, plot_svg;
    std::vector<std::string> plot_columns{"P"};

    auto* ex1 = app.add_subcommand("example1", "two qubits in a common Lorentzian bath");
    add_common(ex1, c1);
    ex1->add_option("--svg", c1.svg, "also write a P(t) plot");
    ex1->add_option("--R", R, "coupling ratio Omega/lambda");

    auto* ex2 = app.add_subcommand("example2", "two qubits with a mediating mode (case 1) or a lossy cavity (case 2)");
    add_common(ex2, c2);
    ex2->add_option("--svg", c2.svg, "also write a C_r / P_c / P plot");
    ex2->add_option("--case", case_id, "1 or 2")->check(CLI::IsMember({1, 2}));

    auto* led = app.add_subcommand("ledger", "first-law ledger of a single process");
    add_common(led, cl);

    auto* aud = app.add_subcommand("audit", "randomized contractivity and identity audit");
    add_common(aud, ca);
    aud->add_option("--seed", seed, "run seed");
    aud->add_option("--count", count, "number of random cases");
    aud->add_flag("--expect-violation", expect_violation, "use non-Gibbs-preserving channels and require a negative case");

    auto* plt = app.add_subcommand("plot", "render columns of a measure CSV as SVG");
    plt->add_option("--in", plot_in, "measure CSV")->required();
    plt->add_option("--svg", plot_svg, "output SVG")->required();
    plt->add_option("--columns", plot_columns, "columns to plot")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("validation", e.what(), Exit::validation);
    }

    try {
        if (*ex1) return cmd_example(1, c1, R, std::nullopt);
        if (*ex2) return cmd_example(2, c2, std::nullopt, case_id);
        if (*led) return cmd_ledger(cl);
        if (*aud) return cmd_audit(ca, seed, count, expect_violation);
        if (*plt) return cmd_plot(plot_in, plot_svg, plot_columns);
    } catch (const PropertyViolation& e) {
        return report("property_violation", e.what(), Exit::property, e.extra);
    } catch (const ValidationError& e) {
        return report(e.code(), e.what(), Exit::validation);
    } catch (const NumericError& e) {
        return report(e.code(), e.what(), Exit::numeric);
    } catch (const json::exception& e) {
        return report("validation", e.what(), Exit::validation);
    } catch (const std::exception& e) {
        return report("numeric", e.what(), Exit::numeric);
    }
    return Exit::validation;
}
