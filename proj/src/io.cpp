#include "qthermo/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo::io {

namespace {

std::vector<double> number_array(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key)) throw ValidationError(what + ": missing \"" + key + "\"");
    const json& a = j.at(key);
    if (!a.is_array()) throw ValidationError(what + ": \"" + key + "\" must be an array");
    std::vector<double> v;
    v.reserve(a.size());
    for (const auto& x : a) {
        if (!x.is_number()) throw ValidationError(what + ": \"" + key + "\" must contain only numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

double number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ValidationError("config: \"" + key + "\" must be a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& key) {
    if (!j.is_number_integer() && !(j.is_number() && j.get<double>() == static_cast<double>(j.get<long long>())))
        throw ValidationError("config: \"" + key + "\" must be an integer");
    const long long v = j.get<long long>();
    if (v < 0) throw ValidationError("config: \"" + key + "\" must be non-negative");
    return static_cast<std::size_t>(v);
}

cplx complex_value(const json& j, const std::string& key) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError("config: \"" + key + "\" must be a number or [re, im]");
}

std::vector<cplx> amplitude_vector(const json& j, const std::string& key) {
    if (!j.is_object()) throw ValidationError("config: \"" + key + "\" must be {\"re\": [...], \"im\": [...]}");
    const auto re = number_array(j, "re", "config." + key);
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = number_array(j, "im", "config." + key);
    if (im.size() != re.size()) throw ValidationError("config: \"" + key + "\" re/im lengths differ");
    std::vector<cplx> v(re.size());
    for (std::size_t k = 0; k < re.size(); ++k) v[k] = {re[k], im[k]};
    return v;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"example", "case",  "omega0", "lambda", "R",      "alpha1",
                                            "alpha2",  "c01",   "c02",    "beta",   "g",      "omegap",
                                            "gamma",   "t_max", "steps",  "out",    "initial"};
    return keys;
}

void merge(json& into, const json& from, const std::string& source) {
    if (!from.is_object()) throw ValidationError(source + ": configuration must be a JSON object");
    for (auto it = from.begin(); it != from.end(); ++it) {
        if (!known_keys().count(it.key()))
            throw ValidationError(source + ": unknown key \"" + it.key() + "\"");
        into[it.key()] = it.value();
    }
}

json parse_override_value(const std::string& text) {
    json v = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (v.is_discarded()) return json(text);
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (const auto& z : m.data()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"dim", m.dim()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_object()) throw ValidationError(what + ": matrix must be a JSON object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() <= 0)
        throw ValidationError(what + ": \"dim\" must be a positive integer");
    const auto n = static_cast<std::size_t>(j.at("dim").get<long long>());
    const auto re = number_array(j, "re", what);
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = number_array(j, "im", what);
    if (re.size() != n * n || im.size() != n * n)
        throw ValidationError(what + ": expected " + std::to_string(n * n) + " row-major entries");
    std::vector<cplx> entries(n * n);
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
    try {
        return ComplexMatrix(n, std::move(entries));
    } catch (const ValidationError& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

json ledger_to_json(const thermo::ThermoLedger& l) {
    return {{"deltaE", l.delta_E},
            {"deltaWe", l.delta_We},
            {"deltaWf", l.delta_Wf},
            {"adiabaticWork", l.adiabatic_work},
            {"adiabaticWorkGibbs", l.adiabatic_work_gibbs},
            {"operationalHeat", l.operational_heat},
            {"heat", l.heat},
            {"deltaS_rho", l.delta_S_rho},
            {"deltaS_gibbs", l.delta_S_gibbs},
            {"deltaS_ir", l.delta_S_ir},
            {"deltaS_r", l.delta_S_r},
            {"residual_eq2", l.residual_first_law},
            {"residual_eq7", l.residual_fundamental}};
}

LedgerInput parse_ledger_input(const json& j) {
    if (!j.is_object()) throw ValidationError("ledger input must be a JSON object");
    static const std::set<std::string> keys{"rho0", "H0", "rho_tau", "H_tau", "beta", "channel"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!keys.count(it.key())) throw ValidationError("ledger input: unknown key \"" + it.key() + "\"");
    if (!j.contains("beta") || !j.at("beta").is_number()) throw ValidationError("ledger input: \"beta\" is required");
    if (!j.contains("rho0") || !j.contains("H0")) throw ValidationError("ledger input: \"rho0\" and \"H0\" are required");
    if (j.contains("rho_tau") == j.contains("channel"))
        throw ValidationError("ledger input: give exactly one of \"rho_tau\" or \"channel\"");

    auto rho = [&](const char* key) {
        try {
            return DensityMatrix(matrix_from_json(j.at(key), key));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(key) + ": " + e.what());
        }
    };
    auto ham = [&](const char* key) {
        try {
            return HermitianOperator(matrix_from_json(j.at(key), key));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(key) + ": " + e.what());
        }
    };

    DensityMatrix rho0 = rho("rho0");
    HermitianOperator h0 = ham("H0");
    HermitianOperator htau = j.contains("H_tau") ? ham("H_tau") : h0;
    std::optional<DensityMatrix> rhotau;
    if (j.contains("rho_tau")) {
        rhotau = rho("rho_tau");
    } else {
        const json& ch = j.at("channel");
        if (!ch.is_object() || !ch.contains("kraus") || !ch.at("kraus").is_array())
            throw ValidationError("channel: expected {\"kraus\": [matrix, ...]}");
        std::vector<ComplexMatrix> kraus;
        for (std::size_t k = 0; k < ch.at("kraus").size(); ++k)
            kraus.push_back(matrix_from_json(ch.at("kraus")[k], "channel.kraus[" + std::to_string(k) + "]"));
        rhotau = apply_channel(rho0, QuantumChannel(std::move(kraus)));
    }
    return {std::move(rho0), std::move(h0), std::move(*rhotau), std::move(htau), j.at("beta").get<double>()};
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_csv(std::ostream& os, const measures::MeasureSeries& s, const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    os << csv_header << '\n';
    const std::vector<const std::vector<double>*> cols{&s.t,    &s.E, &s.S,   &s.C_r, &s.S_ir,
                                                       &s.I,    &s.P, &s.P_c, &s.P_i, &s.W_f};
    for (const auto* c : cols)
        if (c->size() != s.size()) throw ValidationError("write_csv: columns differ in length");
    for (std::size_t k = 0; k < s.size(); ++k) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) os << ',';
            os << format_number((*cols[c])[k]);
        }
        os << '\n';
    }
}

measures::MeasureSeries read_csv(std::istream& is) {
    measures::MeasureSeries s;
    std::vector<std::vector<double>*> cols{&s.t, &s.E, &s.S, &s.C_r, &s.S_ir, &s.I, &s.P, &s.P_c, &s.P_i, &s.W_f};
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != csv_header) throw ValidationError("read_csv: unexpected header \"" + line + "\"");
            header_seen = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != cols.size())
            throw ValidationError("read_csv: line " + std::to_string(lineno) + " has wrong field count");
        for (std::size_t c = 0; c < cols.size(); ++c) {
            try {
                std::size_t used = 0;
                cols[c]->push_back(std::stod(fields[c], &used));
                if (used != fields[c].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError("read_csv: bad number \"" + fields[c] + "\" on line " + std::to_string(lineno));
            }
        }
    }
    if (!header_seen) throw ValidationError("read_csv: missing header");
    return s;
}

json default_config(int example) {
    if (example == 1) {
        const models::Example1Params p;
        return {{"example", 1},         {"omega0", p.omega0}, {"lambda", p.lambda}, {"R", p.R},
                {"alpha1", p.alpha1},   {"alpha2", p.alpha2}, {"beta", p.beta},     {"c01", json::array({0.0, 0.0})},
                {"c02", json::array({1.0, 0.0})}, {"t_max", p.t_max}, {"steps", p.steps}};
    }
    if (example == 2) {
        const models::Example2Params p;
        return {{"example", 2},       {"case", p.case_id}, {"g", p.g},         {"omega0", p.omega0},
                {"omegap", p.omegap}, {"gamma", p.gamma},  {"beta", p.beta},   {"t_max", p.t_max},
                {"steps", p.steps}};
    }
    throw ValidationError("example must be 1 or 2");
}

RunConfig resolve_config(int example, const json& file_config, const std::vector<std::string>& overrides) {
    json cfg = default_config(example);
    if (!file_config.is_null()) merge(cfg, file_config, "config file");
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("override \"" + o + "\" is not key=value");
        json one;
        one[o.substr(0, eq)] = parse_override_value(o.substr(eq + 1));
        merge(cfg, one, "override");
    }
    if (!cfg.at("example").is_number_integer() || cfg.at("example").get<int>() != example)
        throw ValidationError("config: \"example\" does not match the subcommand");

    RunConfig rc;
    rc.example = example;
    if (cfg.contains("out")) {
        if (!cfg.at("out").is_string()) throw ValidationError("config: \"out\" must be a string");
        rc.out = cfg.at("out").get<std::string>();
    }

    json eff = json::object();
    auto take = [&](const char* key) -> const json& {
        eff[key] = cfg.at(key);
        return cfg.at(key);
    };
    eff["example"] = example;
    if (example == 1) {
        auto& p = rc.example1;
        p.omega0 = number(take("omega0"), "omega0");
        p.lambda = number(take("lambda"), "lambda");
        p.R = number(take("R"), "R");
        p.alpha1 = number(take("alpha1"), "alpha1");
        p.alpha2 = number(take("alpha2"), "alpha2");
        p.beta = number(take("beta"), "beta");
        p.c01 = complex_value(take("c01"), "c01");
        p.c02 = complex_value(take("c02"), "c02");
        p.t_max = number(take("t_max"), "t_max");
        p.steps = count(take("steps"), "steps");
        p.validate();
    } else {
        auto& p = rc.example2;
        p.case_id = static_cast<int>(count(take("case"), "case"));
        p.g = number(take("g"), "g");
        p.omega0 = number(take("omega0"), "omega0");
        p.omegap = number(take("omegap"), "omegap");
        p.gamma = number(take("gamma"), "gamma");
        p.beta = number(take("beta"), "beta");
        p.t_max = number(take("t_max"), "t_max");
        p.steps = count(take("steps"), "steps");
        if (cfg.contains("initial")) p.initial = amplitude_vector(take("initial"), "initial");
        p.validate();
    }
    rc.effective = std::move(eff);
    return rc;
}

} // namespace qthermo::io
