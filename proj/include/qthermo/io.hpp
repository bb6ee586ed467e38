// io.hpp: JSON matrix encoding, ledger serialization, measure CSV files and
// example run configuration.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qthermo/measures.hpp"
#include "qthermo/models.hpp"
#include "qthermo/states.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo::io {

using nlohmann::json;

// {"dim": n, "re": [row-major], "im": [row-major]}; "im" may be omitted for
// real matrices when reading.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& what);

json ledger_to_json(const thermo::ThermoLedger& l);

// Inputs of the ledger command. Either `rho_tau` is given directly, or a
// Kraus channel {"kraus": [matrix, ...]} is applied to rho0. `H_tau`
// defaults to `H0`.
struct LedgerInput {
    DensityMatrix rho0;
    HermitianOperator h0;
    DensityMatrix rhotau;
    HermitianOperator htau;
    double beta;
};

LedgerInput parse_ledger_input(const json& j);

// 12 significant digits, as used by every CSV column.
std::string format_number(double x);

inline constexpr const char* csv_header = "t,E,S,C_r,S_ir,I,P,P_c,P_i,W_f";

// Optional leading comment line ("# ..."), then the header, then one row per
// grid point.
void write_csv(std::ostream& os, const measures::MeasureSeries& s, const std::string& comment = {});
measures::MeasureSeries read_csv(std::istream& is);

// Effective configuration of an example run: defaults < config file < overrides.
struct RunConfig {
    int example = 1;
    models::Example1Params example1;
    models::Example2Params example2;
    std::optional<std::string> out;
    json effective; // echoed into the CSV comment line
};

json default_config(int example);
// `overrides` entries are "key=value"; values are parsed as JSON when
// possible and kept as strings otherwise. Unknown keys raise ValidationError.
RunConfig resolve_config(int example, const json& file_config, const std::vector<std::string>& overrides);

} // namespace qthermo::io
