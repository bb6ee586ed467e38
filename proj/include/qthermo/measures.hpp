// measures.hpp: trajectory-level work-rate quantifiers (charging power,
// non-Markovianity rate, relative entropy of coherence and the coherent /
// incoherent split of the charging power).

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qthermo/linalg.hpp"
#include "qthermo/states.hpp"

namespace qthermo::measures {

// Uniform-grid state history with the Hamiltonian that defines the thermal
// reference at every point (a single entry means constant in time).
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<HermitianOperator> hamiltonians;
    double beta = 1.0;

    // Throws ValidationError: fewer than 3 points, non-uniform or
    // non-increasing grid, size or dimension mismatches, beta <= 0.
    void validate() const;
    double dt() const { return times[1] - times[0]; }
    bool constant_hamiltonian() const noexcept { return hamiltonians.size() == 1; }
    const HermitianOperator& hamiltonian(std::size_t k) const {
        return hamiltonians[constant_hamiltonian() ? 0 : k];
    }
};

struct MeasureSeries {
    std::vector<double> t;
    std::vector<double> E;
    std::vector<double> S;
    std::vector<double> C_r;
    std::vector<double> S_ir;
    std::vector<double> I;
    std::vector<double> P;
    std::vector<double> P_c;
    std::vector<double> P_i;
    std::vector<double> W_f;

    std::size_t size() const noexcept { return t.size(); }
    // Column by its CSV name; throws ValidationError for unknown names.
    const std::vector<double>& column(std::string_view name) const;
};

// Eigenbasis of h with degenerate eigenspaces resolved by diagonalising the
// computational-index operator diag(0, 1, ..., n-1) inside each eigenspace.
// For h diagonal in the computational basis this is the computational basis.
ComplexMatrix energy_basis(const HermitianOperator& h);

// Diagonal of rho in the energy basis.
std::vector<double> energy_populations(const DensityMatrix& rho, const ComplexMatrix& basis);

// Delta(rho): drops every coherence between energy-basis vectors.
DensityMatrix dephase(const DensityMatrix& rho, const HermitianOperator& h);

// C_r = S(Delta rho) - S(rho)
double coherence(const DensityMatrix& rho, const HermitianOperator& h);

// d/dt on a uniform grid: second-order central differences in the interior,
// second-order one-sided stencils at both ends. Needs >= 3 samples.
std::vector<double> derivative(std::span<const double> values, double dt);

std::vector<double> irreversible_entropy_series(const Trajectory& tr);
std::vector<double> non_markovianity_series(const Trajectory& tr);
std::vector<double> charging_power_series(const Trajectory& tr);
std::vector<double> coherent_power_series(const Trajectory& tr);
std::vector<double> incoherent_power_series(const Trajectory& tr);

// Every column at once, sharing the per-point spectral work.
MeasureSeries compute(const Trajectory& tr);

// Coherent/incoherent split of the free-energy work change between two
// endpoints: delta_Wf = coherent + incoherent, with
//   coherent   = (C_r(tau) - C_r(0)) / beta
//   incoherent = dE - (dS(Delta rho) - d ln Z) / beta.
struct WorkSplit {
    double delta_Wf = 0.0; // from extractable_work at both ends
    double coherent = 0.0;
    double incoherent = 0.0;
    double residual = 0.0; // delta_Wf - (coherent + incoherent)
};

WorkSplit work_split(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                     const HermitianOperator& htau, double beta);

} // namespace qthermo::measures
