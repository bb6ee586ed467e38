// thermo.hpp: static thermodynamic quantities of a state/Hamiltonian pair and
// the two energy-balance ledgers of a process (H0, rho0) -> (Htau, rhotau).
//
// Units: hbar = k_B = 1, entropies in nats (natural logarithms throughout).

#pragma once

#include <optional>

#include "qthermo/linalg.hpp"
#include "qthermo/states.hpp"

namespace qthermo::thermo {

// Relative-entropy support test: sigma eigenvalues below `sigma_cutoff`
// that carry more than `weight_cutoff` of rho's weight make S(rho||sigma) infinite.
inline constexpr double sigma_cutoff = 1e-14;
inline constexpr double weight_cutoff = 1e-12;

struct GibbsSpec {
    double beta = 0.0;
    double Z = 0.0;
    double log_Z = 0.0; // kept separately; Z itself may over/underflow for extreme beta*E
};

struct Gibbs {
    DensityMatrix state;
    GibbsSpec spec;
};

double von_neumann_entropy(const DensityMatrix& rho);
// Entropy of a spectrum, -sum p ln p with 0 ln 0 = 0 (non-positive entries skipped).
double shannon_entropy(std::span<const double> probabilities);

// S(rho||sigma) = Tr[rho (ln rho - ln sigma)] via eigendecomposition of both.
// std::nullopt means +infinity (support of rho not contained in that of sigma).
std::optional<double> relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// exp(-beta H)/Z. Throws ValidationError unless beta > 0.
Gibbs gibbs_state(const HermitianOperator& h, double beta);
GibbsSpec gibbs_spec(const HermitianOperator& h, double beta);

// ln pi^beta = -beta H - ln Z, in closed form.
ComplexMatrix gibbs_log(const HermitianOperator& h, const GibbsSpec& spec);

// S(rho || pi^beta) using the closed-form Gibbs logarithm; always finite.
double relative_entropy_to_gibbs(const DensityMatrix& rho, const HermitianOperator& h, double beta);

// Eigenvalues of rho in decreasing order placed on the eigenvectors of h in
// increasing energy order.
DensityMatrix passive_state(const DensityMatrix& rho, const HermitianOperator& h);

double energy(const DensityMatrix& rho, const HermitianOperator& h);
double ergotropy(const DensityMatrix& rho, const HermitianOperator& h);
double free_energy(const DensityMatrix& rho, const HermitianOperator& h, double beta);
// F(rho) - F(pi^beta)
double extractable_work(const DensityMatrix& rho, const HermitianOperator& h, double beta);

double delta_S_ir(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                  const HermitianOperator& htau, double beta);
// Closed form: -beta (Tr[(rhotau - pi_tau) Htau] - Tr[(rho0 - pi_0) H0]).
double delta_S_r(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                 const HermitianOperator& htau, double beta);
// -delta_S_r / beta
double heat(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
            const HermitianOperator& htau, double beta);

double adiabatic_work_gibbs(const HermitianOperator& h0, const HermitianOperator& htau, double beta);
double adiabatic_work_passive(const DensityMatrix& rhotau, const HermitianOperator& h0,
                              const HermitianOperator& htau);
double operational_heat(const DensityMatrix& rho0, const DensityMatrix& rhotau, const HermitianOperator& h0);

struct ThermoLedger {
    double delta_E = 0.0;
    double delta_We = 0.0;
    double delta_Wf = 0.0;
    double adiabatic_work = 0.0;       // passive-ordering reference (first law)
    double adiabatic_work_gibbs = 0.0; // instantaneous Gibbs reference (fundamental equation)
    double operational_heat = 0.0;
    double heat = 0.0;
    double delta_S_rho = 0.0;
    double delta_S_gibbs = 0.0;
    double delta_S_ir = 0.0;
    double delta_S_r = 0.0;
    double residual_first_law = 0.0; // dE - (dWe + W_ad + Q_op)
    double residual_fundamental = 0.0; // dE - (dWf + W_ad^gibbs + (dS(rho) - dS(pi))/beta)
};

ThermoLedger first_law_ledger(const DensityMatrix& rho0, const HermitianOperator& h0, const DensityMatrix& rhotau,
                              const HermitianOperator& htau, double beta);

} // namespace qthermo::thermo
