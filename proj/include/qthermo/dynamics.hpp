// dynamics.hpp: fixed-step trajectory generators (exact unitary propagation
// and classical RK4 for Lindblad master equations).

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qthermo/measures.hpp"
#include "qthermo/states.hpp"

namespace qthermo::dynamics {

struct Jump {
    ComplexMatrix op;
    double rate = 0.0; // >= 0
};

// Off-diagonal entry gamma_ij of the rate matrix (gamma_ji = conj).
struct CrossTerm {
    std::size_t i = 0;
    std::size_t j = 0;
    cplx rate = 0.0;
};

// d rho/dt = -i[H, rho] + sum_ij gamma_ij (L_i rho L_j^dagger - {L_j^dagger L_i, rho}/2)
struct LindbladSpec {
    HermitianOperator hamiltonian;
    std::vector<Jump> jumps;
    std::vector<CrossTerm> cross_terms;

    // Throws ValidationError for negative rates, dimension mismatches or a
    // rate matrix that is not positive semidefinite.
    void validate() const;
};

struct GridSpec {
    double t_max = 0.0;
    std::size_t steps = 0;

    double dt() const noexcept { return t_max / static_cast<double>(steps); }
    double time(std::size_t k) const noexcept { return t_max * static_cast<double>(k) / static_cast<double>(steps); }
    std::size_t points() const noexcept { return steps + 1; }
    void validate() const;
};

struct IntegratorOptions {
    std::size_t positivity_every = 10;
    double trace_tolerance = 1e-8;
    double psd_tolerance = 1e-7;
};

struct Evolution {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

// Called once per grid point, including t = 0.
using Observer = std::function<void(std::size_t k, double t, const ComplexMatrix& rho)>;

// psi(t_k) = exp(-i H t_k) psi0 from a single eigendecomposition of H.
std::vector<PureState> schrodinger_states(const HermitianOperator& h, const PureState& psi0, const GridSpec& grid);
Evolution schrodinger_evolve(const HermitianOperator& h, const PureState& psi0, const GridSpec& grid);

// Throws StepSizeError when the trace drifts or the spectrum goes negative
// beyond the configured tolerances.
void lindblad_integrate(const LindbladSpec& spec, const DensityMatrix& rho0, const GridSpec& grid,
                        const Observer& observer, const IntegratorOptions& opts = {});
Evolution lindblad_evolve(const LindbladSpec& spec, const DensityMatrix& rho0, const GridSpec& grid,
                          const IntegratorOptions& opts = {});

// Right-hand side of the master equation, exposed for fixed-point checks.
ComplexMatrix lindblad_rhs(const LindbladSpec& spec, const ComplexMatrix& rho);

measures::Trajectory to_trajectory(Evolution ev, const HermitianOperator& reference, double beta);

} // namespace qthermo::dynamics
